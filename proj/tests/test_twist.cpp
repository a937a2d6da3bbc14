#include "polobstruct/twist.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace polobstruct;

namespace {

std::vector<long> odd_primes_upto(long n) {
  std::vector<long> out;
  for (long p = 3; p <= n; p += 2)
    if (is_odd_prime(p)) out.push_back(p);
  return out;
}

CycElem random_elem(long p, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-5, 5);
  std::vector<Rational> v;
  for (long k = 0; k < p - 1; ++k) v.emplace_back(d(rng));
  return {p, v};
}

}  // namespace

TEST(BuildZeta, Examples) {
  EXPECT_EQ(build_zeta(3), (IntMatrix{{-1, -1}, {1, 0}}));
  EXPECT_EQ(build_zeta(5), (IntMatrix{{-1, -1, -1, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}));
  EXPECT_THROW(build_zeta(2), std::invalid_argument);
  EXPECT_THROW(build_zeta(15), std::invalid_argument);
}

TEST(ReduceShift, AgreesWithBuildZeta) {
  EXPECT_EQ(reduce_shift(3), (IntMatrix{{-1, -1}, {1, 0}}));
  for (long p : odd_primes_upto(101)) EXPECT_EQ(reduce_shift(p), build_zeta(p)) << p;
}

TEST(BuildB, Examples) {
  EXPECT_EQ(build_b(3), (IntMatrix{{2, 1}, {1, 2}}));
  EXPECT_EQ(det(build_b(7)), 7);
  EXPECT_TRUE(build_b(5).is_symmetric());
  EXPECT_EQ(build_b(5).rows(), 4u);
}

TEST(TwistData, InvariantsUpTo101) {
  for (long p : odd_primes_upto(101)) {
    const TwistData t = TwistData::build(p);
    const IntMatrix id = IntMatrix::identity(t.dim());
    EXPECT_EQ(minpoly(t.zeta), cyclotomic_poly(p)) << p;
    EXPECT_EQ(power(t.zeta, p), id) << p;
    EXPECT_EQ(det(t.b), p) << p;
    EXPECT_TRUE(pol_descends(t)) << p;
    EXPECT_EQ(inverse(to_rational(t.b)) * to_rational(t.zeta.transpose() * t.b * t.zeta), to_rational(id)) << p;
  }
}

TEST(EndoDescends, Examples) {
  const TwistData t = TwistData::build(3);
  EXPECT_TRUE(endo_descends(t.zeta, t));
  EXPECT_TRUE(endo_descends(IntMatrix::identity(2), t));
  EXPECT_FALSE(endo_descends(IntMatrix{{0, 1}, {0, 0}}, t));
  EXPECT_THROW(endo_descends(IntMatrix::identity(3), t), std::invalid_argument);
}

TEST(PolDescends, MutatedBFails) {
  EXPECT_TRUE(pol_descends(TwistData::build(3)));
  EXPECT_TRUE(pol_descends(TwistData::build(5)));
  TwistData t = TwistData::build(3);
  t.b(0, 1) = 0;
  EXPECT_FALSE(pol_descends(t));
}

TEST(Centralizer, Examples) {
  const auto basis = centralizer_basis(3);
  EXPECT_EQ(basis.size(), 2u);
  EXPECT_EQ(centralizer_lattice(3), zeta_power_lattice(3));
  EXPECT_EQ(centralizer_basis(5).size(), 4u);
}

TEST(Centralizer, EqualsZetaPowersUpTo31) {
  for (long p : odd_primes_upto(31)) {
    const IntMatrix c = centralizer_lattice(p);
    EXPECT_EQ(c.cols(), static_cast<std::size_t>(p - 1)) << p;
    EXPECT_EQ(c, zeta_power_lattice(p)) << p;
  }
}

TEST(Centralizer, MembersDescendOthersDoNot) {
  std::mt19937_64 rng(21);
  for (long p : {3, 5, 7, 11}) {
    const TwistData t = TwistData::build(p);
    for (const auto& x : centralizer_basis(p)) EXPECT_TRUE(endo_descends(x, t));
    const IntMatrix lattice = centralizer_lattice(p);
    int outside = 0;
    std::uniform_int_distribution<long> d(-3, 3);
    while (outside < 20) {
      IntMatrix x(t.dim(), t.dim());
      for (std::size_t i = 0; i < t.dim(); ++i)
        for (std::size_t j = 0; j < t.dim(); ++j) x(i, j) = d(rng);
      if (lattice_coordinates(lattice, vectorize(x))) continue;
      EXPECT_FALSE(endo_descends(x, t));
      ++outside;
    }
  }
}

TEST(BasisChange, IntertwinesFieldAndTwist) {
  for (long p : {3, 5, 7, 11, 13}) {
    const IntMatrix c = basis_change(p);
    EXPECT_EQ(abs(det(c)), 1);
    EXPECT_EQ(field_to_endo(CycElem::zeta_power(p, 1), c), to_rational(build_zeta(p)));
  }
}

TEST(EndoDegree, Examples) {
  EXPECT_EQ(endo_degree(build_b(3)), 9);
  EXPECT_EQ(endo_degree(IntMatrix::identity(4)), 1);
  const CycElem a = CycElem::scalar(3, Rational(1)) - CycElem::zeta_power(3, 1);
  EXPECT_EQ(endo_degree(to_integer(regular_rep(a))), 9);
  EXPECT_THROW(endo_degree(IntMatrix(2, 2)), std::domain_error);
}

TEST(EndoDegree, SquareOfNorm) {
  std::mt19937_64 rng(22);
  for (long p : {3, 5, 7, 11, 13})
    for (int t = 0; t < 100; ++t) {
      const CycElem a = random_elem(p, rng);
      if (a.is_zero()) continue;
      const Rational n = norm_to_Q(a);
      EXPECT_EQ(Rational(endo_degree(to_integer(regular_rep(a)))), n * n);
    }
}

TEST(Rosati, Examples) {
  for (long p : {3, 5, 7}) {
    const TwistData t = TwistData::build(p);
    EXPECT_EQ(rosati(t.zeta, t), to_rational(power(t.zeta, p - 1)));
    EXPECT_EQ(rosati(IntMatrix::identity(t.dim()), t), RatMatrix::identity(t.dim()));
  }
  EXPECT_THROW(rosati(IntMatrix::identity(3), TwistData::build(3)), std::invalid_argument);
}

TEST(Rosati, Involution) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> d(-4, 4);
  const TwistData t = TwistData::build(7);
  for (int k = 0; k < 10; ++k) {
    IntMatrix x(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) x(i, j) = d(rng);
    EXPECT_EQ(rosati(rosati(x, t), t), to_rational(x));
  }
}

TEST(Rosati, IsComplexConjugationOnTheCentralizer) {
  std::mt19937_64 rng(24);
  for (long p : {3, 5, 7, 11}) {
    const TwistData t = TwistData::build(p);
    const IntMatrix c = basis_change(p);
    for (int k = 0; k < 10; ++k) {
      const CycElem a = random_elem(p, rng);
      EXPECT_EQ(rosati(field_to_endo(a, c), t), field_to_endo(complex_conj(a), c));
    }
  }
}
