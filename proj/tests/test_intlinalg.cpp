#include "polobstruct/intlinalg.hpp"
#include "test_data.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace polobstruct;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound = 20) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

IntPoly ipoly(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return IntPoly(v);
}

}  // namespace

TEST(Det, Examples) {
  EXPECT_EQ(det(IntMatrix{{2, 1}, {1, 2}}), 3);
  EXPECT_EQ(det(IntMatrix::identity(5)), 1);
  EXPECT_EQ(det(IntMatrix{{2, 4}, {6, 8}}), -8);
  EXPECT_EQ(det(IntMatrix(0, 0)), 1);
  EXPECT_EQ(det(IntMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_THROW(det(IntMatrix(2, 3)), std::invalid_argument);
}

TEST(Det, Multiplicative) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const IntMatrix a = random_matrix(rng, n, n), b = random_matrix(rng, n, n);
    EXPECT_EQ(det(a * b), det(a) * det(b));
  }
}

TEST(Det, RationalAgreesWithInteger) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const IntMatrix a = random_matrix(rng, 5, 5);
    EXPECT_EQ(det(to_rational(a)), Rational(det(a)));
  }
}

TEST(Inverse, RoundTripAndSingular) {
  const RatMatrix a = to_rational(IntMatrix{{2, 1}, {1, 2}});
  EXPECT_EQ(a * inverse(a), RatMatrix::identity(2));
  EXPECT_THROW(inverse(to_rational(IntMatrix{{1, 2}, {2, 4}})), std::domain_error);
}

TEST(Snf, Examples) {
  EXPECT_EQ(snf(IntMatrix{{2, 0}, {0, 2}}).D, (IntMatrix{{2, 0}, {0, 2}}));
  EXPECT_EQ(snf(IntMatrix{{2, 4}, {6, 8}}).D, (IntMatrix{{2, 0}, {0, 4}}));
  EXPECT_EQ(snf(IntMatrix(2, 3)).D, IntMatrix(2, 3));
}

TEST(Snf, FrozenMinorGcdCases) {
  for (const auto& c : load_test_data("snf_cases.json")) {
    const IntMatrix a = matrix_from_json(c);
    const SnfResult r = snf(a);
    std::vector<Integer> expected;
    for (const auto& d : c.at("invariant_factors")) expected.push_back(integer_from_json(d));
    EXPECT_EQ(r.diagonal(), expected) << a;
    EXPECT_EQ(r.U * a * r.V, r.D);
    EXPECT_EQ(abs(det(r.U)), 1);
    EXPECT_EQ(abs(det(r.V)), 1);
  }
}

TEST(Snf, InvariantsOnRandomMatrices) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<std::size_t> sz(1, 8);
    const IntMatrix a = random_matrix(rng, sz(rng), sz(rng), 6);
    const SnfResult r = snf(a);
    ASSERT_EQ(r.U * a * r.V, r.D);
    for (std::size_t i = 0; i < r.D.rows(); ++i)
      for (std::size_t j = 0; j < r.D.cols(); ++j)
        if (i != j) ASSERT_EQ(r.D(i, j), 0);
    const auto d = r.diagonal();
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      ASSERT_GE(d[i], 0);
      if (d[i] == 0) {
        ASSERT_EQ(d[i + 1], 0);
      } else {
        ASSERT_TRUE(mpz_divisible_p(d[i + 1].get_mpz_t(), d[i].get_mpz_t()));
      }
    }
  }
}

TEST(Snf, TieBreakIsDeterministic) {
  const IntMatrix a{{3, 2}, {2, 3}};
  const SnfResult r1 = snf(a), r2 = snf(a);
  EXPECT_EQ(r1.U, r2.U);
  EXPECT_EQ(r1.V, r2.V);
  EXPECT_EQ(r1.diagonal(), (std::vector<Integer>{1, 5}));
}

TEST(Hnf, RowFormShape) {
  EXPECT_EQ(hnf_rows(IntMatrix{{2, 4}, {1, 3}}), (IntMatrix{{1, 1}, {0, 2}}));
  EXPECT_EQ(hnf_rows(IntMatrix{{0, 0}, {0, -3}}), (IntMatrix{{0, 3}}));
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const IntMatrix a = random_matrix(rng, 4, 5, 9);
    IntMatrix g = IntMatrix::identity(4);
    g.add_row_multiple(0, 3, Integer(trial));
    g.swap_rows(1, 2);
    EXPECT_EQ(hnf_rows(g * a), hnf_rows(a));
  }
}

TEST(Charpoly, Examples) {
  EXPECT_EQ(charpoly(IntMatrix{{-1, -1}, {1, 0}}), ipoly({1, 1, 1}));
  EXPECT_EQ(charpoly(IntMatrix::identity(3)), ipoly({-1, 3, -3, 1}));
  EXPECT_EQ(charpoly(IntMatrix{{2, 0}, {0, 3}}), ipoly({6, -5, 1}));
}

TEST(Charpoly, CayleyHamilton) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const IntMatrix a = random_matrix(rng, 1 + trial % 7, 1 + trial % 7);
    const IntPoly f = charpoly(a);
    EXPECT_TRUE(f.is_monic());
    EXPECT_TRUE(evaluate(f, a).is_zero());
  }
}

TEST(Minpoly, Examples) {
  IntMatrix z(4, 4);
  for (std::size_t j = 0; j < 4; ++j) z(0, j) = -1;
  for (std::size_t i = 1; i < 4; ++i) z(i, i - 1) = 1;
  EXPECT_EQ(minpoly(z), ipoly({1, 1, 1, 1, 1}));
  EXPECT_EQ(minpoly(IntMatrix::identity(4)), ipoly({-1, 1}));
  EXPECT_EQ(minpoly(IntMatrix::diagonal({1, 1, 2})), ipoly({2, -3, 1}));
}

TEST(Minpoly, RepeatedFactorsWithEqualMultiplicity) {
  // diag(J_2(1), J_2(2)): minpoly (x-1)^2 (x-2)^2 equals charpoly
  const IntMatrix a{{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 2, 1}, {0, 0, 0, 2}};
  EXPECT_EQ(minpoly(a), charpoly(a));
  // diag(J_2(1), 1): minpoly (x-1)^2
  const IntMatrix b{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}};
  EXPECT_EQ(minpoly(b), ipoly({1, -2, 1}));
}

TEST(Minpoly, MinimalAnnihilatorDividingCharpoly) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    // Block matrices with shared eigenvalues so that minpoly != charpoly.
    const std::size_t n = 2 + trial % 3;
    const IntMatrix blk = random_matrix(rng, n, n, 3);
    IntMatrix a(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = a(n + i, n + j) = blk(i, j);
    const RatPoly m = to_rational(minpoly(a));
    EXPECT_TRUE(divides(m, to_rational(charpoly(a))));
    EXPECT_TRUE(evaluate(minpoly(a), a).is_zero());
    // Minimality: I, A, ..., A^(d-1) are linearly independent.
    std::vector<std::vector<Integer>> powers;
    IntMatrix pw = IntMatrix::identity(2 * n);
    for (long d = 0; d < m.degree(); ++d) {
      powers.push_back(vectorize(pw));
      pw = pw * a;
    }
    EXPECT_EQ(rank(to_rational(from_columns(powers, 4 * n * n))), static_cast<std::size_t>(m.degree()));
    EXPECT_EQ(minpoly(a), minpoly(blk));
  }
}

TEST(IntKernel, Examples) {
  EXPECT_EQ(int_kernel(IntMatrix::identity(3)).cols(), 0u);
  EXPECT_EQ(int_kernel(IntMatrix{{1, 1}}), (IntMatrix{{1}, {-1}}));
  EXPECT_EQ(int_kernel(IntMatrix{{2, 4}}), (IntMatrix{{2}, {-1}}));
}

TEST(IntKernel, AnnihilatesAndHasFullRank) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<std::size_t> sz(1, 7);
    const std::size_t r = sz(rng), c = sz(rng);
    IntMatrix a = random_matrix(rng, r, c, 9);
    if (r > 1 && trial % 2) a.add_row_multiple(r - 1, 0, Integer(3));
    const IntMatrix k = int_kernel(a);
    EXPECT_TRUE((a * k).is_zero());
    EXPECT_EQ(k.cols(), c - rank(to_rational(a)));
    EXPECT_EQ(hnf_cols(k), k);
  }
}

TEST(IntKernel, SaturatedLattice) {
  // Kernel of [[2, 4, 6]] over Z is saturated: (1, -2, 1) * ... every
  // integral solution is an integral combination of the basis.
  const IntMatrix k = int_kernel(IntMatrix{{2, 4, 6}});
  ASSERT_EQ(k.cols(), 2u);
  EXPECT_TRUE(lattice_coordinates(k, {Integer(-2), Integer(1), Integer(0)}).has_value());
  EXPECT_TRUE(lattice_coordinates(k, {Integer(-3), Integer(0), Integer(1)}).has_value());
  EXPECT_FALSE(lattice_coordinates(k, {Integer(1), Integer(0), Integer(0)}).has_value());
}
