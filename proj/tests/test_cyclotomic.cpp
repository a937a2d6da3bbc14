#include "polobstruct/bigfloat.hpp"
#include "polobstruct/cyclotomic.hpp"
#include "test_data.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace polobstruct;

namespace {

CycElem elem(long p, std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  v.resize(static_cast<std::size_t>(p - 1), Rational(0));
  return {p, v};
}

RealElem relem(long p, std::vector<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  v.resize(real_degree(p), Rational(0));
  return {p, v};
}

CycElem random_elem(long p, std::mt19937_64& rng, long bound = 5) {
  std::uniform_int_distribution<long> d(-bound, bound);
  std::vector<Rational> v;
  for (long k = 0; k < p - 1; ++k) v.emplace_back(d(rng));
  return {p, v};
}

RealElem random_real(long p, std::mt19937_64& rng, long bound = 5) {
  std::uniform_int_distribution<long> d(-bound, bound);
  std::vector<Rational> v;
  for (std::size_t k = 0; k < real_degree(p); ++k) v.emplace_back(d(rng));
  return {p, v};
}

// Sign of every real embedding, evaluated in 256-bit floating point.
std::optional<bool> embedding_oracle(const RealElem& a) {
  const long p = a.prime();
  bool positive = true;
  for (long j = 1; j <= (p - 1) / 2; ++j) {
    const BigFloat e = BigFloat::two_cos(j, p, 256);
    BigFloat acc(256), pw(Rational(1), 256);
    for (const auto& c : a.coords()) {
      acc = acc + BigFloat(c, 256) * pw;
      pw = pw * e;
    }
    if (abs(acc) < BigFloat(Rational(Integer(1), Integer(Integer(1) << 100)), 256)) return std::nullopt;
    if (acc.sign() < 0) positive = false;
  }
  return positive;
}

}  // namespace

TEST(CyclotomicPoly, Examples) {
  EXPECT_EQ(cyclotomic_poly(3), IntPoly({1, 1, 1}));
  EXPECT_EQ(cyclotomic_poly(5), IntPoly({1, 1, 1, 1, 1}));
  EXPECT_THROW(cyclotomic_poly(4), std::invalid_argument);
  EXPECT_THROW(cyclotomic_poly(2), std::invalid_argument);
}

TEST(RegularRep, Examples) {
  EXPECT_EQ(regular_rep(CycElem::zeta_power(3, 1)), to_rational(IntMatrix{{0, -1}, {1, -1}}));
  EXPECT_EQ(regular_rep(elem(7, {1})), RatMatrix::identity(6));
  EXPECT_EQ(regular_rep(CycElem::scalar(5, Rational(2, 3))), Rational(2, 3) * RatMatrix::identity(4));
  // Same characteristic polynomial as the twist matrix of the same size.
  EXPECT_EQ(charpoly(to_integer(regular_rep(CycElem::zeta_power(7, 1)))), cyclotomic_poly(7));
}

TEST(RegularRep, IsARingHomomorphism) {
  std::mt19937_64 rng(11);
  for (long p : {3, 5, 7}) {
    for (int t = 0; t < 10; ++t) {
      const CycElem a = random_elem(p, rng), b = random_elem(p, rng);
      EXPECT_EQ(regular_rep(a * b), regular_rep(a) * regular_rep(b));
      EXPECT_EQ(regular_rep(a + b), regular_rep(a) + regular_rep(b));
    }
  }
}

TEST(Norm, Examples) {
  EXPECT_EQ(norm_to_Q(CycElem::scalar(5, Rational(1)) - CycElem::zeta_power(5, 1)), 5);
  EXPECT_EQ(norm_to_Q(CycElem::scalar(7, Rational(1))), 1);
  EXPECT_EQ(norm_to_Q(CycElem::scalar(3, Rational(3))), 9);
  EXPECT_EQ(norm_to_Q(CycElem::zeta_power(11, 4)), 1);
}

TEST(Norm, MatchesFrozenResultants) {
  for (const auto& row : load_test_data("norms.json")) {
    const long p = row.at("p").get<long>();
    std::vector<Rational> c;
    for (const auto& x : row.at("coords")) c.emplace_back(x.get<long>());
    EXPECT_EQ(norm_to_Q(CycElem(p, c)), parse_rational(row.at("norm").get<std::string>())) << row.dump();
  }
}

TEST(Norm, Multiplicative) {
  std::mt19937_64 rng(12);
  for (long p : {3, 5, 7, 11})
    for (int t = 0; t < 10; ++t) {
      const CycElem a = random_elem(p, rng), b = random_elem(p, rng);
      EXPECT_EQ(norm_to_Q(a * b), norm_to_Q(a) * norm_to_Q(b));
    }
}

TEST(Inverse, ProductIsOne) {
  std::mt19937_64 rng(13);
  for (long p : {3, 5, 7}) {
    const CycElem a = random_elem(p, rng);
    if (a.is_zero()) continue;
    EXPECT_EQ(a * inverse(a), CycElem::scalar(p, Rational(1)));
  }
  EXPECT_THROW(inverse(CycElem::scalar(5, Rational(0))), std::domain_error);
}

TEST(ComplexConj, Examples) {
  EXPECT_EQ(complex_conj(CycElem::zeta_power(5, 1)), elem(5, {-1, -1, -1, -1}));
  EXPECT_EQ(complex_conj(CycElem::scalar(5, Rational(7, 2))), CycElem::scalar(5, Rational(7, 2)));
  EXPECT_EQ(complex_conj(eta(7)), eta(7));
}

TEST(ComplexConj, InvolutiveRingHomomorphism) {
  std::mt19937_64 rng(14);
  for (long p : {3, 5, 7, 11})
    for (int t = 0; t < 10; ++t) {
      const CycElem a = random_elem(p, rng), b = random_elem(p, rng);
      EXPECT_EQ(complex_conj(complex_conj(a)), a);
      EXPECT_EQ(complex_conj(a * b), complex_conj(a) * complex_conj(b));
    }
}

TEST(RestrictToReal, Examples) {
  EXPECT_EQ(restrict_to_real(CycElem::zeta_power(5, 1) + CycElem::zeta_power(5, 4)), relem(5, {0, 1}));
  EXPECT_EQ(restrict_to_real(CycElem::scalar(11, Rational(2))), relem(11, {2}));
  EXPECT_THROW(restrict_to_real(CycElem::zeta_power(5, 1)), std::domain_error);
  for (long p : {5, 7, 11}) {
    const RealElem x = relem(p, {1, -2, 3});
    EXPECT_EQ(restrict_to_real(lift(x)), x);
  }
}

TEST(NormReal, Examples) {
  EXPECT_EQ(norm_real_to_Q(relem(5, {2, 1})), 1);
  EXPECT_EQ(norm_real_to_Q(relem(5, {1})), 1);
  EXPECT_EQ(norm_real_to_Q(relem(5, {0, 1})), -1);
}

TEST(NormReal, SquaresToAbsoluteNorm) {
  std::mt19937_64 rng(15);
  for (long p : {3, 5, 7, 11, 13})
    for (int t = 0; t < 10; ++t) {
      const CycElem a = random_elem(p, rng);
      const CycElem fixed = a * complex_conj(a) + a + complex_conj(a);
      const Rational n = norm_real_to_Q(restrict_to_real(fixed));
      EXPECT_EQ(norm_to_Q(fixed), n * n);
    }
}

TEST(TotallyPositive, Examples) {
  EXPECT_TRUE(is_totally_positive(relem(5, {2, 1})));
  EXPECT_FALSE(is_totally_positive(relem(5, {0, 1})));
  EXPECT_TRUE(is_totally_positive(relem(7, {1})));
  EXPECT_FALSE(is_totally_positive(relem(7, {-1})));
  EXPECT_THROW(is_totally_positive(relem(7, {})), std::domain_error);
  // 2 - eta = (1 - zeta)(1 - zeta^-1) is positive everywhere but small.
  EXPECT_TRUE(is_totally_positive(relem(101, {2, -1})));
}

TEST(TotallyPositive, MatchesFrozenEmbeddingOracle) {
  const Json samples = load_test_data("tp_samples.json");
  ASSERT_EQ(samples.size(), 800u);
  for (const auto& s : samples) {
    const long p = s.at("p").get<long>();
    std::vector<long> c = s.at("coords").get<std::vector<long>>();
    EXPECT_EQ(is_totally_positive(relem(p, c)), s.at("tp").get<bool>()) << s.dump();
  }
}

TEST(TotallyPositive, MatchesLiveEmbeddingOracle) {
  std::mt19937_64 rng(16);
  for (long p : {13, 17, 19}) {
    int checked = 0;
    while (checked < 40) {
      RealElem x = random_real(p, rng, 4);
      if (checked % 3 == 0) x = x * x;
      if (x.is_zero()) continue;
      const auto expected = embedding_oracle(x);
      if (!expected) continue;
      EXPECT_EQ(is_totally_positive(x), *expected);
      ++checked;
    }
  }
}

TEST(TotallyPositive, ClosedUnderProductsAndSquares) {
  std::mt19937_64 rng(17);
  for (long p : {5, 7, 11}) {
    std::vector<RealElem> positives;
    while (positives.size() < 6) {
      const RealElem x = random_real(p, rng);
      if (!x.is_zero() && is_totally_positive(x)) positives.push_back(x);
    }
    for (std::size_t i = 0; i + 1 < positives.size(); ++i)
      EXPECT_TRUE(is_totally_positive(positives[i] * positives[i + 1]));
    for (int t = 0; t < 6; ++t) {
      const RealElem x = random_real(p, rng);
      if (!x.is_zero()) EXPECT_TRUE(is_totally_positive(x * x));
    }
  }
}

TEST(TotallyPositiveSqrt, RecoversRoots) {
  std::mt19937_64 rng(18);
  for (long p : {5, 7, 11, 13}) {
    for (int t = 0; t < 5; ++t) {
      RealElem b = random_real(p, rng);
      if (b.is_zero()) continue;
      if (!is_totally_positive(b)) b = b * b;
      const auto root = totally_positive_sqrt(b * b);
      ASSERT_TRUE(root.has_value());
      EXPECT_EQ(*root, b);
      EXPECT_EQ(totally_positive_sqrt(Rational(1, 4) * (b * b)), Rational(1, 2) * b);
    }
    EXPECT_FALSE(totally_positive_sqrt(relem(p, {2})).has_value());
    EXPECT_FALSE(totally_positive_sqrt(relem(p, {-1})).has_value());
  }
  // eta^2 is a square, but neither eta nor -eta is totally positive.
  EXPECT_FALSE(totally_positive_sqrt(relem(5, {0, 1}) * relem(5, {0, 1})).has_value());
}

TEST(Parse, TextFormat) {
  EXPECT_EQ(parse_cyc_elem("5; 1, -1"), CycElem::scalar(5, Rational(1)) - CycElem::zeta_power(5, 1));
  EXPECT_EQ(parse_cyc_elem("3; 1/2"), CycElem::scalar(3, Rational(1, 2)));
  EXPECT_THROW(parse_cyc_elem("9; 1"), std::invalid_argument);
  EXPECT_THROW(parse_cyc_elem("3; 1, 2, 3"), std::invalid_argument);
  EXPECT_THROW(parse_cyc_elem("3 1"), std::invalid_argument);
}
