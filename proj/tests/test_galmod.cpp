#include "polobstruct/galmod.hpp"

#include <gtest/gtest.h>

using namespace polobstruct;

TEST(PTorsion, Examples) {
  EXPECT_EQ(build_ptorsion(3).dim, 4u);
  const TorsionModule m = build_ptorsion(5);
  EXPECT_EQ(m.dim, 8u);
  FpMatrix nil = m.action - FpMatrix::identity(8, 5);
  FpMatrix pw = FpMatrix::identity(8, 5);
  for (int k = 0; k < 4; ++k) pw = pw * nil;
  EXPECT_TRUE(pw.is_zero());
  EXPECT_THROW(build_ptorsion(2), std::invalid_argument);
}

TEST(Filtration, Examples) {
  EXPECT_EQ(filtration_dims(build_ptorsion(3)), (std::vector<std::size_t>{4, 2, 0}));
  EXPECT_EQ(filtration_dims(build_ptorsion(5)), (std::vector<std::size_t>{8, 6, 4, 2, 0}));
}

TEST(Filtration, StepsOfTwoUpTo31) {
  for (long p = 3; p <= 31; p += 2) {
    if (!is_odd_prime(p)) continue;
    const TorsionModule m = build_ptorsion(p);
    const auto dims = filtration_dims(m);
    ASSERT_EQ(dims.size(), static_cast<std::size_t>(p));
    EXPECT_EQ(dims.front(), m.dim);
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) EXPECT_EQ(dims[i] - dims[i + 1], 2u);
    const auto f = composition_factors(m);
    EXPECT_EQ(f.size(), static_cast<std::size_t>(p - 1));
    for (const auto& l : f) EXPECT_EQ(l, ep_label(p));
    EXPECT_TRUE(socle_is_diagonal(m));
  }
}

TEST(CompositionFactors, Examples) {
  EXPECT_EQ(composition_factors(build_ptorsion(3)), (std::vector<std::string>{"E[3]", "E[3]"}));
  EXPECT_EQ(composition_factors(build_ptorsion(7)), std::vector<std::string>(6, "E[7]"));
}

TEST(CompositionFactors, RejectsNonUnipotentAction) {
  TorsionModule m = build_ptorsion(5);
  m.action = FpMatrix::identity(m.dim, 5);
  EXPECT_THROW(composition_factors(m), std::logic_error);
}

TEST(ERank, Examples) {
  EXPECT_EQ(e_rank_of_order(9, 3).value, 1);
  EXPECT_EQ(e_rank_of_order(49, 7).value, 1);
  EXPECT_EQ(e_rank_of_order(16, 5).value, 0);
  EXPECT_EQ(e_rank_of_order(Integer(5) * 5 * 5 * 5 * 5 * 5, 5).value, 3);
  EXPECT_THROW(e_rank_of_order(3, 3), std::invalid_argument);
  EXPECT_THROW(e_rank_of_order(0, 3), std::invalid_argument);
}

TEST(ERank, AdditiveUnderComposition) {
  // orders multiply along a composite of isogenies, ranks add
  for (long p : {3, 5, 7})
    for (long a = 0; a < 4; ++a)
      for (long b = 0; b < 4; ++b) {
        Integer x, y;
        mpz_ui_pow_ui(x.get_mpz_t(), p, 2 * a);
        mpz_ui_pow_ui(y.get_mpz_t(), p, 2 * b);
        x *= 4;
        y *= p + 1;
        EXPECT_EQ(e_rank_of_order(x * y, p).value, e_rank_of_order(x, p).value + e_rank_of_order(y, p).value);
        EXPECT_EQ(dual_e_rank(x, p).value, e_rank_of_order(x, p).value);
      }
}

TEST(PolarizationParity, Examples) {
  EXPECT_EQ(polarization_parity(3, 1).rank.value, 1);
  EXPECT_EQ(polarization_parity(3, 3).rank.value, 3);
  EXPECT_EQ(polarization_parity(5, 6).rank.value, 1);
  EXPECT_EQ(polarization_parity(3, 1).degree, 9);
  EXPECT_THROW(polarization_parity(3, 0), std::invalid_argument);
}

TEST(PolarizationParity, AlwaysOdd) {
  for (long p = 3; p <= 31; p += 2) {
    if (!is_odd_prime(p)) continue;
    for (long n = 1; n <= 1000; ++n) {
      const ParityResult r = polarization_parity(p, n);
      ASSERT_TRUE(r.rank.odd());
      ASSERT_EQ(r.rank.value, 1 + 2 * valuation(Integer(n), Integer(p)));
    }
  }
}
