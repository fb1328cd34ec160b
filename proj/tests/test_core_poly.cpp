#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "randroot/core_poly.hpp"

using namespace randroot;

namespace {

// generalized binomial C(top, k) as a long double product, independent of lgamma
long double binom_product(long double top, long k) {
  long double v = 1.0L;
  for (long j = 1; j <= k; ++j) v *= (top - k + j) / static_cast<long double>(j);
  return v;
}

long double sq_coeff_oracle(const PolynomialClass& c, long n, long i) {
  if (c.kind == Family::Gamma) return std::pow(binom_product(n, i), 2.0L * c.gamma);
  return binom_product(n + static_cast<long double>(c.alpha), n - i) * binom_product(n + static_cast<long double>(c.beta), i);
}

}  // namespace

TEST(CorePoly, LogSqCoeffExamples) {
  EXPECT_NEAR(log_sq_coeff(PolynomialClass::gamma_family(1.0), 2, 1), std::log(4.0), 1e-15);
  EXPECT_EQ(log_sq_coeff(PolynomialClass::kac(), 7, 3), 0.0);
  EXPECT_NEAR(log_sq_coeff(PolynomialClass::alpha_beta(0.0, 0.0), 2, 1), std::log(4.0), 1e-15);
}

TEST(CorePoly, LogSqCoeffRejectsBadInput) {
  EXPECT_THROW(log_sq_coeff(PolynomialClass::gamma_family(-0.1), 3, 1), DomainError);
  EXPECT_THROW(log_sq_coeff(PolynomialClass::alpha_beta(-1.0, 0.0), 3, 1), DomainError);
  EXPECT_THROW(log_sq_coeff(PolynomialClass::alpha_beta(0.0, -1.5), 3, 1), DomainError);
  EXPECT_THROW(log_sq_coeff(PolynomialClass::gamma_family(1.0), 3, 4), DomainError);
  EXPECT_THROW(log_sq_coeff(PolynomialClass::gamma_family(1.0), 3, -1), DomainError);
  EXPECT_THROW(log_sq_coeff(PolynomialClass::gamma_family(1.0), 0, 0), DomainError);
}

TEST(CorePoly, LargeDegreeStaysFinite) {
  // C(n, n/2)^(2 gamma) overflows a double long before n = 10^6
  const auto c = PolynomialClass::gamma_family(2.0);
  const double v = log_sq_coeff(c, 1000000, 500000);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_GT(v, 2.0e6);
}

TEST(CorePoly, CoefficientTableExamples) {
  const CoefficientTable g1(PolynomialClass::gamma_family(1.0), 1, true);
  ASSERT_EQ(g1.log_sq_coeff().size(), 2u);
  EXPECT_EQ(g1.log_sq_coeff()[0], 0.0);
  EXPECT_EQ(g1.log_sq_coeff()[1], 0.0);
  // c_1 = 1/2 ((0-1)^2 + (1-0)^2) = 1
  EXPECT_NEAR(g1.log_conv_coeff()[1], 0.0, 1e-15);

  const CoefficientTable g2(PolynomialClass::gamma_family(1.0), 2, false);
  EXPECT_NEAR(g2.log_sq_coeff()[0], 0.0, 1e-15);
  EXPECT_NEAR(g2.log_sq_coeff()[1], std::log(4.0), 1e-15);
  EXPECT_NEAR(g2.log_sq_coeff()[2], 0.0, 1e-15);
  EXPECT_FALSE(g2.has_convolution());
  EXPECT_THROW(g2.log_conv_coeff(), StateError);

  const CoefficientTable ab(PolynomialClass::alpha_beta(0.0, 1.0), 1, false);
  EXPECT_NEAR(std::exp(ab.log_sq_coeff()[0]), 1.0, 1e-15);
  EXPECT_NEAR(std::exp(ab.log_sq_coeff()[1]), 2.0, 1e-14);
}

TEST(CorePoly, MatchesExtendedPrecisionBinomials) {
  const std::vector<PolynomialClass> classes = {
      PolynomialClass::kac(),           PolynomialClass::elliptic(),      PolynomialClass::gamma_family(1.0),
      PolynomialClass::gamma_family(1.7), PolynomialClass::alpha_beta(0.0, 0.0), PolynomialClass::alpha_beta(2.5, -0.5),
      PolynomialClass::alpha_beta(-0.9, 3.0)};
  double worst = 0.0;
  for (const auto& c : classes)
    for (long n = 1; n <= 50; ++n)
      for (long i = 0; i <= n; ++i) {
        const long double want = sq_coeff_oracle(c, n, i);
        const double got = std::exp(log_sq_coeff(c, n, i));
        worst = std::max(worst, static_cast<double>(std::abs((got - want) / want)));
      }
  EXPECT_LT(worst, 1e-12);
}

TEST(CorePoly, ReciprocalClassExamples) {
  EXPECT_EQ(reciprocal_class(PolynomialClass::gamma_family(2.0)), PolynomialClass::gamma_family(2.0));
  EXPECT_EQ(reciprocal_class(PolynomialClass::alpha_beta(1.0, 0.0)), PolynomialClass::alpha_beta(0.0, 1.0));
  EXPECT_EQ(reciprocal_class(PolynomialClass::alpha_beta(0.5, 0.5)), PolynomialClass::alpha_beta(0.5, 0.5));
}

TEST(CorePoly, ReciprocalReversalIsBitExact) {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> par(-0.95, 4.0), gam(0.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const PolynomialClass c = trial % 3 == 0 ? PolynomialClass::gamma_family(gam(gen))
                                             : PolynomialClass::alpha_beta(par(gen), par(gen));
    for (long n = 1; n <= 100; n += (n < 10 ? 1 : 7)) {
      const CoefficientTable t(c, n, false), r(reciprocal_class(c), n, false);
      for (long i = 0; i <= n; ++i)
        ASSERT_EQ(r.log_sq_coeff()[static_cast<std::size_t>(i)], t.log_sq_coeff()[static_cast<std::size_t>(n - i)])
            << c.describe() << " n=" << n << " i=" << i;
    }
  }
}

TEST(CorePoly, ConvolutionTermsPositiveWithZeroEnds) {
  for (const auto& c : {PolynomialClass::gamma_family(1.0), PolynomialClass::elliptic(), PolynomialClass::alpha_beta(1.5, 0.0)}) {
    for (long n : {1L, 2L, 7L, 30L}) {
      const CoefficientTable t(c, n, true);
      const auto lc = t.log_conv_coeff();
      ASSERT_EQ(lc.size(), static_cast<std::size_t>(2 * n + 1));
      EXPECT_TRUE(std::isinf(lc.front()) && lc.front() < 0);
      EXPECT_TRUE(std::isinf(lc.back()) && lc.back() < 0);
      for (long m = 1; m < 2 * n; ++m) EXPECT_TRUE(std::isfinite(lc[static_cast<std::size_t>(m)]));
      if (c.is_symmetric())
        for (long m = 1; m < 2 * n; ++m)
          EXPECT_NEAR(lc[static_cast<std::size_t>(m)], lc[static_cast<std::size_t>(2 * n - m)],
                      1e-12 * std::max(1.0, std::abs(lc[static_cast<std::size_t>(m)])));
    }
  }
}

TEST(CorePoly, ConvolutionMatchesDirectAntiDiagonalSum) {
  const auto c = PolynomialClass::alpha_beta(0.5, 2.0);
  const long n = 9;
  const CoefficientTable t(c, n, true);
  for (long m = 1; m < 2 * n; ++m) {
    long double s = 0.0L;
    for (long i = 0; i <= n; ++i) {
      const long j = m - i;
      if (j < 0 || j > n) continue;
      s += 0.5L * (i - j) * (i - j) * sq_coeff_oracle(c, n, i) * sq_coeff_oracle(c, n, j);
    }
    EXPECT_NEAR(std::exp(t.log_conv_coeff()[static_cast<std::size_t>(m)]) / static_cast<double>(s), 1.0, 1e-12);
  }
}

TEST(CorePoly, ReversedTableSwapsParameters) {
  const CoefficientTable t(PolynomialClass::alpha_beta(2.0, 0.0), 6, true);
  const CoefficientTable r = t.reversed();
  EXPECT_EQ(r.polynomial_class(), PolynomialClass::alpha_beta(0.0, 2.0));
  const CoefficientTable direct(PolynomialClass::alpha_beta(0.0, 2.0), 6, true);
  for (std::size_t m = 1; m < 12; ++m) EXPECT_NEAR(r.log_conv_coeff()[m], direct.log_conv_coeff()[m], 1e-12);
}

TEST(CorePoly, EquilibriumFraction) {
  EXPECT_DOUBLE_EQ(equilibrium_fraction(1.0), 0.5);
  EXPECT_DOUBLE_EQ(equilibrium_fraction(3.0), 0.75);
  EXPECT_DOUBLE_EQ(equilibrium_fraction(0.25), 0.2);
  EXPECT_THROW(equilibrium_fraction(0.0), DomainError);
  EXPECT_THROW(equilibrium_fraction(-2.0), DomainError);
}
