#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "randroot/asymptotics.hpp"

using namespace randroot;

namespace {

double exact_log_m(double gamma, long n, double x) {
  const CoefficientTable t(PolynomialClass::gamma_family(gamma), n, false);
  return detail::log_moment(t.log_sq_coeff(), std::log(x), 0);
}

double rel_err_m(double gamma, long n, double x) {
  return std::abs(std::expm1(approx_M(gamma, n, x).log_value - exact_log_m(gamma, n, x)));
}

}  // namespace

TEST(Asymptotics, EntropyAtSymmetricPoint) {
  const EntropyTerms e = entropy_terms(0.5, 1.0, 1.0);
  EXPECT_NEAR(e.I, std::log(2.0), 1e-15);
  EXPECT_NEAR(e.J, std::log(2.0), 1e-15);
  EXPECT_NEAR(e.J1, 0.0, 1e-15);
  EXPECT_NEAR(e.J2, -4.0, 1e-15);
}

TEST(Asymptotics, EntropyReferenceValues) {
  const EntropyTerms e = entropy_terms(0.25, 2.0, 0.5);
  EXPECT_NEAR(e.I, 0.56233514461880835029, 1e-15);
  EXPECT_NEAR(e.J, 0.95138349409763037322, 1e-15);
  EXPECT_NEAR(e.J1, 1.5040773967762740734, 1e-15);
  EXPECT_NEAR(e.J2, -10.666666666666666667, 1e-14);
  EXPECT_THROW(entropy_terms(0.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(entropy_terms(1.0, 1.0, 1.0), DomainError);
}

TEST(Asymptotics, CriticalPointIsStationary) {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> g(0.1, 4.0), xs(0.01, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double gamma = g(gen), x = xs(gen);
    const ConcentrationParams c = concentration_params(gamma, x, 100);
    EXPECT_NEAR(entropy_terms(c.t, gamma, x).J1, 0.0, 1e-14);
  }
}

TEST(Asymptotics, ConcentrationExamples) {
  auto c = concentration_params(1.0, 1.0, 100);
  EXPECT_DOUBLE_EQ(c.t, 0.5);
  EXPECT_EQ(c.i_star, 50);
  c = concentration_params(1.0, 1.0 / 3.0, 100);
  EXPECT_NEAR(c.t, 0.25, 1e-15);
  EXPECT_EQ(c.i_star, 25);
  c = concentration_params(0.5, 0.5, 40);
  EXPECT_NEAR(c.t, 0.2, 1e-15);
  EXPECT_EQ(c.i_star, 8);
  EXPECT_THROW(concentration_params(1.0, 1.5, 10), DomainError);
  EXPECT_THROW(concentration_params(0.0, 0.5, 10), DomainError);
}

TEST(Asymptotics, ApproxMWithinFivePercent) {
  EXPECT_LT(rel_err_m(1.0, 100000, 0.5), 0.05);
  EXPECT_LT(rel_err_m(1.0, 10000, 1.0), 0.05);
  EXPECT_LT(rel_err_m(2.0, 10000, 0.8), 0.05);
}

TEST(Asymptotics, ApproxMErrorDecreases) {
  for (double x : {0.5, 1.0}) {
    const double e3 = rel_err_m(1.0, 1000, x), e4 = rel_err_m(1.0, 10000, x), e5 = rel_err_m(1.0, 100000, x);
    EXPECT_GT(e3, e4) << "x=" << x;
    EXPECT_GT(e4, e5) << "x=" << x;
  }
}

TEST(Asymptotics, ApproxMCentralBinomialIdentity) {
  // sum C(n,i)^2 = C(2n,n) at x = 1
  const long n = 5000;
  const double exact = std::lgamma(2.0 * n + 1) - 2.0 * std::lgamma(n + 1.0);
  EXPECT_LT(std::abs(std::expm1(approx_M(1.0, n, 1.0).log_value - exact)), 1e-3);
}

TEST(Asymptotics, SquaredPeakMatchesDoubleSum) {
  for (auto [gamma, x] : {std::pair{1.0, 0.5}, {1.0, 1.0}, {0.5, 0.9}}) {
    const CoefficientTable t(PolynomialClass::gamma_family(gamma), 4000, true);
    const double exact = detail::log_amb(t.log_conv_coeff(), std::log(x));
    EXPECT_LT(std::abs(std::expm1(approx_AMB_squared_peak(gamma, 4000, x).log_value - exact)), 0.10)
        << "gamma=" << gamma << " x=" << x;
    // the single-power form differs by exactly one C(n,i*)^{2 gamma} factor
    const ConcentrationParams c = concentration_params(gamma, x, 4000);
    EXPECT_NEAR(approx_AMB_squared_peak(gamma, 4000, x).log_value - approx_AMB(gamma, 4000, x).log_value,
                2.0 * gamma * (std::lgamma(4001.0) - std::lgamma(c.i_star + 1.0) - std::lgamma(4001.0 - c.i_star)), 1e-8);
  }
}

TEST(Asymptotics, ValidityWindowFlag) {
  EXPECT_TRUE(approx_M(1.0, 100000, 0.5).in_window);
  EXPECT_FALSE(approx_M(1.0, 100, 0.01).in_window);
}

TEST(Asymptotics, LeadingOrder) {
  EXPECT_DOUBLE_EQ(leading_order(PolynomialClass::gamma_family(1.0), 50), 10.0);
  EXPECT_DOUBLE_EQ(leading_order(PolynomialClass::alpha_beta(3.0, 0.2), 50), 10.0);
  EXPECT_NEAR(leading_order(PolynomialClass::kac(), std::exp(std::numbers::pi)), 2.0, 1e-15);
  for (int k = 1; k <= 400; ++k) {
    const double gamma = 0.5 * (k % 7 + 1), n = static_cast<double>(k + 1);
    const double v = leading_order(PolynomialClass::gamma_family(gamma), n);
    const double target = 2.0 * gamma * n;
    const double root = std::round(std::sqrt(target));
    if (root * root == target)
      EXPECT_EQ(v * v, target);
    else  // no double squares to a non-square integer exactly
      EXPECT_LE(std::abs(v * v - target), 2.0 * std::numeric_limits<double>::epsilon() * target);
  }
  EXPECT_THROW(leading_order(PolynomialClass::kac(), 1.0), DomainError);
}

TEST(Asymptotics, ScalingSlopeGammaOne) {
  const ScalingFit f = scaling_fit(PolynomialClass::gamma_family(1.0), {50, 100, 200, 400, 800});
  EXPECT_TRUE(f.complete);
  EXPECT_GE(f.slope, 0.48);
  EXPECT_LE(f.slope, 0.52);
  EXPECT_EQ(f.n_values.size(), 5u);
}

TEST(Asymptotics, ScalingSlopeElliptic) {
  const ScalingFit f = scaling_fit(PolynomialClass::elliptic(), {25, 100, 400});
  EXPECT_NEAR(f.slope, 0.5, 1e-6);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-9);
}

TEST(Asymptotics, ScalingSlopeKac) {
  const ScalingFit f = scaling_fit(PolynomialClass::kac(), {1000, 10000, 100000});
  EXPECT_EQ(f.regression, "EN vs ln n");
  EXPECT_NEAR(f.slope / (2.0 / std::numbers::pi), 1.0, 0.02);
}

TEST(Asymptotics, ScalingRejectsBadDegrees) {
  EXPECT_THROW(scaling_fit(PolynomialClass::elliptic(), {4, 9}), DomainError);
  EXPECT_THROW(scaling_fit(PolynomialClass::elliptic(), {4, 9, 9}), DomainError);
  EXPECT_THROW(scaling_fit(PolynomialClass::elliptic(), {1, 4, 9}), DomainError);
}

TEST(Asymptotics, RatioCheck) {
  const RatioCheck z = alpha_beta_ratio_check(0.0, 0.0, 50, 17);
  EXPECT_NEAR(z.exact_ratio, 1.0, 1e-13);
  EXPECT_NEAR(z.approximant, 1.0, 1e-15);
  const RatioCheck o = alpha_beta_ratio_check(1.0, 1.0, 200, 100);
  EXPECT_NEAR(o.exact_ratio, (201.0 / 101.0) * (201.0 / 101.0), 1e-11);
  EXPECT_LT(std::abs(o.exact_ratio / o.approximant - 1.0), 0.10);
  const RatioCheck t = alpha_beta_ratio_check(2.0, 0.0, 500, 250);
  EXPECT_GT(t.exact_ratio, 0.0);
  EXPECT_GT(t.approximant, 0.0);
  EXPECT_THROW(alpha_beta_ratio_check(1.0, 1.0, 10, 0), DomainError);
}
