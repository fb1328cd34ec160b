#pragma once

// Self-check suite behind `randroot verify`: each property compares two
// independent routes to the same quantity and reports the worst discrepancy.

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "randroot/core_poly.hpp"
#include "randroot/jacobi.hpp"
#include "randroot/kac_rice.hpp"

namespace randroot {

enum class VerifyLevel { Fast, Full };

struct PropertyOutcome {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  double threshold = 0.0;
};

namespace detail {

/// a_i^2 in extended precision.
inline long double sq_coeff_ld(const PolynomialClass& c, long n, long i) {
  auto lbin = [](long double top, long double k) {
    return std::lgamma(top + 1.0L) - std::lgamma(k + 1.0L) - std::lgamma(top - k + 1.0L);
  };
  if (c.kind == Family::Gamma) return std::exp(2.0L * c.gamma * lbin(n, i));
  return std::exp(lbin(n + static_cast<long double>(c.alpha), n - i) + lbin(n + static_cast<long double>(c.beta), i));
}

/// 1/2 sum_{i,j} (i-j)^2 a_i^2 a_j^2 x^{2(i+j-1)}, summed directly.
inline long double amb_double_sum(const PolynomialClass& c, long n, long double x) {
  long double s = 0.0L;
  for (long i = 0; i <= n; ++i)
    for (long j = 0; j <= n; ++j) {
      const long double d = static_cast<long double>(i - j);
      s += d * d * sq_coeff_ld(c, n, i) * sq_coeff_ld(c, n, j) * std::pow(x, 2.0L * (i + j - 1));
    }
  return 0.5L * s;
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace detail

inline std::vector<PropertyOutcome> run_verification(VerifyLevel level) {
  const bool full = level == VerifyLevel::Full;
  std::vector<PropertyOutcome> out;
  auto record = [&](std::string name, double err, double thr) {
    out.push_back({std::move(name), err <= thr && std::isfinite(err), err, thr});
  };

  const std::vector<std::pair<double, double>> ab_grid = {{0.0, 0.0}, {1.0, 0.0}, {0.5, 2.0}, {-0.5, -0.5}};
  const std::vector<double> sym_alphas = {-0.5, 0.0, 1.0, 2.5};

  {  // x -> 1/x coefficient reversal, bit for bit
    double worst = 0.0;
    const long top = full ? 100 : 30;
    const std::vector<PolynomialClass> classes = {PolynomialClass::gamma_family(0.7), PolynomialClass::alpha_beta(1.5, -0.3),
                                                  PolynomialClass::alpha_beta(0.0, 2.0)};
    for (const auto& c : classes)
      for (long n = 1; n <= top; ++n) {
        const CoefficientTable t(c, n, false), r(reciprocal_class(c), n, false);
        for (long i = 0; i <= n; ++i)
          if (r.log_sq_coeff()[static_cast<std::size_t>(i)] != t.log_sq_coeff()[static_cast<std::size_t>(n - i)]) worst = 1.0;
      }
    record("reciprocal_reversal", worst, 0.0);
  }

  {  // M_n through the Jacobi polynomial vs the coefficient sum
    double worst = 0.0;
    const long top = full ? 20 : 12;
    for (auto [a, b] : ab_grid) {
      for (long n = 1; n <= top; ++n) {
        const CoefficientTable t(PolynomialClass::alpha_beta(a, b), n, true);
        for (double x : {0.1, 0.3, 0.5, 0.7, 0.9})
          worst = std::max(worst, std::abs(std::expm1(mn_via_jacobi(n, a, b, x) - mab_eval(t, x).log_M)));
      }
    }
    record("jacobi_identity_M", worst, 1e-10);
  }

  {  // A M - B^2 via anti-diagonal sums vs the direct double sum
    double worst = 0.0;
    const long top = full ? 15 : 8;
    const std::vector<PolynomialClass> classes = {PolynomialClass::gamma_family(0.5), PolynomialClass::gamma_family(1.0),
                                                  PolynomialClass::gamma_family(2.0), PolynomialClass::alpha_beta(0.0, 0.0),
                                                  PolynomialClass::alpha_beta(1.0, 0.5)};
    for (const auto& c : classes)
      for (long n = 1; n <= top; ++n) {
        const CoefficientTable t(c, n, true);
        for (double x : {0.1, 0.5, 1.0, 2.0}) {
          const double want = static_cast<double>(detail::amb_double_sum(c, n, x));
          worst = std::max(worst, detail::rel_err(std::exp(mab_eval(t, x).log_AMB), want));
        }
      }
    record("amb_double_sum", worst, 1e-12);
  }

  {  // derivative recurrence for M_n
    double worst = 0.0;
    for (auto [a, b] : ab_grid)
      for (long n = 2; n <= 10; ++n)
        for (double x : {0.2, 0.5, 1.0, 1.7}) worst = std::max(worst, std::abs(derivative_recurrence_residual(n, a, b, x)));
    record("derivative_recurrence", worst, 1e-9);
  }

  {  // closed-form f(0), f(1) vs Kac-Rice evaluation
    double worst = 0.0;
    for (auto [a, b] : ab_grid)
      for (long n = 1; n <= (full ? 30 : 10); ++n) {
        const CoefficientTable t(PolynomialClass::alpha_beta(a, b), n, true);
        const DensityEndpoints e = density_endpoints(n, a, b);
        worst = std::max(worst, detail::rel_err(mab_eval(t, 0.0).f, e.f0));
        worst = std::max(worst, detail::rel_err(mab_eval(t, 1.0).f, e.f1));
      }
    record("density_endpoints", worst, 1e-10);
  }

  {  // ultraspherical shape: envelope, monotone decrease, sandwich on [0,1]
    double env = 0.0, mono = 0.0, sand = 0.0;
    const int pts = full ? 400 : 80;
    for (double a : sym_alphas)
      for (long n : {1L, 2L, 5L, 10L, 25L}) {
        const CoefficientTable t(PolynomialClass::alpha_beta(a, a), n, true);
        const double f0 = mab_eval(t, 0.0).f, f1 = mab_eval(t, 1.0).f;
        double prev = f0;
        for (int k = 1; k <= pts; ++k) {
          const double x = 4.0 * k / pts;
          const double f = mab_eval(t, x).f;
          env = std::max(env, f / (std::sqrt(static_cast<double>(n)) / (2.0 * x)) - 1.0);
          mono = std::max(mono, (f - prev) / prev);
          if (x <= 1.0) sand = std::max({sand, (f1 - f) / f1, (f - f0) / f0});
          prev = f;
        }
      }
    record("envelope_sqrt_n_over_2x", std::max(env, 0.0), 1e-12);
    record("monotone_decreasing", std::max(mono, 0.0), 1e-12);
    record("sandwich_f1_f_f0", std::max(sand, 0.0), 1e-12);
  }

  {  // f^2 = sum_k r_k / (x^2 + r_k)^2 over Jacobi zeros
    double worst = 0.0;
    for (auto [a, b] : ab_grid)
      for (long n : (full ? std::vector<long>{1, 2, 5, 10, 20, 35, 50} : std::vector<long>{1, 3, 10, 20})) {
        const CoefficientTable t(PolynomialClass::alpha_beta(a, b), n, true);
        const JacobiRootSet rs = jacobi_roots(n, a, b);
        for (int k = 1; k <= 20; ++k) {
          const double x = 3.0 * k / 20.0;
          worst = std::max(worst, detail::rel_err(density_via_roots(rs, x), mab_eval(t, x).f));
        }
      }
    record("root_sum_density", worst, 1e-8);
  }

  {  // E N(0,1) = E N(1,inf) for symmetric laws
    double worst = 0.0;
    const double tol = 1e-10;
    const std::vector<PolynomialClass> classes = {PolynomialClass::gamma_family(1.0), PolynomialClass::gamma_family(2.0),
                                                  PolynomialClass::alpha_beta(1.0, 1.0)};
    for (const auto& c : classes)
      for (long n : {3L, 10L, 30L}) {
        const CoefficientTable t(c, n, true);
        const double inner = expected_roots_interval(t, 0.0, 1.0, tol).value;
        const double outer = expected_roots_interval(t, 1.0, INFINITY, tol).value;
        worst = std::max(worst, std::abs(inner - outer));
      }
    record("quarter_line_symmetry", worst, 10 * 1e-10);
  }

  {  // elliptic: E N = sqrt(n)
    double worst = 0.0;
    for (long n : {1L, 4L, 9L, 16L, 25L}) worst = std::max(worst, std::abs(expected_roots_real_line(PolynomialClass::elliptic(), n) - std::sqrt(static_cast<double>(n))));
    record("elliptic_sqrt_n", worst, 1e-7);
  }
  return out;
}

}  // namespace randroot
