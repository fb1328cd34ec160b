#pragma once

// Leading-order behaviour of E N and saddle-point approximants of M_n and
// A_n M_n - B_n^2 for the gamma family.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "randroot/core_poly.hpp"
#include "randroot/kac_rice.hpp"

namespace randroot {

struct EntropyTerms {
  double I = 0.0;   // t log(1/t) + (1-t) log(1/(1-t))
  double J = 0.0;   // gamma I(t) + t log x
  double J1 = 0.0;  // J'(t)
  double J2 = 0.0;  // J''(t)
};

inline EntropyTerms entropy_terms(double t, double gamma, double x) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("entropy terms require 0 < t < 1");
  if (!(x > 0.0)) throw DomainError("entropy terms require x > 0");
  EntropyTerms e;
  e.I = -t * std::log(t) - (1.0 - t) * std::log1p(-t);
  e.J = gamma * e.I + t * std::log(x);
  e.J1 = gamma * (std::log1p(-t) - std::log(t)) + std::log(x);
  e.J2 = -gamma / (t * (1.0 - t));
  return e;
}

/// Saddle point t = x^{1/gamma}/(1 + x^{1/gamma}) of J and its index floor(n t).
struct ConcentrationParams {
  double gamma = 1.0;
  double x = 1.0;
  long n = 0;
  double t = 0.5;
  long i_star = 0;
};

inline ConcentrationParams concentration_params(double gamma, double x, long n) {
  if (!(gamma > 0.0)) throw DomainError("concentration parameters require gamma > 0");
  if (!(x > 0.0 && x <= 1.0)) throw DomainError("concentration parameters require 0 < x <= 1");
  if (n < 1) throw DomainError("degree n must be >= 1");
  ConcentrationParams c;
  c.gamma = gamma;
  c.x = x;
  c.n = n;
  const double xp = std::pow(x, 1.0 / gamma);
  c.t = xp / (1.0 + xp);
  // guard against n t landing one ulp under an integer
  c.i_star = static_cast<long>(std::floor(static_cast<double>(n) * c.t * (1.0 + 8.0 * std::numeric_limits<double>::epsilon())));
  return c;
}

struct Approximant {
  double log_value = 0.0;
  bool in_window = true;  // (log n)^{4 gamma} / n^gamma <= x <= 1
};

namespace detail {

inline bool in_validity_window(double gamma, long n, double x) {
  const double ln = std::log(static_cast<double>(n));
  return x <= 1.0 && x >= std::pow(ln, 4.0 * gamma) / std::pow(static_cast<double>(n), gamma);
}

/// n x^{1/gamma} / (gamma (1 + x^{1/gamma})^2) = n t (1 - t) / gamma
inline double gaussian_width_sq(double gamma, long n, double x) {
  const double xp = std::pow(x, 1.0 / gamma);
  return static_cast<double>(n) * xp / (gamma * (1.0 + xp) * (1.0 + xp));
}

}  // namespace detail

/// log of C(n,i*)^{2 gamma} x^{2 i*} sqrt(pi) sqrt(n x^{1/gamma} / (gamma (1 + x^{1/gamma})^2)).
inline Approximant approx_M(double gamma, long n, double x) {
  const ConcentrationParams c = concentration_params(gamma, x, n);
  Approximant a;
  a.in_window = detail::in_validity_window(gamma, n, x);
  a.log_value = 2.0 * gamma * detail::log_binomial_shifted(n, 0.0, c.i_star) + 2.0 * c.i_star * std::log(x) +
                0.5 * std::log(std::numbers::pi) + 0.5 * std::log(detail::gaussian_width_sq(gamma, n, x));
  return a;
}

/// log of C(n,i*)^{2 gamma} x^{4 i* - 2} (pi/2) (n x^{1/gamma} / (gamma (1 + x^{1/gamma})^2))^2,
/// with the binomial raised to 2 gamma as the approximant is usually quoted.
inline Approximant approx_AMB(double gamma, long n, double x) {
  const ConcentrationParams c = concentration_params(gamma, x, n);
  Approximant a;
  a.in_window = detail::in_validity_window(gamma, n, x);
  a.log_value = 2.0 * gamma * detail::log_binomial_shifted(n, 0.0, c.i_star) + (4.0 * c.i_star - 2.0) * std::log(x) +
                std::log(0.5 * std::numbers::pi) + 2.0 * std::log(detail::gaussian_width_sq(gamma, n, x));
  return a;
}

/// Same Gaussian double-sum approximant with the peak term squared:
/// C(n,i*)^{4 gamma} x^{4 i* - 2} (pi/2) (...)^2. This is what the double sum
/// sum_{i,j} (i-j)^2 w_i w_j over two Gaussian-shaped weight profiles gives.
inline Approximant approx_AMB_squared_peak(double gamma, long n, double x) {
  Approximant a = approx_AMB(gamma, n, x);
  const ConcentrationParams c = concentration_params(gamma, x, n);
  a.log_value += 2.0 * gamma * detail::log_binomial_shifted(n, 0.0, c.i_star);
  return a;
}

/// sqrt(2 gamma n) for gamma > 0, (2/pi) ln n for Kac, sqrt(2n) for the (alpha,beta) family.
inline double leading_order(const PolynomialClass& cls, double n) {
  cls.validate();
  if (!(n >= 2.0)) throw DomainError("leading_order requires n >= 2");
  if (cls.kind == Family::AlphaBeta) return std::sqrt(2.0 * n);
  if (cls.gamma == 0.0) return 2.0 / std::numbers::pi * std::log(n);
  return std::sqrt(2.0 * cls.gamma * n);
}

struct ScalingFit {
  PolynomialClass cls;
  std::vector<long> n_values;
  std::vector<double> en_values;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double max_leading_deviation = 0.0;  // max_n |E N / leading_order - 1|
  /// "ln EN vs ln n" (power law) or "EN vs ln n" (Kac).
  std::string regression;
  bool complete = false;
};

namespace detail {

struct LineFit {
  double slope, intercept, r_squared;
};

inline LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double m = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sx += xs[k];
    sy += ys[k];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

}  // namespace detail

/// Regress E N against n. Power-law slope (ln EN vs ln n) for gamma > 0 and the
/// (alpha,beta) family, linear slope in ln n for Kac. Stops at the first
/// non-converged quadrature, returning what was computed with complete = false.
inline ScalingFit scaling_fit(const PolynomialClass& cls, const std::vector<long>& n_values, double tol = 1e-9) {
  cls.validate();
  if (n_values.size() < 3) throw DomainError("scaling_fit needs at least three degrees");
  for (std::size_t k = 0; k < n_values.size(); ++k) {
    if (n_values[k] < 2) throw DomainError("scaling_fit degrees must be >= 2");
    if (k > 0 && n_values[k] <= n_values[k - 1]) throw DomainError("scaling_fit degrees must be strictly increasing");
  }
  ScalingFit fit;
  fit.cls = cls;
  fit.regression = cls.is_kac() ? "EN vs ln n" : "ln EN vs ln n";
  for (long n : n_values) {
    const QuadratureResult r = expected_roots_real_line_result(cls, n, tol);
    if (!r.converged) return fit;
    fit.n_values.push_back(n);
    fit.en_values.push_back(r.value);
    fit.max_leading_deviation =
        std::max(fit.max_leading_deviation, std::abs(r.value / leading_order(cls, static_cast<double>(n)) - 1.0));
  }
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < fit.n_values.size(); ++k) {
    xs.push_back(std::log(static_cast<double>(fit.n_values[k])));
    ys.push_back(cls.is_kac() ? fit.en_values[k] : std::log(fit.en_values[k]));
  }
  const detail::LineFit lf = detail::least_squares(xs, ys);
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.r_squared = lf.r_squared;
  fit.complete = true;
  return fit;
}

struct RatioCheck {
  double exact_ratio = 0.0;
  double approximant = 0.0;
};

/// C(n+a,n-i) C(n+b,i) / C(n,n-i) C(n,i) against exp(h(i/n)),
/// h(t) = (a+b) I(t) + I'(t) (a (1-t) - b t). Diagnostic only.
inline RatioCheck alpha_beta_ratio_check(double alpha, double beta, long n, long i) {
  if (n < 2 || i < 1 || i > n - 1) throw DomainError("ratio check requires 1 <= i <= n-1");
  const auto ab = PolynomialClass::alpha_beta(alpha, beta);
  const auto base = PolynomialClass::alpha_beta(0.0, 0.0);
  RatioCheck rc;
  rc.exact_ratio = std::exp(log_sq_coeff(ab, n, i) - log_sq_coeff(base, n, i));
  const double t = static_cast<double>(i) / static_cast<double>(n);
  const EntropyTerms e = entropy_terms(t, 0.0, 1.0);
  const double dI = std::log1p(-t) - std::log(t);
  rc.approximant = std::exp((alpha + beta) * e.I + dI * (alpha * (1.0 - t) - beta * t));
  return rc;
}

}  // namespace randroot
