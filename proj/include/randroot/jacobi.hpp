#pragma once

// Jacobi polynomials P_n^(alpha,beta) and their link to the (alpha,beta) family:
//
//   M_n(x) = (1 - x^2)^n P_n((1 + x^2) / (1 - x^2)),
//
// so M_n has the purely imaginary zeros +-i sqrt(r_k), r_k = (1 - s_k)/(1 + s_k),
// where s_k are the Jacobi zeros, and f_n(x)^2 = sum_k r_k / (x^2 + r_k)^2.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "randroot/core_poly.hpp"
#include "randroot/kac_rice.hpp"

namespace randroot {

namespace detail {

inline void check_jacobi_params(double alpha, double beta) {
  if (!(alpha > -1.0) || !(beta > -1.0)) throw DomainError("Jacobi parameters require alpha, beta > -1");
}

/// P_n(x) = scale * exp(log_scale); rescales on the fly so large |x| cannot overflow.
struct ScaledValue {
  double value = 1.0;
  double log_scale = 0.0;
};

/// Three-term recurrence returning (P_n, P_{n-1}) with a shared log scale.
inline ScaledValue jacobi_recurrence(long n, double a, double b, double x, double* prev_out = nullptr) {
  double p0 = 1.0;
  if (n == 0) {
    if (prev_out) *prev_out = 0.0;
    return {1.0, 0.0};
  }
  double p1 = 0.5 * ((a - b) + (a + b + 2.0) * x);
  double log_scale = 0.0;
  for (long k = 2; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + a + b;
    const double c1 = 2.0 * kk * (kk + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    const double c3 = 2.0 * (kk + a - 1.0) * (kk + b - 1.0) * s;
    const double p2 = (c2 * p1 - c3 * p0) / c1;
    p0 = p1;
    p1 = p2;
    const double mag = std::abs(p1);
    if (mag > 1e200) {
      p0 /= mag;
      p1 /= mag;
      log_scale += std::log(mag);
    }
  }
  if (prev_out) *prev_out = p0;
  return {p1, log_scale};
}

}  // namespace detail

/// P_n^(alpha,beta)(x) by the three-term recurrence.
inline double jacobi_eval(long n, double alpha, double beta, double x) {
  detail::check_jacobi_params(alpha, beta);
  if (n < 0) throw DomainError("Jacobi degree must be >= 0");
  const auto v = detail::jacobi_recurrence(n, alpha, beta, x);
  return v.value * std::exp(v.log_scale);
}

/// d/dx P_n^(alpha,beta) = (n + alpha + beta + 1)/2 * P_{n-1}^(alpha+1,beta+1).
inline double jacobi_derivative(long n, double alpha, double beta, double x) {
  if (n == 0) return 0.0;
  return 0.5 * (n + alpha + beta + 1.0) * jacobi_eval(n - 1, alpha + 1.0, beta + 1.0, x);
}

struct JacobiRootSet {
  long n = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> roots;  // ascending, in (-1, 1)
  std::vector<double> r;      // r_k = (1 - s_k)/(1 + s_k), descending
};

/// Zeros of P_n^(alpha,beta) as eigenvalues of the symmetric Jacobi matrix.
inline JacobiRootSet jacobi_roots(long n, double alpha, double beta) {
  detail::check_jacobi_params(alpha, beta);
  if (n < 1) throw DomainError("jacobi_roots requires n >= 1");
  const double ab = alpha + beta;

  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max<long>(n - 1, 1));
  diag(0) = (beta - alpha) / (ab + 2.0);
  for (long k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + ab;
    diag(k) = (beta * beta - alpha * alpha) / (s * (s + 2.0));
  }
  for (long k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + ab;
    double b2;
    if (k == 1) {
      // (k + a + b) / (2k + a + b - 1) cancels to 1 at k = 1, also when a + b = -1
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      b2 = 4.0 * kk * (kk + alpha) * (kk + beta) * (kk + ab) / (s * s * (s - 1.0) * (s + 1.0));
    }
    sub(k - 1) = std::sqrt(b2);
  }

  JacobiRootSet out;
  out.n = n;
  out.alpha = alpha;
  out.beta = beta;
  out.roots.resize(static_cast<std::size_t>(n));
  if (n == 1) {
    out.roots[0] = diag(0);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    Eigen::VectorXd sub_n = sub.head(n - 1);
    solver.computeFromTridiagonal(diag, sub_n, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw NumericError("tridiagonal eigen-solver failed for Jacobi(" + std::to_string(n) + ", " +
                         std::to_string(alpha) + ", " + std::to_string(beta) + ")");
    }
    for (long k = 0; k < n; ++k) out.roots[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
  }

  // one guarded Newton step on the recurrence
  for (double& s : out.roots) {
    const double p = jacobi_eval(n, alpha, beta, s);
    const double dp = jacobi_derivative(n, alpha, beta, s);
    if (dp == 0.0 || !std::isfinite(p / dp)) continue;
    const double cand = s - p / dp;
    if (cand > -1.0 && cand < 1.0 && std::abs(jacobi_eval(n, alpha, beta, cand)) <= std::abs(p)) s = cand;
  }
  std::sort(out.roots.begin(), out.roots.end());

  out.r.resize(out.roots.size());
  for (std::size_t k = 0; k < out.roots.size(); ++k) {
    const double s = out.roots[k];
    out.r[k] = (1.0 - s) / (1.0 + s);
  }
  return out;
}

/// log M_n(x) through the Jacobi identity, |x| < 1.
inline double mn_via_jacobi(long n, double alpha, double beta, double x) {
  detail::check_jacobi_params(alpha, beta);
  if (!(std::abs(x) < 1.0)) throw DomainError("mn_via_jacobi requires |x| < 1");
  if (n < 0) throw DomainError("degree must be >= 0");
  const double x2 = x * x;
  const double z = (1.0 + x2) / (1.0 - x2);
  const auto v = detail::jacobi_recurrence(n, alpha, beta, z);
  return n * std::log1p(-x2) + std::log(v.value) + v.log_scale;
}

/// f_n(x) = sqrt(sum_k r_k / (x^2 + r_k)^2).
inline double density_via_roots(const JacobiRootSet& rs, double x) {
  const double x2 = x * x;
  double s = 0.0;
  for (double r : rs.r) {
    const double d = x2 + r;
    s += r / (d * d);
  }
  return std::sqrt(s);
}

enum class BoundsMethod { JacobiRoot, UltrasphericalClosedForm, BinomialClosedForm };

inline const char* to_string(BoundsMethod m) {
  switch (m) {
    case BoundsMethod::JacobiRoot: return "jacobi_root";
    case BoundsMethod::UltrasphericalClosedForm: return "ultraspherical_closed_form";
    case BoundsMethod::BinomialClosedForm: return "binomial_closed_form";
  }
  return "";
}

struct BoundsReport {
  long n = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  BoundsMethod method = BoundsMethod::JacobiRoot;
  double s_max = 0.0;  // largest Jacobi zero (root method only)
  /// The proof of the Jacobi-root bracket uses r_1 r_n = 1, which needs alpha == beta.
  bool proof_covers = true;
};

/// sqrt(n)(1 - s)/(1 + s) <= E N <= sqrt(n)(1 + s)/(1 - s), s the largest Jacobi zero.
inline BoundsReport root_bounds(long n, double alpha, double beta) {
  const JacobiRootSet rs = jacobi_roots(n, alpha, beta);
  const double s = rs.roots.back();
  BoundsReport b;
  b.n = n;
  b.alpha = alpha;
  b.beta = beta;
  b.method = BoundsMethod::JacobiRoot;
  b.s_max = s;
  const double sq = std::sqrt(static_cast<double>(n));
  b.lower = sq * (1.0 - s) / (1.0 + s);
  b.upper = sq * (1.0 + s) / (1.0 - s);
  if (b.lower > b.upper) std::swap(b.lower, b.upper);  // s_max < 0 can occur only for n = 1
  b.proof_covers = alpha == beta;
  return b;
}

/// Closed-form bracket for alpha = beta.
inline BoundsReport ultraspherical_bounds(long n, double alpha) {
  detail::check_jacobi_params(alpha, alpha);
  if (n < 1) throw DomainError("ultraspherical_bounds requires n >= 1");
  const double nn = static_cast<double>(n);
  // n (n + 2a) / (2n + 2a - 1) is identically 1 at n = 1 (0/0 at a = -1/2)
  const double ratio = n == 1 ? 1.0 : nn * (nn + 2.0 * alpha) / (2.0 * nn + 2.0 * alpha - 1.0);
  BoundsReport b;
  b.n = n;
  b.alpha = alpha;
  b.beta = alpha;
  b.method = BoundsMethod::UltrasphericalClosedForm;
  b.lower = 2.0 / std::numbers::pi * std::sqrt(ratio);
  b.upper = 2.0 * std::sqrt(nn) / std::numbers::pi *
            (1.0 + std::numbers::ln2 + 0.5 * std::log((nn + alpha) / (1.0 + alpha)));
  return b;
}

/// Older bracket for binomial coefficients (gamma = 1, i.e. alpha = beta = 0):
/// 2n / (pi sqrt(2n - 3)) <= E N <= (2 sqrt(n) / pi)(1 + ln 2 + ln(n) / 2), n >= 2.
inline BoundsReport binomial_bounds(long n) {
  if (n < 2) throw DomainError("binomial_bounds requires n >= 2");
  const double nn = static_cast<double>(n);
  BoundsReport b;
  b.n = n;
  b.method = BoundsMethod::BinomialClosedForm;
  b.lower = 2.0 * nn / (std::numbers::pi * std::sqrt(2.0 * nn - 3.0));
  b.upper = 2.0 * std::sqrt(nn) / std::numbers::pi * (1.0 + std::numbers::ln2 + 0.5 * std::log(nn));
  return b;
}

struct DensityEndpoints {
  double f0 = 0.0;
  double f1 = 0.0;
};

/// Closed forms of f_n(0) and f_n(1) for the (alpha,beta) family.
inline DensityEndpoints density_endpoints(long n, double alpha, double beta) {
  detail::check_jacobi_params(alpha, beta);
  if (n < 1) throw DomainError("density_endpoints requires n >= 1");
  const double nn = static_cast<double>(n);
  const double s = 2.0 * nn + alpha + beta;
  DensityEndpoints e;
  e.f0 = std::sqrt(nn * (nn + beta) / (1.0 + alpha));
  if (n == 1) {
    // (n + a + b)/(2n + a + b - 1) = 1 at n = 1
    e.f1 = std::sqrt((1.0 + alpha) * (1.0 + beta)) / s;
  } else {
    e.f1 = std::sqrt(nn * (nn + alpha) * (nn + beta) * (nn + alpha + beta) / (s - 1.0)) / s;
  }
  return e;
}

/// Residual of x(2n+a+b) M_n' = n(2n+a+b + b-a) M_n - 2(1-x^2)(n+a)(n+b) M_{n-1},
/// divided by M_n(x). M_n' is summed term by term. The b-a term carries the factor n
/// that comes out of the Jacobi derivative formula.
inline double derivative_recurrence_residual(long n, double alpha, double beta, double x) {
  detail::check_jacobi_params(alpha, beta);
  if (n < 2) throw DomainError("derivative recurrence residual requires n >= 2");
  if (!(x > 0.0)) throw DomainError("derivative recurrence residual requires x > 0");
  const auto cls = PolynomialClass::alpha_beta(alpha, beta);
  const CoefficientTable tn(cls, n, false);
  const CoefficientTable tm(cls, n - 1, false);
  const double lx = std::log(x);
  const double log_mn = detail::log_moment(tn.log_sq_coeff(), lx, 0);
  const double log_mm = detail::log_moment(tm.log_sq_coeff(), lx, 0);
  // M_n'(x) / M_n(x) = sum 2 i a_i^2 x^{2i-1} / M_n
  const double dm_over_m = 2.0 * std::exp(detail::log_moment(tn.log_sq_coeff(), lx, 1) - lx - log_mn);
  const double nn = static_cast<double>(n);
  const double s = 2.0 * nn + alpha + beta;
  const double lhs = x * s * dm_over_m;
  const double rhs = nn * (s + beta - alpha) -
                     2.0 * (1.0 - x * x) * (nn + alpha) * (nn + beta) * std::exp(log_mm - log_mn);
  return lhs - rhs;
}

}  // namespace randroot
