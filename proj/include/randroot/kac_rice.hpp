#pragma once

// Kac-Rice density for p(x) = sum_i a_i xi_i x^i:
//
//   M(x) = sum a_i^2 x^{2i},  B(x) = sum i a_i^2 x^{2i-1},  A(x) = sum i^2 a_i^2 x^{2i-2}
//   f(x) = sqrt(A M - B^2) / M,     E N(a,b) = (1/pi) int_a^b f(x) dx
//
// A M - B^2 is never formed by subtraction. It is evaluated as
// sum_m c_m x^{2m-2} with the nonnegative anti-diagonal sums c_m held by the
// coefficient table.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "randroot/core_poly.hpp"
#include "randroot/quadrature.hpp"

namespace randroot {

struct KacRiceTriple {
  double x = 0.0;
  double log_M = 0.0;
  double S1 = 0.0;  // B/M
  double S2 = 0.0;  // A/M
  double log_AMB = 0.0;
  double f = 0.0;
};

namespace detail {

/// log sum_i i^k a_i^2 x^{2i} for k in {0, 1, 2}, given lx = log x.
inline double log_moment(std::span<const double> la, double lx, int k) {
  const long n = static_cast<long>(la.size()) - 1;
  const long first = k == 0 ? 0 : 1;
  auto term = [&](long i) {
    const double w = k == 0 ? 0.0 : k * std::log(static_cast<double>(i));
    return la[static_cast<std::size_t>(i)] + w + 2.0 * i * lx;
  };
  double hi = kNegInf;
  for (long i = first; i <= n; ++i) hi = std::max(hi, term(i));
  if (!std::isfinite(hi)) return hi;
  double s = 0.0;
  for (long i = first; i <= n; ++i) s += std::exp(term(i) - hi);
  return hi + std::log(s);
}

/// log(A M - B^2) = log sum_m c_m x^{2m-2}.
inline double log_amb(std::span<const double> lc, double lx) {
  const long top = static_cast<long>(lc.size()) - 1;  // 2n
  double hi = kNegInf;
  for (long m = 1; m < top; ++m) hi = std::max(hi, lc[static_cast<std::size_t>(m)] + (2.0 * m - 2.0) * lx);
  double s = 0.0;
  for (long m = 1; m < top; ++m) s += std::exp(lc[static_cast<std::size_t>(m)] + (2.0 * m - 2.0) * lx - hi);
  return hi + std::log(s);
}

}  // namespace detail

/// M, B/M, A/M, log(AM - B^2) and the density at x >= 0.
inline KacRiceTriple mab_eval(const CoefficientTable& table, double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("mab_eval requires finite x >= 0");
  const auto la = table.log_sq_coeff();
  const auto lc = table.log_conv_coeff();

  KacRiceTriple t;
  t.x = x;
  if (x == 0.0) {
    t.log_M = la[0];
    t.S1 = 0.0;
    t.S2 = std::exp(la[1] - la[0]);
    t.log_AMB = la[0] + la[1];
    t.f = std::exp(0.5 * (la[1] - la[0]));
    return t;
  }
  const double lx = std::log(x);
  t.log_M = detail::log_moment(la, lx, 0);
  t.S1 = std::exp(detail::log_moment(la, lx, 1) - lx - t.log_M);
  t.S2 = std::exp(detail::log_moment(la, lx, 2) - 2.0 * lx - t.log_M);
  t.log_AMB = detail::log_amb(lc, lx);
  t.f = std::exp(0.5 * t.log_AMB - t.log_M);
  return t;
}

/// Density only; skips the B and A moments.
inline double mab_density(const CoefficientTable& table, double x) {
  if (x == 0.0) return mab_eval(table, 0.0).f;
  const double lx = std::log(x);
  return std::exp(0.5 * detail::log_amb(table.log_conv_coeff(), lx) - detail::log_moment(table.log_sq_coeff(), lx, 0));
}

// Kac polynomials (all a_i = 1) in closed form. With u = x^2 and
// d = -log u, f^2 = [csch^2(d/2) - (n+1)^2 csch^2((n+1)d/2)] / (4u); the 1/d^2
// poles cancel analytically by working with csch^2(a) - 1/a^2.
namespace detail {

/// csch^2(a) - 1/a^2, accurate through a -> 0.
inline double csch2_minus_inv_sq(double a) {
  if (a < 0.25) {
    const double a2 = a * a;
    return -1.0 / 3.0 +
           a2 * (1.0 / 15.0 + a2 * (-2.0 / 189.0 + a2 * (1.0 / 675.0 + a2 * (-2.0 / 10395.0))));
  }
  if (a > 40.0) return 4.0 * std::exp(-2.0 * a) - 1.0 / (a * a);
  const double s = std::sinh(a);
  return 1.0 / (s * s) - 1.0 / (a * a);
}

}  // namespace detail

/// log M_n(x) = log((1 - x^{2n+2}) / (1 - x^2)) for the Kac family.
inline double kac_log_m(long n, double x) {
  x = std::abs(x);
  if (x == 1.0) return std::log(static_cast<double>(n + 1));
  if (x > 1.0) return 2.0 * n * std::log(x) + kac_log_m(n, 1.0 / x);
  if (x == 0.0) return 0.0;
  const double lu = 2.0 * std::log(x);
  return std::log(-std::expm1((n + 1) * lu)) - std::log(-std::expm1(lu));
}

/// Kac-Rice density of the Kac polynomial of degree n; O(1) per point.
inline double kac_density(long n, double x) {
  x = std::abs(x);
  if (x > 1.0) return kac_density(n, 1.0 / x) / (x * x);
  if (x == 0.0) return 1.0;
  const double N = static_cast<double>(n + 1);
  if (x == 1.0) return std::sqrt((N * N - 1.0) / 12.0);
  const double u = x * x;
  const double d = -std::log(u);
  if (d > 1200.0) return 1.0;  // x below ~1e-260: f = 1 to double precision
  const double bracket = detail::csch2_minus_inv_sq(0.5 * d) - N * N * detail::csch2_minus_inv_sq(0.5 * N * d);
  return std::sqrt(std::max(0.0, bracket) / (4.0 * u));
}

/// f_n(|x|). Uses the closed form for Kac tables built without convolution terms.
inline double density(const CoefficientTable& table, double x) {
  if (!std::isfinite(x)) return 0.0;
  x = std::abs(x);
  if (!table.has_convolution()) {
    if (table.polynomial_class().is_kac()) return kac_density(table.degree(), x);
    throw StateError("density requires convolution terms for non-Kac classes");
  }
  return mab_density(table, x);
}

namespace detail {

/// (1/pi) int_lo^hi f, 0 <= lo < hi <= 1.
template <class Density>
QuadratureResult unit_leg(Density&& f, double lo, double hi, double tol) {
  QuadratureOptions opt;
  opt.abs_tol = tol * std::numbers::pi;
  QuadratureResult r = integrate_adaptive(f, lo, hi, opt);
  return r.scaled(1.0 / std::numbers::pi);
}

/// E N over (lo, hi) with 0 <= lo < hi <= inf; the (1, inf) part is mapped to
/// (0, 1) through u = 1/x using the reversed polynomial.
inline QuadratureResult positive_half(const CoefficientTable& table, const CoefficientTable& rev, double lo,
                                      double hi, double tol) {
  QuadratureResult total;
  total.converged = true;
  const bool has_inner = lo < 1.0;
  const bool has_outer = hi > 1.0;
  const double leg_tol = (has_inner && has_outer) ? 0.5 * tol : tol;
  if (has_inner) {
    total += unit_leg([&](double x) { return density(table, x); }, lo, std::min(hi, 1.0), leg_tol);
  }
  if (has_outer) {
    const double ulo = std::isinf(hi) ? 0.0 : 1.0 / hi;
    const double uhi = 1.0 / std::max(lo, 1.0);
    total += unit_leg([&](double u) { return density(rev, u); }, ulo, uhi, leg_tol);
  }
  return total;
}

}  // namespace detail

/// Expected number of real roots in (a, b); either end may be infinite.
inline QuadratureResult expected_roots_interval(const CoefficientTable& table, double a, double b, double tol) {
  if (!(a < b)) throw DomainError("expected_roots_interval requires a < b");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const CoefficientTable rev = table.reversed();
  QuadratureResult total;
  total.converged = true;
  const bool neg = a < 0.0;
  const bool pos = b > 0.0;
  const double part_tol = (neg && pos) ? 0.5 * tol : tol;
  if (neg) total += detail::positive_half(table, rev, std::max(0.0, -b), -a, part_tol);  // evenness
  if (pos) total += detail::positive_half(table, rev, std::max(0.0, a), b, part_tol);
  return total;
}

/// E N over the whole real line, with quadrature diagnostics.
inline QuadratureResult expected_roots_real_line_result(const PolynomialClass& cls, long n, double tol = 1e-9) {
  cls.validate();
  if (n < 1) throw DomainError("degree n must be >= 1");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (cls.is_kac()) {
    return detail::unit_leg([&](double x) { return kac_density(n, x); }, 0.0, 1.0, tol / 4.0).scaled(4.0);
  }
  const CoefficientTable table(cls, n, true);
  if (cls.is_symmetric()) {
    return detail::unit_leg([&](double x) { return mab_density(table, x); }, 0.0, 1.0, tol / 4.0).scaled(4.0);
  }
  const CoefficientTable rev = table.reversed();
  QuadratureResult r = detail::unit_leg([&](double x) { return mab_density(table, x); }, 0.0, 1.0, tol / 4.0);
  r += detail::unit_leg([&](double x) { return mab_density(rev, x); }, 0.0, 1.0, tol / 4.0);
  return r.scaled(2.0);
}

/// E N over the whole real line; throws NumericError when the quadrature does not converge.
inline double expected_roots_real_line(const PolynomialClass& cls, long n, double tol = 1e-9) {
  const QuadratureResult r = expected_roots_real_line_result(cls, n, tol);
  if (!r.converged) throw NumericError("quadrature did not converge for " + cls.describe());
  return r.value;
}

/// Expected number of internal equilibria: half the expected real roots.
inline double expected_internal_equilibria(const PolynomialClass& cls, long n, double tol = 1e-9) {
  return 0.5 * expected_roots_real_line(cls, n, tol);
}

struct RelationResiduals {
  double r1 = 0.0;  // |B - M'/2| / M
  double r2 = 0.0;  // |A - (x M')'/(4x)| / M
};

inline double default_fd_step(double x) { return std::max(1e-6, 1e-8 * x); }

/// Central-difference residuals of B = M'/2 and A = (x M')'/(4x), normalized by M(x).
inline RelationResiduals relation_residuals(const CoefficientTable& table, double x, double h) {
  if (!(x > 0.0)) throw DomainError("relation_residuals requires x > 0");
  if (!(h > 0.0) || h >= x) throw DomainError("finite-difference step must satisfy 0 < h < x");
  const KacRiceTriple c = mab_eval(table, x);
  const KacRiceTriple p = mab_eval(table, x + h);
  const KacRiceTriple m = mab_eval(table, x - h);
  const double mp = std::exp(p.log_M - c.log_M);  // M(x+h)/M(x)
  const double mm = std::exp(m.log_M - c.log_M);
  RelationResiduals r;
  r.r1 = std::abs(c.S1 - 0.5 * (mp - mm) / (2.0 * h));
  // x M'(x) = 2 x B(x) = 2 x S1 M
  const double xmp_p = 2.0 * (x + h) * p.S1 * mp;
  const double xmp_m = 2.0 * (x - h) * m.S1 * mm;
  r.r2 = std::abs(c.S2 - (xmp_p - xmp_m) / (2.0 * h) / (4.0 * x));
  return r;
}

}  // namespace randroot
