#pragma once

// Random polynomial families and their log-scale coefficient tables.
//
//   gamma family:      p(x) = sum_i xi_i * C(n,i)^gamma * x^i
//   (alpha,beta):      p(x) = sum_i xi_i * sqrt(C(n+alpha,n-i) C(n+beta,i)) * x^i
//
// with xi_i i.i.d. standard normal. Everything is stored as log(a_i^2) since
// C(n, n/2)^(2 gamma) leaves double range around n ~ 1030/gamma.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace randroot {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation called on an object that lacks required precomputed state.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Numerical failure (eigen-solver breakdown, non-convergence surfaced as error).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

namespace detail {

/// log(sum(exp(v))) with -inf entries allowed; returns -inf for an empty/all -inf input.
inline double log_sum_exp(std::span<const double> v) {
  double hi = kNegInf;
  for (double t : v) hi = std::max(hi, t);
  if (!std::isfinite(hi)) return hi;
  double s = 0.0;
  for (double t : v) s += std::exp(t - hi);
  return hi + std::log(s);
}

/// log C(base + shift, k) for integers base >= k >= 0 and real shift > -1.
/// The two lower-gamma terms are added before subtracting so that
/// log C(N+p, k) and its mirror under k <-> N-k round identically.
inline double log_binomial_shifted(long base, double shift, long k) {
  const double top = std::lgamma(static_cast<double>(base) + shift + 1.0);
  const double lo1 = std::lgamma(static_cast<double>(k) + 1.0);
  const double lo2 = std::lgamma(static_cast<double>(base - k) + shift + 1.0);
  return top - (lo1 + lo2);
}

}  // namespace detail

enum class Family { Gamma, AlphaBeta };

/// Which random family, with its parameters.
struct PolynomialClass {
  Family kind = Family::Gamma;
  double gamma = 1.0;
  double alpha = 0.0;
  double beta = 0.0;

  static PolynomialClass gamma_family(double g) { return {Family::Gamma, g, 0.0, 0.0}; }
  static PolynomialClass alpha_beta(double a, double b) { return {Family::AlphaBeta, 0.0, a, b}; }
  static PolynomialClass kac() { return gamma_family(0.0); }
  static PolynomialClass elliptic() { return gamma_family(0.5); }
  static PolynomialClass legendre() { return alpha_beta(0.0, 0.0); }

  void validate() const {
    if (kind == Family::Gamma) {
      if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw DomainError("gamma family requires gamma >= 0");
    } else {
      if (!(alpha > -1.0) || !(beta > -1.0) || !std::isfinite(alpha) || !std::isfinite(beta))
        throw DomainError("(alpha,beta) family requires alpha > -1 and beta > -1");
    }
  }

  /// Coefficient law invariant under i -> n-i (so x -> 1/x leaves E N unchanged).
  bool is_symmetric() const { return kind == Family::Gamma || alpha == beta; }
  bool is_kac() const { return kind == Family::Gamma && gamma == 0.0; }

  std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    if (kind == Family::Gamma)
      os << "gamma(" << gamma << ")";
    else
      os << "alphabeta(" << alpha << "," << beta << ")";
    return os.str();
  }

  friend bool operator==(const PolynomialClass&, const PolynomialClass&) = default;
};

/// log(a_i^2) for the given class and degree.
inline double log_sq_coeff(const PolynomialClass& cls, long n, long i) {
  cls.validate();
  if (n < 1) throw DomainError("degree n must be >= 1");
  if (i < 0 || i > n) throw DomainError("coefficient index outside [0, n]");
  if (cls.kind == Family::Gamma) {
    if (cls.gamma == 0.0) return 0.0;
    return 2.0 * cls.gamma * detail::log_binomial_shifted(n, 0.0, i);
  }
  return detail::log_binomial_shifted(n, cls.alpha, n - i) +
         detail::log_binomial_shifted(n, cls.beta, i);
}

/// Coefficient class obtained by x -> 1/x (index reversal).
inline PolynomialClass reciprocal_class(const PolynomialClass& cls) {
  cls.validate();
  if (cls.kind == Family::Gamma) return cls;
  return PolynomialClass::alpha_beta(cls.beta, cls.alpha);
}

/// Degree, log a_i^2, and optionally the anti-diagonal sums
/// c_m = 1/2 sum_{i+j=m} (i-j)^2 a_i^2 a_j^2 used for A M - B^2.
class CoefficientTable {
 public:
  CoefficientTable(PolynomialClass cls, long n, bool with_convolution)
      : class_(cls), n_(n) {
    cls.validate();
    if (n < 1) throw DomainError("degree n must be >= 1");
    log_sq_.resize(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) log_sq_[static_cast<std::size_t>(i)] = randroot::log_sq_coeff(cls, n, i);
    if (with_convolution) build_convolution();
  }

  const PolynomialClass& polynomial_class() const { return class_; }
  long degree() const { return n_; }
  std::span<const double> log_sq_coeff() const { return log_sq_; }
  bool has_convolution() const { return log_conv_.has_value(); }

  /// log c_m for m = 0..2n; c_0 = c_2n = 0 are stored as -inf.
  std::span<const double> log_conv_coeff() const {
    if (!log_conv_) throw StateError("coefficient table was built without convolution terms");
    return *log_conv_;
  }

  /// Table of the reversed polynomial x^n p(1/x); exact array reversal.
  CoefficientTable reversed() const {
    CoefficientTable out(*this);
    out.class_ = reciprocal_class(class_);
    std::reverse(out.log_sq_.begin(), out.log_sq_.end());
    if (out.log_conv_) std::reverse(out.log_conv_->begin(), out.log_conv_->end());
    return out;
  }

 private:
  void build_convolution() {
    const long n = n_;
    std::vector<double> conv(static_cast<std::size_t>(2 * n) + 1, kNegInf);
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(n) + 1);
    for (long m = 1; m < 2 * n; ++m) {
      terms.clear();
      // pairs i < j with i + j = m; the (i,j)/(j,i) symmetry cancels the 1/2
      const long i_lo = std::max(0L, m - n);
      for (long i = i_lo; 2 * i < m; ++i) {
        const long j = m - i;
        terms.push_back(2.0 * std::log(static_cast<double>(j - i)) +
                        log_sq_[static_cast<std::size_t>(i)] + log_sq_[static_cast<std::size_t>(j)]);
      }
      conv[static_cast<std::size_t>(m)] = detail::log_sum_exp(terms);
    }
    log_conv_ = std::move(conv);
  }

  PolynomialClass class_;
  long n_;
  std::vector<double> log_sq_;
  std::optional<std::vector<double>> log_conv_;
};

inline CoefficientTable coefficient_table(const PolynomialClass& cls, long n, bool with_convolution) {
  return CoefficientTable(cls, n, with_convolution);
}

/// Frequency y = x/(1+x) of an internal equilibrium at positive root x.
inline double equilibrium_fraction(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("equilibrium_fraction requires finite x > 0");
  return x / (1.0 + x);
}

}  // namespace randroot
