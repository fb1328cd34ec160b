#pragma once

// Brute-force root counting for sampled Gaussian-coefficient polynomials.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <span>
#include <thread>
#include <vector>

#include "randroot/core_poly.hpp"

namespace randroot {

/// SplitMix64 stream keyed by (seed, stream id). Output k is a pure function of
/// (seed, stream, k), so trials can be generated in any order on any thread.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : stream_(stream), base_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(base_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

  std::uint64_t stream() const { return stream_; }
  std::uint64_t draws() const { return counter_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t stream_;
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

struct SeedPath {
  std::uint64_t stream = 0;
  std::uint64_t draw_index = 0;  // engine outputs consumed before this polynomial
};

struct SampledPolynomial {
  PolynomialClass cls;
  long n = 0;
  std::vector<double> coeffs;  // coeffs[i] multiplies x^i; max |coeff| == 1
  SeedPath seed_path;
  int redraws = 0;  // draws rejected for a vanishing leading coefficient
};

inline constexpr double kLeadingThreshold = 1e-300;

/// Coefficients xi_i a_i formed in log-magnitude space and rescaled by the largest.
inline SampledPolynomial polynomial_from_gains(const PolynomialClass& cls, long n, std::span<const double> xi) {
  if (static_cast<long>(xi.size()) != n + 1) throw DomainError("gain vector must have n+1 entries");
  SampledPolynomial p;
  p.cls = cls;
  p.n = n;
  std::vector<double> logmag(static_cast<std::size_t>(n) + 1);
  double hi = kNegInf;
  for (long i = 0; i <= n; ++i) {
    const double g = xi[static_cast<std::size_t>(i)];
    logmag[static_cast<std::size_t>(i)] = g == 0.0 ? kNegInf : 0.5 * log_sq_coeff(cls, n, i) + std::log(std::abs(g));
    hi = std::max(hi, logmag[static_cast<std::size_t>(i)]);
  }
  if (!std::isfinite(hi)) throw DomainError("all gains are zero");
  p.coeffs.resize(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) {
    const double g = xi[static_cast<std::size_t>(i)];
    p.coeffs[static_cast<std::size_t>(i)] = std::copysign(std::exp(logmag[static_cast<std::size_t>(i)] - hi), g);
  }
  return p;
}

/// Draw xi_i ~ N(0,1) i.i.d.; redraw while the rescaled leading coefficient is negligible.
inline SampledPolynomial sample_polynomial(const PolynomialClass& cls, long n, CounterRng& rng) {
  cls.validate();
  if (n < 1) throw DomainError("degree n must be >= 1");
  std::vector<double> xi(static_cast<std::size_t>(n) + 1);
  int redraws = 0;
  for (;;) {
    const std::uint64_t start = rng.draws();
    std::normal_distribution<double> normal(0.0, 1.0);
    for (double& g : xi) g = normal(rng);
    SampledPolynomial p = polynomial_from_gains(cls, n, xi);
    if (std::abs(p.coeffs.back()) >= kLeadingThreshold) {
      p.seed_path = {rng.stream(), start};
      p.redraws = redraws;
      return p;
    }
    ++redraws;
  }
}

namespace detail {

/// Parlett-Reinsch balancing by powers of two, row/column norms over the full line.
inline void balance_companion(Eigen::MatrixXd& c) {
  const Eigen::Index deg = c.rows();
  constexpr double gamma = 0.9;
  bool changed = true;
  int sweeps = 0;
  while (changed && sweeps++ < 100) {
    changed = false;
    for (Eigen::Index i = 0; i < deg; ++i) {
      const double row = c.row(i).lpNorm<1>();
      const double col = c.col(i).lpNorm<1>();
      if (row == 0.0 || col == 0.0) continue;
      int e = 0;
      std::frexp(row / col, &e);
      e /= 2;
      if (e == 0) continue;
      if (std::ldexp(col, e) + std::ldexp(row, -e) < gamma * (col + row)) {
        changed = true;
        c.row(i) *= std::ldexp(1.0, -e);
        c.col(i) *= std::ldexp(1.0, e);
      }
    }
  }
}

}  // namespace detail

/// All complex roots of sum_i coeffs[i] x^i via the balanced companion matrix.
inline std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs) {
  long deg = static_cast<long>(coeffs.size()) - 1;
  if (deg < 1) throw DomainError("polynomial must have degree >= 1");
  const double lead = coeffs[static_cast<std::size_t>(deg)];
  if (!(std::abs(lead) >= kLeadingThreshold)) throw DomainError("leading coefficient is negligible");
  if (deg == 1) return {std::complex<double>(-coeffs[0] / lead, 0.0)};

  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(deg, deg);
  c.diagonal(-1).setOnes();
  for (long i = 0; i < deg; ++i) c(i, deg - 1) = -coeffs[static_cast<std::size_t>(i)] / lead;
  detail::balance_companion(c);

  Eigen::EigenSolver<Eigen::MatrixXd> solver(c, false);
  if (solver.info() != Eigen::Success) throw NumericError("companion eigen-solver failed");
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(deg));
  for (long i = 0; i < deg; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return roots;
}

struct RootCensus {
  int real = 0;
  int positive = 0;
  bool parity_repaired = false;
  std::vector<std::complex<double>> roots;
};

inline constexpr double kRealAxisTol = 1e-8;

/// Real/positive root counts with parity repair: a real polynomial of degree n has
/// a real-root count congruent to n (mod 2).
inline RootCensus classify_roots(const SampledPolynomial& p) {
  RootCensus c;
  c.roots = polynomial_roots(p.coeffs);
  const std::size_t m = c.roots.size();
  std::vector<bool> is_real(m);
  int count = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const auto z = c.roots[k];
    is_real[k] = std::abs(z.imag()) <= kRealAxisTol * std::max(1.0, std::abs(z));
    count += is_real[k] ? 1 : 0;
  }
  if ((count - static_cast<int>(m)) % 2 != 0) {
    // flip the root whose |Im| sits closest to the threshold (log distance)
    std::size_t pick = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m; ++k) {
      const auto z = c.roots[k];
      const double thr = kRealAxisTol * std::max(1.0, std::abs(z));
      const double im = std::max(std::abs(z.imag()), std::numeric_limits<double>::min());
      const double dist = std::abs(std::log(im / thr));
      if (dist < best) {
        best = dist;
        pick = k;
      }
    }
    is_real[pick] = !is_real[pick];
    c.parity_repaired = true;
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (!is_real[k]) continue;
    ++c.real;
    if (c.roots[k].real() > 0.0) ++c.positive;
  }
  return c;
}

inline int count_real_roots(const SampledPolynomial& p) { return classify_roots(p).real; }
inline int count_positive_roots(const SampledPolynomial& p) { return classify_roots(p).positive; }

/// Number of complex roots with |z| <= radius.
inline int count_roots_in_disc(const SampledPolynomial& p, double radius) {
  int k = 0;
  for (const auto& z : polynomial_roots(p.coeffs)) k += std::abs(z) <= radius ? 1 : 0;
  return k;
}

/// Worker count from RANDROOT_THREADS (0 or unset = hardware concurrency).
inline unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RANDROOT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return hw;
}

struct McSummary {
  long trials = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double positive_mean = 0.0;  // expected internal equilibria
  std::map<int, long> histogram;
  long parity_repairs = 0;
  long redraws = 0;  // leading-coefficient rejections plus eigen-solver failures
  std::uint64_t seed = 0;
  bool flagged = false;  // parity-repair rate >= 0.1 %

  friend bool operator==(const McSummary&, const McSummary&) = default;
};

inline constexpr double kParityRepairFlagRate = 1e-3;

/// Monte Carlo estimate of E N. Trial t uses stream t of the seed, and the
/// reduction runs in trial order, so the summary is independent of thread count.
inline McSummary mc_expected_roots(const PolynomialClass& cls, long n, long trials, std::uint64_t seed,
                                   unsigned threads = 0) {
  cls.validate();
  if (n < 1) throw DomainError("degree n must be >= 1");
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (threads == 0) threads = worker_count();
  threads = static_cast<unsigned>(std::min<long>(threads, trials));

  struct Outcome {
    int real = 0;
    int positive = 0;
    bool repaired = false;
    int redraws = 0;
  };
  std::vector<Outcome> out(static_cast<std::size_t>(trials));

  auto run_trial = [&](long t) {
    CounterRng rng(seed, static_cast<std::uint64_t>(t));
    Outcome o;
    for (;;) {
      SampledPolynomial p = sample_polynomial(cls, n, rng);
      o.redraws += p.redraws;
      try {
        const RootCensus c = classify_roots(p);
        o.real = c.real;
        o.positive = c.positive;
        o.repaired = c.parity_repaired;
        break;
      } catch (const NumericError&) {
        ++o.redraws;  // eigen failure: redraw from the same stream
      }
    }
    out[static_cast<std::size_t>(t)] = o;
  };

  if (threads <= 1) {
    for (long t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (long t = w; t < trials; t += threads) run_trial(t);
      });
    }
    for (auto& th : pool) th.join();
  }

  McSummary s;
  s.trials = trials;
  s.seed = seed;
  double sum = 0.0, sum_pos = 0.0;
  for (const auto& o : out) {
    sum += o.real;
    sum_pos += o.positive;
    ++s.histogram[o.real];
    s.parity_repairs += o.repaired ? 1 : 0;
    s.redraws += o.redraws;
  }
  s.mean = sum / static_cast<double>(trials);
  s.positive_mean = sum_pos / static_cast<double>(trials);
  if (trials > 1) {
    double ss = 0.0;
    for (const auto& o : out) ss += (o.real - s.mean) * (o.real - s.mean);
    s.std_error = std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials));
  }
  s.flagged = static_cast<double>(s.parity_repairs) >= kParityRepairFlagRate * static_cast<double>(trials);
  return s;
}

struct JensenBound {
  double bound = 0.0;
  int observed = 0;  // roots in |z| <= r
  int grid = 0;      // angular points used for the circle maxima
};

namespace detail {

inline double circle_max(std::span<const double> coeffs, double radius, int grid) {
  double best = 0.0;
  for (int k = 0; k < grid; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / grid;
    const std::complex<double> z = std::polar(radius, theta);
    std::complex<double> v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * z + *it;
    best = std::max(best, std::abs(v));
  }
  return best;
}

}  // namespace detail

/// Jensen-type bound N(r) <= log(M_R / M_r) / log((R^2 + r^2) / (2 R r)), with the
/// circle maxima M_t taken on an angular grid; refined 4x when the bound is
/// within 0.5 of the observed count.
inline JensenBound jensen_root_bound(const SampledPolynomial& p, double r, double R, int grid = 1024) {
  if (!(r > 0.0) || !(r < R)) throw DomainError("jensen_root_bound requires 0 < r < R");
  if (grid < 8) throw DomainError("grid must have at least 8 points");
  const double denom = std::log((R * R + r * r) / (2.0 * R * r));
  JensenBound j;
  j.observed = count_roots_in_disc(p, r);
  auto eval = [&](int g) {
    return std::log(detail::circle_max(p.coeffs, R, g) / detail::circle_max(p.coeffs, r, g)) / denom;
  };
  j.grid = grid;
  j.bound = eval(grid);
  if (j.bound - j.observed < 0.5) {
    j.grid = 4 * grid;
    j.bound = eval(j.grid);
  }
  return j;
}

}  // namespace randroot
