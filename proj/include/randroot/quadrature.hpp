#pragma once

// Globally adaptive 7/15-point Gauss-Kronrod quadrature on a finite interval.
// The panel with the largest error estimate is bisected until the summed
// estimate drops below the absolute tolerance. Panel results are summed in
// left-to-right order, so the value does not depend on refinement history.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace randroot {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;

  QuadratureResult& operator+=(const QuadratureResult& o) {
    value += o.value;
    abs_error_estimate += o.abs_error_estimate;
    evaluations += o.evaluations;
    converged = converged && o.converged;
    return *this;
  }
  QuadratureResult scaled(double s) const {
    return {value * s, abs_error_estimate * std::abs(s), evaluations, converged};
  }
};

struct QuadratureOptions {
  double abs_tol = 1e-9;
  int max_levels = 60;
  long max_evaluations = 2'000'000;
};

namespace detail {

// Kronrod abscissae (x_k15) and weights; odd-indexed nodes are the Gauss 7 nodes.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value, error;
  int level;
};

// QUADPACK qk15 error heuristic.
template <class F>
Panel gauss_kronrod_15(F& f, double a, double b, int level) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> fv1{}, fv2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[static_cast<std::size_t>(j)];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[static_cast<std::size_t>(j)] = f1;
    fv2[static_cast<std::size_t>(j)] = f2;
    const double w = kWgk[static_cast<std::size_t>(j)];
    resk += w * (f1 + f2);
    resabs += w * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[static_cast<std::size_t>(j / 2)] * (f1 + f2);
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[static_cast<std::size_t>(j)] *
              (std::abs(fv1[static_cast<std::size_t>(j)] - reskh) +
               std::abs(fv2[static_cast<std::size_t>(j)] - reskh));
  }
  const double ah = std::abs(half);
  const double result = resk * half;
  resabs *= ah;
  resasc *= ah;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  if (resabs > uflow / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, result, err, level};
}

}  // namespace detail

/// Integrate f over the finite interval [a, b].
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  auto worse = [](const detail::Panel& x, const detail::Panel& y) { return x.error < y.error; };
  std::priority_queue<detail::Panel, std::vector<detail::Panel>, decltype(worse)> open(worse);
  std::vector<detail::Panel> done;  // panels at max depth

  open.push(detail::gauss_kronrod_15(f, a, b, 0));
  out.evaluations = 15;
  double total_err = open.top().error;

  while (!open.empty() && total_err > opt.abs_tol && out.evaluations < opt.max_evaluations) {
    detail::Panel p = open.top();
    open.pop();
    if (p.level >= opt.max_levels) {
      done.push_back(p);
      continue;
    }
    const double mid = 0.5 * (p.a + p.b);
    detail::Panel left = detail::gauss_kronrod_15(f, p.a, mid, p.level + 1);
    detail::Panel right = detail::gauss_kronrod_15(f, mid, p.b, p.level + 1);
    out.evaluations += 30;
    total_err += left.error + right.error - p.error;
    open.push(left);
    open.push(right);
  }

  while (!open.empty()) {
    done.push_back(open.top());
    open.pop();
  }
  std::sort(done.begin(), done.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  double value = 0.0, err = 0.0;
  for (const auto& p : done) {
    value += p.value;
    err += p.error;
  }
  out.value = value;
  out.abs_error_estimate = err;
  out.converged = err <= opt.abs_tol && std::isfinite(value);
  return out;
}

}  // namespace randroot
