#pragma once

// Command-line front end. `parse_args` turns argv into a RunConfig and `run`
// executes it, writing CSV or JSON. Exit codes: 0 success, 1 verification
// failure, 2 invalid request, 3 numeric non-convergence.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "randroot/asymptotics.hpp"
#include "randroot/core_poly.hpp"
#include "randroot/jacobi.hpp"
#include "randroot/kac_rice.hpp"
#include "randroot/montecarlo.hpp"
#include "randroot/serialize.hpp"
#include "randroot/verify.hpp"

namespace randroot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNonConvergence = 3;

inline constexpr std::uint64_t kDefaultSeed = 20200601ULL;

enum class Subcommand { Density, Expect, Bounds, Mc, Scaling, Verify };
enum class OutputFormat { Csv, Json };

inline const char* to_string(Subcommand s) {
  switch (s) {
    case Subcommand::Density: return "density";
    case Subcommand::Expect: return "expect";
    case Subcommand::Bounds: return "bounds";
    case Subcommand::Mc: return "mc";
    case Subcommand::Scaling: return "scaling";
    case Subcommand::Verify: return "verify";
  }
  return "?";
}

struct RunConfig {
  Subcommand subcommand = Subcommand::Expect;
  std::string class_name = "gamma";
  PolynomialClass cls = PolynomialClass::gamma_family(1.0);
  long n = 0;
  std::vector<long> n_list;
  double interval_a = -std::numeric_limits<double>::infinity();
  double interval_b = std::numeric_limits<double>::infinity();
  double grid_a = 0.0, grid_b = 1.0;
  long grid_steps = 10;
  double tol = 1e-9;
  long trials = 10000;
  std::uint64_t seed = kDefaultSeed;
  OutputFormat format = OutputFormat::Csv;
  std::string output;  // empty: stdout
  VerifyLevel level = VerifyLevel::Fast;
};

/// Parse a real number, accepting inf / -inf / +inf.
inline double parse_real(const std::string& s) {
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw DomainError("not a number: '" + s + "'");
  }
  if (used != s.size() || std::isnan(v)) throw DomainError("not a number: '" + s + "'");
  return v;
}

/// Resolve class name plus parameters (aliases: kac, elliptic, legendre).
inline PolynomialClass resolve_class(const std::string& name, std::optional<double> gamma, std::optional<double> alpha,
                                     std::optional<double> beta) {
  PolynomialClass c;
  if (name == "kac") {
    c = PolynomialClass::kac();
  } else if (name == "elliptic") {
    c = PolynomialClass::elliptic();
  } else if (name == "legendre") {
    c = PolynomialClass::legendre();
  } else if (name == "gamma") {
    if (!gamma) throw DomainError("--class gamma requires --gamma");
    c = PolynomialClass::gamma_family(*gamma);
  } else if (name == "alphabeta") {
    if (!alpha || !beta) throw DomainError("--class alphabeta requires --alpha and --beta");
    c = PolynomialClass::alpha_beta(*alpha, *beta);
  } else {
    throw DomainError("unknown class '" + name + "' (gamma, alphabeta, kac, elliptic, legendre)");
  }
  c.validate();
  return c;
}

struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = kExitOk;  // meaningful when config is empty
};

inline ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"randroot: expected real roots and internal equilibria of random game polynomials"};
  app.name("randroot");
  app.require_subcommand(1, 1);

  RunConfig cfg;
  std::string class_name = "gamma";
  std::optional<double> gamma, alpha, beta;
  std::vector<std::string> interval;
  std::string grid = "0:1:10";
  std::string format = "csv";
  std::string level = "fast";

  auto add_class = [&](CLI::App* sub) {
    sub->add_option("--class", class_name, "gamma | alphabeta | kac | elliptic | legendre")->required();
    sub->add_option("--gamma", gamma, "gamma-family exponent (>= 0)");
    sub->add_option("--alpha", alpha, "(alpha,beta)-family alpha (> -1)");
    sub->add_option("--beta", beta, "(alpha,beta)-family beta (> -1)");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", cfg.output, "output file (default: standard output)");
  };

  auto* density = app.add_subcommand("density", "Kac-Rice density on a grid");
  add_class(density);
  density->add_option("--n", cfg.n, "degree")->required();
  density->add_option("--grid", grid, "a:b:steps (steps subintervals, steps+1 points)");
  add_output(density);

  auto* expect = app.add_subcommand("expect", "expected number of real roots by quadrature");
  add_class(expect);
  expect->add_option("--n", cfg.n, "degree")->required();
  expect->add_option("--interval", interval, "a b (inf / -inf allowed); default whole line")->expected(2);
  expect->add_option("--tol", cfg.tol, "absolute quadrature tolerance");
  add_output(expect);

  auto* bounds = app.add_subcommand("bounds", "finite-n brackets for the (alpha,beta) family");
  add_class(bounds);
  bounds->add_option("--n", cfg.n, "degree")->required();
  add_output(bounds);

  auto* mc = app.add_subcommand("mc", "Monte Carlo root counting");
  add_class(mc);
  mc->add_option("--n", cfg.n, "degree")->required();
  mc->add_option("--trials", cfg.trials, "number of sampled polynomials");
  mc->add_option("--seed", cfg.seed, "64-bit seed");
  add_output(mc);

  auto* scaling = app.add_subcommand("scaling", "E N against n with a least-squares fit");
  add_class(scaling);
  scaling->add_option("--n-list", cfg.n_list, "comma-separated degrees")->required()->delimiter(',');
  scaling->add_option("--tol", cfg.tol, "absolute quadrature tolerance");
  add_output(scaling);

  auto* verify = app.add_subcommand("verify", "run the identity self-checks");
  verify->add_option("--level", level, "fast | full")->check(CLI::IsMember({"fast", "full"}));
  add_output(verify);

  try {
    std::vector<std::string> args;
    for (int k = argc - 1; k >= 1; --k) args.emplace_back(argv[k]);
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return {std::nullopt, kExitOk};
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return {std::nullopt, kExitOk};
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return {std::nullopt, kExitInvalid};
  }

  try {
    if (density->parsed()) cfg.subcommand = Subcommand::Density;
    if (expect->parsed()) cfg.subcommand = Subcommand::Expect;
    if (bounds->parsed()) cfg.subcommand = Subcommand::Bounds;
    if (mc->parsed()) cfg.subcommand = Subcommand::Mc;
    if (scaling->parsed()) cfg.subcommand = Subcommand::Scaling;
    if (verify->parsed()) cfg.subcommand = Subcommand::Verify;

    cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    cfg.level = level == "full" ? VerifyLevel::Full : VerifyLevel::Fast;
    if (cfg.subcommand != Subcommand::Verify) {
      cfg.class_name = class_name;
      cfg.cls = resolve_class(class_name, gamma, alpha, beta);
    }
    if (cfg.subcommand != Subcommand::Verify && cfg.subcommand != Subcommand::Scaling && cfg.n < 1)
      throw DomainError("--n must be >= 1");
    if (!(cfg.tol > 0.0)) throw DomainError("--tol must be positive");
    if (cfg.trials < 1) throw DomainError("--trials must be >= 1");
    if (interval.size() == 2) {
      cfg.interval_a = parse_real(interval[0]);
      cfg.interval_b = parse_real(interval[1]);
      if (!(cfg.interval_a < cfg.interval_b)) throw DomainError("--interval requires a < b");
    }
    if (cfg.subcommand == Subcommand::Density) {
      const auto c1 = grid.find(':');
      const auto c2 = grid.find(':', c1 == std::string::npos ? c1 : c1 + 1);
      if (c1 == std::string::npos || c2 == std::string::npos) throw DomainError("--grid must be a:b:steps");
      cfg.grid_a = parse_real(grid.substr(0, c1));
      cfg.grid_b = parse_real(grid.substr(c1 + 1, c2 - c1 - 1));
      cfg.grid_steps = static_cast<long>(parse_real(grid.substr(c2 + 1)));
      if (!std::isfinite(cfg.grid_a) || !std::isfinite(cfg.grid_b) || !(cfg.grid_a <= cfg.grid_b) || cfg.grid_steps < 1)
        throw DomainError("--grid needs finite a <= b and steps >= 1");
    }
    if (cfg.subcommand == Subcommand::Scaling) {
      if (cfg.n_list.size() < 3) throw DomainError("--n-list needs at least three degrees");
      for (std::size_t k = 0; k < cfg.n_list.size(); ++k)
        if (cfg.n_list[k] < 2 || (k > 0 && cfg.n_list[k] <= cfg.n_list[k - 1]))
          throw DomainError("--n-list must be strictly increasing degrees >= 2");
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return {std::nullopt, kExitInvalid};
  }
  return {cfg, kExitOk};
}

// ---------------------------------------------------------------------------
// tabular output

using Cell = std::variant<std::monostate, double, long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_cell(const Cell& c) {
  struct V {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double d) const { return format_real(d); }
    std::string operator()(long l) const { return std::to_string(l); }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(V{}, c);
}

inline json json_cell(const Cell& c) {
  struct V {
    json operator()(std::monostate) const { return nullptr; }
    json operator()(double d) const { return std::isfinite(d) ? json(d) : json(format_real(d)); }
    json operator()(long l) const { return l; }
    json operator()(const std::string& s) const { return s; }
  };
  return std::visit(V{}, c);
}

inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << t.columns[k];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_cell(row[k]);
    os << '\n';
  }
}

inline json table_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t k = 0; k < row.size(); ++k) obj[t.columns[k]] = json_cell(row[k]);
    rows.push_back(std::move(obj));
  }
  return rows;
}

inline json config_json(const RunConfig& c) {
  json j{{"subcommand", to_string(c.subcommand)}, {"format", c.format == OutputFormat::Json ? "json" : "csv"}};
  if (c.subcommand == Subcommand::Verify) {
    j["level"] = c.level == VerifyLevel::Full ? "full" : "fast";
    return j;
  }
  j["class_name"] = c.class_name;
  j["class"] = c.cls;
  switch (c.subcommand) {
    case Subcommand::Density:
      j["n"] = c.n;
      j["grid"] = {{"a", c.grid_a}, {"b", c.grid_b}, {"steps", c.grid_steps}};
      break;
    case Subcommand::Expect:
      j["n"] = c.n;
      j["interval"] = {format_real(c.interval_a), format_real(c.interval_b)};
      j["tol"] = c.tol;
      break;
    case Subcommand::Bounds: j["n"] = c.n; break;
    case Subcommand::Mc:
      j["n"] = c.n;
      j["trials"] = c.trials;
      j["seed"] = c.seed;
      break;
    case Subcommand::Scaling:
      j["n_list"] = c.n_list;
      j["tol"] = c.tol;
      break;
    case Subcommand::Verify: break;
  }
  return j;
}

struct Report {
  Table table;
  json diagnostics = json::object();
  int exit_code = kExitOk;
};

// ---------------------------------------------------------------------------
// subcommands

inline Report run_density(const RunConfig& c) {
  Report r;
  r.table.columns = {"x", "f", "log_M", "S1", "S2"};
  const CoefficientTable table(c.cls, c.n, true);
  for (long k = 0; k <= c.grid_steps; ++k) {
    const double x = k == c.grid_steps ? c.grid_b : c.grid_a + (c.grid_b - c.grid_a) * k / c.grid_steps;
    const KacRiceTriple t = mab_eval(table, std::abs(x));
    const double s1 = x < 0.0 ? -t.S1 : t.S1;  // B is odd, M and A are even
    r.table.rows.push_back({x, t.f, t.log_M, s1, t.S2});
  }
  return r;
}

inline Report run_expect(const RunConfig& c) {
  Report r;
  r.table.columns = {"n", "value", "abs_err", "evaluations"};
  QuadratureResult q;
  const bool whole = std::isinf(c.interval_a) && c.interval_a < 0 && std::isinf(c.interval_b) && c.interval_b > 0;
  if (whole) {
    q = expected_roots_real_line_result(c.cls, c.n, c.tol);
  } else {
    const CoefficientTable table(c.cls, c.n, !c.cls.is_kac());
    q = expected_roots_interval(table, c.interval_a, c.interval_b, c.tol);
  }
  r.table.rows.push_back({c.n, q.value, q.abs_error_estimate, q.evaluations});
  r.diagnostics["quadrature"] = q;
  if (!q.converged) r.exit_code = kExitNonConvergence;
  return r;
}

inline Report run_bounds(const RunConfig& c) {
  double alpha = c.cls.alpha, beta = c.cls.beta;
  if (c.cls.kind == Family::Gamma) {
    if (c.cls.gamma != 1.0) throw DomainError("bounds apply to the (alpha,beta) family (gamma = 1 is alpha = beta = 0)");
    alpha = beta = 0.0;
  }
  Report r;
  r.table.columns = {"n", "jacobi_lower", "jacobi_upper", "ultra_lower", "ultra_upper", "s_max"};
  const BoundsReport jb = root_bounds(c.n, alpha, beta);
  std::vector<Cell> row = {c.n, jb.lower, jb.upper, std::monostate{}, std::monostate{}, jb.s_max};
  r.diagnostics["jacobi"] = jb;
  if (alpha == beta) {
    const BoundsReport ub = ultraspherical_bounds(c.n, alpha);
    row[3] = ub.lower;
    row[4] = ub.upper;
    r.diagnostics["ultraspherical"] = ub;
  }
  if (alpha == 0.0 && beta == 0.0 && c.n >= 2) r.diagnostics["binomial"] = binomial_bounds(c.n);
  if (!jb.proof_covers) r.diagnostics["note"] = "jacobi-root bracket proven for alpha == beta only; reported empirically";
  r.table.rows.push_back(std::move(row));
  return r;
}

inline Report run_mc(const RunConfig& c) {
  if (c.n > 200) throw DomainError("Monte Carlo supports n <= 200; use expect for larger degrees");
  Report r;
  r.table.columns = {"kind", "count", "frequency", "trials", "mean", "std_error", "positive_mean", "parity_repairs", "seed"};
  const McSummary s = mc_expected_roots(c.cls, c.n, c.trials, c.seed);
  r.table.rows.push_back({std::string("summary"), std::monostate{}, std::monostate{}, s.trials, s.mean, s.std_error,
                          s.positive_mean, s.parity_repairs, std::to_string(s.seed)});
  for (const auto& [count, freq] : s.histogram) {
    r.table.rows.push_back({std::string("histogram"), static_cast<long>(count), freq, std::monostate{}, std::monostate{},
                            std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{}});
  }
  r.diagnostics["summary"] = s;
  return r;
}

inline Report run_scaling(const RunConfig& c) {
  Report r;
  r.table.columns = {"kind", "n", "en", "leading_order", "ratio", "slope", "intercept", "r_squared"};
  const ScalingFit fit = scaling_fit(c.cls, c.n_list, c.tol);
  for (std::size_t k = 0; k < fit.n_values.size(); ++k) {
    const double lead = leading_order(c.cls, static_cast<double>(fit.n_values[k]));
    r.table.rows.push_back({std::string("point"), fit.n_values[k], fit.en_values[k], lead, fit.en_values[k] / lead,
                            std::monostate{}, std::monostate{}, std::monostate{}});
  }
  if (fit.complete) {
    r.table.rows.push_back({std::string("fit"), std::monostate{}, std::monostate{}, std::monostate{}, fit.max_leading_deviation,
                            fit.slope, fit.intercept, fit.r_squared});
  } else {
    r.exit_code = kExitNonConvergence;
  }
  r.diagnostics["fit"] = fit;
  return r;
}

inline Report run_verify(const RunConfig& c) {
  Report r;
  r.table.columns = {"property", "status", "max_error", "threshold"};
  bool all = true;
  for (const auto& p : run_verification(c.level)) {
    r.table.rows.push_back({p.name, std::string(p.passed ? "pass" : "fail"), p.max_error, p.threshold});
    all = all && p.passed;
  }
  if (!all) r.exit_code = kExitVerifyFailed;
  return r;
}

/// Execute a parsed configuration and write its output.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Report rep;
  try {
    switch (c.subcommand) {
      case Subcommand::Density: rep = run_density(c); break;
      case Subcommand::Expect: rep = run_expect(c); break;
      case Subcommand::Bounds: rep = run_bounds(c); break;
      case Subcommand::Mc: rep = run_mc(c); break;
      case Subcommand::Scaling: rep = run_scaling(c); break;
      case Subcommand::Verify: rep = run_verify(c); break;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNonConvergence;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!c.output.empty()) {
    file.open(c.output, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << c.output << "\n";
      return kExitInvalid;
    }
    sink = &file;
  }
  if (c.format == OutputFormat::Json) {
    json doc{{"config", config_json(c)}, {"results", table_json(rep.table)}, {"diagnostics", rep.diagnostics}};
    *sink << doc.dump(2) << '\n';
  } else {
    write_csv(*sink, rep.table);
  }
  if (rep.exit_code == kExitNonConvergence) err << "warning: quadrature did not converge; partial results written\n";
  return rep.exit_code;
}

}  // namespace randroot::cli
