#pragma once

// nlohmann::json bindings for result types.

#include <json.hpp>

#include "randroot/asymptotics.hpp"
#include "randroot/core_poly.hpp"
#include "randroot/jacobi.hpp"
#include "randroot/kac_rice.hpp"
#include "randroot/montecarlo.hpp"
#include "randroot/quadrature.hpp"

namespace randroot {

using json = nlohmann::json;

inline void to_json(json& j, const PolynomialClass& c) {
  if (c.kind == Family::Gamma)
    j = json{{"kind", "gamma"}, {"gamma", c.gamma}};
  else
    j = json{{"kind", "alphabeta"}, {"alpha", c.alpha}, {"beta", c.beta}};
}

inline void from_json(const json& j, PolynomialClass& c) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "gamma")
    c = PolynomialClass::gamma_family(j.at("gamma").get<double>());
  else if (kind == "alphabeta")
    c = PolynomialClass::alpha_beta(j.at("alpha").get<double>(), j.at("beta").get<double>());
  else
    throw DomainError("unknown polynomial class kind: " + kind);
}

inline void to_json(json& j, const QuadratureResult& r) {
  j = json{{"value", r.value},
           {"abs_error_estimate", r.abs_error_estimate},
           {"evaluations", r.evaluations},
           {"converged", r.converged}};
}

inline void from_json(const json& j, QuadratureResult& r) {
  j.at("value").get_to(r.value);
  j.at("abs_error_estimate").get_to(r.abs_error_estimate);
  j.at("evaluations").get_to(r.evaluations);
  j.at("converged").get_to(r.converged);
}

inline void to_json(json& j, const KacRiceTriple& t) {
  j = json{{"x", t.x}, {"log_M", t.log_M}, {"S1", t.S1}, {"S2", t.S2}, {"log_AMB", t.log_AMB}, {"f", t.f}};
}

inline void from_json(const json& j, KacRiceTriple& t) {
  j.at("x").get_to(t.x);
  j.at("log_M").get_to(t.log_M);
  j.at("S1").get_to(t.S1);
  j.at("S2").get_to(t.S2);
  j.at("log_AMB").get_to(t.log_AMB);
  j.at("f").get_to(t.f);
}

inline void to_json(json& j, const McSummary& s) {
  json hist = json::array();
  for (const auto& [count, freq] : s.histogram) hist.push_back(json{{"count", count}, {"frequency", freq}});
  j = json{{"trials", s.trials},
           {"mean", s.mean},
           {"std_error", s.std_error},
           {"positive_mean", s.positive_mean},
           {"parity_repairs", s.parity_repairs},
           {"redraws", s.redraws},
           {"seed", s.seed},
           {"flagged", s.flagged},
           {"histogram", hist}};
}

inline void from_json(const json& j, McSummary& s) {
  j.at("trials").get_to(s.trials);
  j.at("mean").get_to(s.mean);
  j.at("std_error").get_to(s.std_error);
  j.at("positive_mean").get_to(s.positive_mean);
  j.at("parity_repairs").get_to(s.parity_repairs);
  j.at("redraws").get_to(s.redraws);
  j.at("seed").get_to(s.seed);
  j.at("flagged").get_to(s.flagged);
  s.histogram.clear();
  for (const auto& h : j.at("histogram")) s.histogram[h.at("count").get<int>()] = h.at("frequency").get<long>();
}

inline void to_json(json& j, const BoundsReport& b) {
  j = json{{"n", b.n},           {"alpha", b.alpha}, {"beta", b.beta},
           {"lower", b.lower},   {"upper", b.upper}, {"method", to_string(b.method)},
           {"s_max", b.s_max},   {"proof_covers", b.proof_covers}};
}

inline void from_json(const json& j, BoundsReport& b) {
  j.at("n").get_to(b.n);
  j.at("alpha").get_to(b.alpha);
  j.at("beta").get_to(b.beta);
  j.at("lower").get_to(b.lower);
  j.at("upper").get_to(b.upper);
  const auto m = j.at("method").get<std::string>();
  b.method = m == "jacobi_root"                  ? BoundsMethod::JacobiRoot
             : m == "binomial_closed_form"       ? BoundsMethod::BinomialClosedForm
                                                 : BoundsMethod::UltrasphericalClosedForm;
  j.at("s_max").get_to(b.s_max);
  j.at("proof_covers").get_to(b.proof_covers);
}

inline void to_json(json& j, const ScalingFit& f) {
  j = json{{"class", f.cls},
           {"n_values", f.n_values},
           {"en_values", f.en_values},
           {"slope", f.slope},
           {"intercept", f.intercept},
           {"r_squared", f.r_squared},
           {"max_leading_deviation", f.max_leading_deviation},
           {"regression", f.regression},
           {"complete", f.complete}};
}

inline void from_json(const json& j, ScalingFit& f) {
  j.at("class").get_to(f.cls);
  j.at("n_values").get_to(f.n_values);
  j.at("en_values").get_to(f.en_values);
  j.at("slope").get_to(f.slope);
  j.at("intercept").get_to(f.intercept);
  j.at("r_squared").get_to(f.r_squared);
  j.at("max_leading_deviation").get_to(f.max_leading_deviation);
  j.at("regression").get_to(f.regression);
  j.at("complete").get_to(f.complete);
}

}  // namespace randroot
