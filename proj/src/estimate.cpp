// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

#include "tilesamp/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tilesamp {

namespace {
constexpr std::pair<EstimateKind, const char*> kKindNames[] = {
    {EstimateKind::sampling, "sampling"},
    {EstimateKind::interpolation, "interpolation"},
    {EstimateKind::interpolation_dual, "interpolation_dual"},
    {EstimateKind::plancherel_polya, "plancherel_polya"},
    {EstimateKind::multiplier, "multiplier"},
    {EstimateKind::periodized_multiplier, "periodized_multiplier"},
    {EstimateKind::product_bound, "product_bound"},
};
}  // namespace

const char* to_string(EstimateKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

EstimateKind estimate_kind_from_string(const std::string& s) {
  for (const auto& [k, name] : kKindNames)
    if (s == name) return k;
  throw InvalidArgument("unknown estimate kind '" + s + "'");
}

bool ConstantEstimate::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

void ConstantEstimate::add_flag(const std::string& f) {
  if (!has_flag(f)) flags.push_back(f);
}

double ConstantEstimate::spread() const {
  if (per_restart_ratios.empty() || !(value > 0.0) || !std::isfinite(value)) return 0.0;
  const double lo = *std::min_element(per_restart_ratios.begin(), per_restart_ratios.end());
  return (value - lo) / value;
}

ConstantEstimate make_estimate(EstimateKind kind, std::string set_name, double p,
                               const TorusModel& model, const PowerResult& run,
                               std::uint64_t seed) {
  ConstantEstimate e;
  e.kind = kind;
  e.set_name = std::move(set_name);
  e.p = p;
  e.M = model.resolution;
  e.s = model.oversampling;
  e.value = run.value;
  e.seed = seed;
  for (const auto& t : run.restarts) {
    e.per_restart_ratios.push_back(t.ratio);
    e.iterations.push_back(t.iterations);
  }
  e.converged = run.converged();
  if (!e.converged) e.add_flag("not_converged");
  return e;
}

nlohmann::ordered_json to_json(const ConstantEstimate& e) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(e.kind);
  j["set"] = e.set_name;
  j["p"] = e.p;
  j["M"] = e.M;
  j["s"] = e.s;
  if (std::isinf(e.value))
    j["value"] = "inf";
  else
    j["value"] = e.value;
  j["restarts"] = e.restarts();
  j["per_restart_ratios"] = e.per_restart_ratios;
  j["iterations"] = e.iterations;
  j["converged"] = e.converged;
  j["quadrature_error"] = e.quadrature_error;
  j["seed"] = e.seed;
  j["flags"] = e.flags;
  return j;
}

ConstantEstimate estimate_from_json(const nlohmann::ordered_json& j) {
  ConstantEstimate e;
  e.kind = estimate_kind_from_string(j.at("kind").get<std::string>());
  e.set_name = j.at("set").get<std::string>();
  e.p = j.at("p").get<double>();
  e.M = j.at("M").get<int>();
  e.s = j.at("s").get<int>();
  const auto& v = j.at("value");
  e.value = v.is_string() ? std::numeric_limits<double>::infinity() : v.get<double>();
  e.per_restart_ratios = j.at("per_restart_ratios").get<std::vector<double>>();
  e.iterations = j.at("iterations").get<std::vector<int>>();
  e.converged = j.at("converged").get<bool>();
  e.quadrature_error = j.at("quadrature_error").get<double>();
  e.seed = j.at("seed").get<std::uint64_t>();
  e.flags = j.at("flags").get<std::vector<std::string>>();
  return e;
}

}  // namespace tilesamp
