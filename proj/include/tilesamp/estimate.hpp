// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file estimate.hpp
/// \brief ConstantEstimate and its JSON form.
///
/// JSON schema (key names are stable):
///
///     {
///       "kind": "sampling" | "interpolation" | "interpolation_dual" |
///               "plancherel_polya" | "multiplier" | "periodized_multiplier" |
///               "product_bound",
///       "set": string, "p": number, "M": int, "s": int,
///       "value": number or the string "inf",
///       "restarts": int, "per_restart_ratios": [number],
///       "iterations": [int], "converged": bool,
///       "quadrature_error": number, "seed": uint64, "flags": [string]
///     }
///
/// Flags: "aliasing" (sampling map has a kernel, value is inf),
/// "not_converged", "approximate_minimizer", "projected" (optimization ran
/// on a proper subspace of the inputs).

#ifndef TILESAMP_ESTIMATE_HPP
#define TILESAMP_ESTIMATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "tilesamp/boyd.hpp"
#include "tilesamp/spectral.hpp"

namespace tilesamp {

enum class EstimateKind {
  sampling,
  interpolation,
  interpolation_dual,
  plancherel_polya,
  multiplier,
  periodized_multiplier,
  product_bound,
};
const char* to_string(EstimateKind kind);
EstimateKind estimate_kind_from_string(const std::string& s);

struct ConstantEstimate {
  EstimateKind kind = EstimateKind::sampling;
  std::string set_name;
  double p = 2.0;
  int M = 0;
  int s = 0;
  double value = 0.0;
  std::vector<double> per_restart_ratios;
  std::vector<int> iterations;
  bool converged = true;
  double quadrature_error = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::string> flags;

  int restarts() const { return static_cast<int>(per_restart_ratios.size()); }
  bool has_flag(const std::string& f) const;
  void add_flag(const std::string& f);
  /// (max - min) / max of the per-restart ratios.
  double spread() const;
};

/// Fills value, per-restart data and the not_converged flag from a run.
ConstantEstimate make_estimate(EstimateKind kind, std::string set_name, double p,
                               const TorusModel& model, const PowerResult& run,
                               std::uint64_t seed);

nlohmann::ordered_json to_json(const ConstantEstimate& e);
ConstantEstimate estimate_from_json(const nlohmann::ordered_json& j);

}  // namespace tilesamp

#endif  // TILESAMP_ESTIMATE_HPP
