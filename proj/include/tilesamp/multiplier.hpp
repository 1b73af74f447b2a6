// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file multiplier.hpp
/// \brief Fourier multipliers F -> m F, their norms on FL^p, the paired
/// sampling/multiplier identity on fundamental domains, and the resolution
/// scan for the ball multiplier.

#ifndef TILESAMP_MULTIPLIER_HPP
#define TILESAMP_MULTIPLIER_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "tilesamp/boyd.hpp"
#include "tilesamp/estimate.hpp"
#include "tilesamp/geometry.hpp"
#include "tilesamp/spectral.hpp"

namespace tilesamp {

/// A bounded real function m on the nodes of a spectral grid; zero off the
/// grid.
class MultiplierSpec {
 public:
  static MultiplierSpec indicator(const RasterizedSet& set);
  static MultiplierSpec function(GridSpec grid, std::vector<double> values, std::string name);

  const GridSpec& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  const std::string& name() const { return name_; }
  bool is_indicator() const { return indicator_; }
  double max_abs() const;

 private:
  MultiplierSpec(GridSpec grid, std::vector<double> values, std::string name, bool indicator);
  GridSpec grid_;
  std::vector<double> values_;
  std::string name_;
  bool indicator_ = false;
};

/// Spectrum multiplied by m; the field keeps its mask. Grids must match.
BandlimitedField apply_multiplier(const MultiplierSpec& m, const BandlimitedField& field);

/// f -> inverse transform of m times the transform of f, on the whole fine
/// grid (L^p -> L^p). Fine frequency i stands for the representative of
/// i mod N in the length-N window centred on the grid box.
LinearMap multiplier_map(const MultiplierSpec& m, const TorusModel& model);

/// Boyd estimate of ||m||_{FL^p -> FL^p} at this resolution. At p = 2
/// restart 0 starts from the plane wave at the largest |m|, so the value is
/// exact.
ConstantEstimate estimate_multiplier_norm(const MultiplierSpec& m, double p,
                                          const TorusModel& model, const OptimizerOptions& opts);

/// c -> f with spectrum chi_K G, G = sum_k c_k e^{i k.xi} (Fl^p -> FL^p):
/// the periodized multiplier. On a mask with one node per class it equals
/// the inverse of sampling composed with c(k) -> a(-k).
LinearMap periodized_multiplier_map(const RasterizedSet& mask, const TorusModel& model);

/// c(k) = a(-k) for each start; pairs the starts of the two routes.
std::vector<ComplexVector> coefficient_starts(const std::vector<ComplexVector>& sample_starts,
                                              const TorusModel& model);

ConstantEstimate estimate_periodized_multiplier_norm(const RasterizedSet& mask, double p,
                                                     const TorusModel& model,
                                                     const OptimizerOptions& opts,
                                                     const std::vector<ComplexVector>& starts = {});

/// Boyd estimate at q = p/(p-1) of the Banach adjoint of the minimal
/// interpolation operator (sampling composed with chi_K). Its norm equals
/// the interpolation constant at p whenever the interpolant is linear
/// (p = 2, or one mask node per class); otherwise throws
/// PreconditionError("nonlinear_interpolant").
ConstantEstimate estimate_interpolation_dual(const RasterizedSet& mask, double p,
                                             const TorusModel& model,
                                             const OptimizerOptions& opts);

struct DualityReport {
  ConstantEstimate at_p;
  ConstantEstimate at_q;
  double relative_gap = 0.0;
  bool agree = false;
};

/// Multiplier norm at p and at the conjugate exponent; for a real m they
/// coincide.
DualityReport multiplier_duality_check(const MultiplierSpec& m, double p, const TorusModel& model,
                                       const OptimizerOptions& opts, double tolerance = 0.05);

struct EquivalenceReport {
  std::string set_name;
  double p = 2.0;
  int M = 0;
  int s = 0;
  TilingVerdict verdict = TilingVerdict::inconclusive;
  ConstantEstimate sampling;
  ConstantEstimate interpolation;
  ConstantEstimate multiplier;          // periodized chi_K
  ConstantEstimate interpolation_dual;  // at the conjugate exponent
  double sampling_vs_multiplier = 0.0;  // relative gap
  double interpolation_vs_dual = 0.0;   // relative gap
  double identity_tolerance = 1e-3;
  double dual_tolerance = 0.05;
  bool agree = false;
};

/// Refuses (PreconditionError "not_fundamental") unless classify_tiling
/// certifies a fundamental domain over resolutions {M, 2M}. Sampling and
/// the periodized multiplier share restarts.
EquivalenceReport equivalence_experiment(const SetSpec& spec, double p, int M,
                                         const OptimizerOptions& opts, int s_override = 0);
nlohmann::ordered_json to_json(const EquivalenceReport& report);

struct ScanRow {
  std::string set_name;
  double p = 2.0;
  int M = 0;
  int s = 0;
  double estimate = 0.0;
  int restarts = 0;
  double spread = 0.0;
  std::string flag;  // "ok" or the estimate flags joined by '|'
};

struct TrendStat {
  std::string set_name;
  double p = 2.0;
  double spearman = 0.0;  // rank correlation of estimate with M
  bool strictly_increasing = false;
  double max_over_min = 1.0;
};

struct FeffermanTable {
  std::vector<ScanRow> rows;  // set-major, then p, then M
  std::vector<TrendStat> trends;
};

struct NamedSet {
  std::string name;
  SetSpec spec;
};

/// chi_K multiplier norms for every (set, p, M). Cells run concurrently;
/// cell i uses seed derive_seed(opts.seed, "cell", i).
FeffermanTable fefferman_scan(const std::vector<NamedSet>& sets, const std::vector<double>& ps,
                              const std::vector<int>& Ms, const OptimizerOptions& opts,
                              int s_override = 0);

/// Spearman rank correlation (average ranks for ties).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace tilesamp

#endif  // TILESAMP_MULTIPLIER_HPP
