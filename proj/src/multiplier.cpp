// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

#include "tilesamp/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "mask_plan.hpp"
#include "tilesamp/fft.hpp"
#include "tilesamp/kernels.hpp"
#include "tilesamp/random.hpp"
#include "tilesamp/sampling.hpp"
#include "tilesamp/set_expr.hpp"

namespace tilesamp {

using detail::MaskPlan;
using detail::make_plan;

MultiplierSpec::MultiplierSpec(GridSpec grid, std::vector<double> values, std::string name,
                               bool indicator)
    : grid_(std::move(grid)), values_(std::move(values)), name_(std::move(name)), indicator_(indicator) {
  grid_.validate();
  if (values_.size() != grid_.node_count())
    throw InvalidArgument("multiplier values do not match the grid");
  for (double v : values_)
    if (!std::isfinite(v)) throw InvalidArgument("multiplier values must be finite");
}

MultiplierSpec MultiplierSpec::indicator(const RasterizedSet& set) {
  std::vector<double> v(set.grid().node_count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = set.at_flat(i) ? 1.0 : 0.0;
  return MultiplierSpec(set.grid(), std::move(v), set.name(), true);
}

MultiplierSpec MultiplierSpec::function(GridSpec grid, std::vector<double> values, std::string name) {
  return MultiplierSpec(std::move(grid), std::move(values), std::move(name), false);
}

double MultiplierSpec::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

BandlimitedField apply_multiplier(const MultiplierSpec& m, const BandlimitedField& field) {
  if (!(m.grid() == field.grid())) throw InvalidArgument("multiplier grid does not match the field");
  ComplexVector F(field.spectrum().begin(), field.spectrum().end());
  for (std::size_t i = 0; i < F.size(); ++i) F[i] *= m.values()[i];
  return BandlimitedField(field.model(), field.mask(), std::move(F));
}

namespace {

double relative_gap(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) return a == b ? 0.0 : std::numeric_limits<double>::infinity();
  return b > 0.0 ? std::abs(a - b) / b : std::abs(a - b);
}

// Signed representative of fine frequency index i on each axis, in the
// window of length N centred on the grid box.
std::vector<std::int64_t> signed_frequency(std::size_t flat, const TorusModel& model,
                                           const GridSpec& grid) {
  const int n = model.dim;
  const std::int64_t N = model.fine_extent();
  std::vector<std::int64_t> out(n);
  for (int a = n; a-- > 0;) {
    const std::int64_t i = static_cast<std::int64_t>(flat % static_cast<std::size_t>(N));
    flat /= static_cast<std::size_t>(N);
    const double centre = 0.5 * (grid.cell_lo[a] + grid.cell_hi[a]) * grid.resolution;
    const std::int64_t lo = static_cast<std::int64_t>(std::ceil(centre - 0.5 * N));
    out[a] = lo + ((i - lo) % N + N) % N;
  }
  return out;
}

// Trigonometric interpolation of a fine-grid vector onto the 2s grid.
ComplexVector upsample(const ComplexVector& x, const TorusModel& model, const GridSpec& grid) {
  const TorusModel fine = model.refined();
  const std::int64_t N2 = fine.fine_extent();
  ComplexVector X(x);
  fft::forward(X, model.fine_extents());
  ComplexVector X2(fine.fine_count());
  for (std::size_t i = 0; i < X.size(); ++i) {
    const auto k = signed_frequency(i, model, grid);
    std::size_t flat = 0;
    for (auto v : k) flat = flat * static_cast<std::size_t>(N2) + static_cast<std::size_t>(((v % N2) + N2) % N2);
    X2[flat] = X[i];
  }
  fft::backward(X2, fine.fine_extents());
  kernels::scale(X2, 1.0 / static_cast<double>(model.fine_count()));
  return X2;
}

ConstantEstimate unavailable_estimate(EstimateKind kind, const RasterizedSet& mask, double p,
                                      const TorusModel& model, std::uint64_t seed,
                                      const std::string& flag) {
  ConstantEstimate e;
  e.kind = kind;
  e.set_name = mask.name();
  e.p = p;
  e.M = model.resolution;
  e.s = model.oversampling;
  e.value = std::numeric_limits<double>::infinity();
  e.seed = seed;
  e.add_flag(flag);
  return e;
}

}  // namespace

LinearMap multiplier_map(const MultiplierSpec& m, const TorusModel& model) {
  const auto pos = fine_positions(model, m.grid());
  auto sym = std::make_shared<std::vector<double>>(model.fine_count(), 0.0);
  for (std::size_t i = 0; i < pos.size(); ++i) (*sym)[pos[i]] = m.values()[i];
  const auto extents = model.fine_extents();
  const double inv_n = 1.0 / static_cast<double>(model.fine_count());

  LinearMap A;
  A.in_dim = A.out_dim = model.fine_count();
  A.in_weight = A.out_weight = model.cell_weight();
  A.apply = [sym, extents, inv_n](std::span<const cdouble> f, std::span<cdouble> out) {
    std::copy(f.begin(), f.end(), out.begin());
    fft::forward(out, extents);
    kernels::multiply(out, *sym);
    fft::backward(out, extents);
    kernels::scale(out, inv_n);
  };
  // B diag(m) F / N^n is self-adjoint for real m.
  A.adjoint = A.apply;
  return A;
}

ConstantEstimate estimate_multiplier_norm(const MultiplierSpec& m, double p,
                                          const TorusModel& model, const OptimizerOptions& opts) {
  require_exponent(p);
  const LinearMap A = multiplier_map(m, model);
  const auto pos = fine_positions(model, m.grid());

  // At p = 2 restart 0 is the plane wave at the largest |m|, an exact
  // maximizer. Elsewhere plane waves are fixed points with ratio |m|, so all
  // restarts are random.
  std::vector<ComplexVector> starts;
  if (p == 2.0) {
    std::size_t peak = 0;
    for (std::size_t i = 1; i < pos.size(); ++i)
      if (std::abs(m.values()[i]) > std::abs(m.values()[peak])) peak = i;
    ComplexVector wave(model.fine_count());
    wave[pos[peak]] = 1.0;
    fft::backward(wave, model.fine_extents());
    starts.push_back(std::move(wave));
  }
  const PowerResult run = boyd_power(A, p, opts, starts);
  ConstantEstimate e = make_estimate(EstimateKind::multiplier, m.name(), p, model, run, opts.seed);
  if (!run.best_input.empty()) {
    const ComplexVector x2 = upsample(run.best_input, model, m.grid());
    const double coarse = norm_ratio(A, run.best_input, p);
    const double fine = norm_ratio(multiplier_map(m, model.refined()), x2, p);
    e.quadrature_error = relative_gap(coarse, fine);
  }
  return e;
}

LinearMap periodized_multiplier_map(const RasterizedSet& mask, const TorusModel& model) {
  auto P = std::make_shared<const MaskPlan>(make_plan(mask, model));
  // Fine spatial index of -k for every lattice point k.
  const auto lattice = lattice_positions(model);
  auto neg = std::make_shared<std::vector<std::size_t>>(lattice.size());
  {
    const int M = model.resolution;
    for (std::size_t k = 0; k < lattice.size(); ++k) {
      std::size_t rest = k, flat = 0, stride = 1;
      for (int a = 0; a < model.dim; ++a) {
        const std::size_t ka = rest % static_cast<std::size_t>(M);
        rest /= static_cast<std::size_t>(M);
        flat += ((static_cast<std::size_t>(M) - ka) % static_cast<std::size_t>(M)) * stride;
        stride *= static_cast<std::size_t>(M);
      }
      (*neg)[k] = lattice[flat];
    }
  }
  LinearMap A;
  A.in_dim = model.lattice_count();
  A.out_dim = model.fine_count();
  A.in_weight = 1.0;
  A.out_weight = model.cell_weight();
  A.apply = [P, neg](std::span<const cdouble> c, std::span<cdouble> f) {
    ComplexVector X(f.size());
    for (std::size_t k = 0; k < c.size(); ++k) X[(*neg)[k]] = c[k];
    fft::forward(X, P->model.fine_extents());
    std::fill(f.begin(), f.end(), cdouble(0.0));
    for (std::size_t t = 0; t < P->fine.size(); ++t) f[P->fine[t]] = X[P->fine[t]];
    fft::backward(f, P->model.fine_extents());
    kernels::scale(f, P->lattice_scale);
  };
  A.adjoint = [P, neg](std::span<const cdouble> y, std::span<cdouble> c) {
    ComplexVector t(y.begin(), y.end());
    fft::forward(t, P->model.fine_extents());
    ComplexVector X(t.size());
    for (std::size_t u = 0; u < P->fine.size(); ++u) X[P->fine[u]] = P->lattice_scale * t[P->fine[u]];
    fft::backward(X, P->model.fine_extents());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = X[(*neg)[k]];
  };
  return A;
}

std::vector<ComplexVector> coefficient_starts(const std::vector<ComplexVector>& sample_starts,
                                              const TorusModel& model) {
  const int M = model.resolution;
  std::vector<ComplexVector> out;
  for (const auto& a : sample_starts) {
    if (a.size() != model.lattice_count()) throw InvalidArgument("start vector size mismatch");
    ComplexVector c(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      std::size_t rest = k, flat = 0, stride = 1;
      for (int d = 0; d < model.dim; ++d) {
        const std::size_t ka = rest % static_cast<std::size_t>(M);
        rest /= static_cast<std::size_t>(M);
        flat += ((static_cast<std::size_t>(M) - ka) % static_cast<std::size_t>(M)) * stride;
        stride *= static_cast<std::size_t>(M);
      }
      c[k] = a[flat];
    }
    out.push_back(std::move(c));
  }
  return out;
}

ConstantEstimate estimate_periodized_multiplier_norm(const RasterizedSet& mask, double p,
                                                     const TorusModel& model,
                                                     const OptimizerOptions& opts,
                                                     const std::vector<ComplexVector>& starts) {
  require_exponent(p);
  const LinearMap A = periodized_multiplier_map(mask, model);
  const PowerResult run = boyd_power(A, p, opts, starts);
  ConstantEstimate e =
      make_estimate(EstimateKind::periodized_multiplier, mask.name(), p, model, run, opts.seed);
  if (!run.best_input.empty()) {
    const double coarse = norm_ratio(A, run.best_input, p);
    const double fine = norm_ratio(periodized_multiplier_map(mask, model.refined()), run.best_input, p);
    e.quadrature_error = relative_gap(coarse, fine);
  }
  return e;
}

ConstantEstimate estimate_interpolation_dual(const RasterizedSet& mask, double p,
                                             const TorusModel& model,
                                             const OptimizerOptions& opts) {
  require_exponent(p);
  const auto table = residue_table(mask);
  if (table.empty_classes > 0)
    throw PreconditionError("coverage_violation",
                            "some residue class contains no mask node; interpolation is impossible");
  if (table.max_multiplicity > 1 && p != 2.0)
    throw PreconditionError("nonlinear_interpolant",
                            "the L^p-minimal interpolant is nonlinear for p != 2 on overlapping "
                            "masks; no dual operator");
  const double q = conjugate_exponent(p);
  const LinearMap D = interpolation_dual_map(mask, model);
  const PowerResult run = boyd_power(D, q, opts);
  ConstantEstimate e =
      make_estimate(EstimateKind::interpolation_dual, mask.name(), q, model, run, opts.seed);
  if (!run.best_input.empty()) {
    // Inputs live on the fine grid; keep only their E_K part for the
    // transfer to 2s (the map ignores everything else).
    const auto F = forward_transform(model, mask.grid(), run.best_input);
    ComplexVector Fk(F.size());
    for (std::size_t i = 0; i < F.size(); ++i)
      if (mask.at_flat(i)) Fk[i] = F[i];
    const auto xk = inverse_transform(model, mask.grid(), Fk);
    const auto x2 = inverse_transform(model.refined(), mask.grid(), Fk);
    const double coarse = norm_ratio(D, xk, q);
    const double fine = norm_ratio(interpolation_dual_map(mask, model.refined()), x2, q);
    e.quadrature_error = relative_gap(coarse, fine);
  }
  return e;
}

DualityReport multiplier_duality_check(const MultiplierSpec& m, double p, const TorusModel& model,
                                       const OptimizerOptions& opts, double tolerance) {
  DualityReport r;
  r.at_p = estimate_multiplier_norm(m, p, model, opts);
  r.at_q = estimate_multiplier_norm(m, conjugate_exponent(p), model, opts);
  r.relative_gap = relative_gap(r.at_p.value, r.at_q.value);
  r.agree = r.relative_gap <= tolerance;
  return r;
}

EquivalenceReport equivalence_experiment(const SetSpec& spec, double p, int M,
                                         const OptimizerOptions& opts, int s_override) {
  require_exponent(p);
  const TilingReport tiling = classify_tiling(spec, {M, 2 * M});
  if (tiling.verdict != TilingVerdict::fundamental)
    throw PreconditionError("not_fundamental",
                            "the equivalence of sampling, interpolation and the chi_K multiplier "
                            "assumes K is a fundamental domain of 2 pi Z^n; tiling verdict: " +
                                std::string(to_string(tiling.verdict)));
  const RasterizedSet mask = rasterize(spec, M);
  const TorusModel model = make_model(mask, s_override);

  EquivalenceReport rep;
  rep.set_name = mask.name();
  rep.p = p;
  rep.M = M;
  rep.s = model.oversampling;
  rep.verdict = tiling.verdict;

  const auto starts = restart_vectors(model.lattice_count(), opts.seed, opts.restarts);
  rep.sampling = estimate_sampling_constant(mask, p, model, opts, starts);
  rep.multiplier =
      estimate_periodized_multiplier_norm(mask, p, model, opts, coefficient_starts(starts, model));
  const auto table = residue_table(mask);
  if (table.empty_classes > 0) {
    rep.interpolation =
        unavailable_estimate(EstimateKind::interpolation, mask, p, model, opts.seed, "coverage_violation");
    rep.interpolation_dual = unavailable_estimate(EstimateKind::interpolation_dual, mask,
                                                  conjugate_exponent(p), model, opts.seed,
                                                  "coverage_violation");
  } else {
    rep.interpolation = estimate_interpolation_constant(mask, p, model, opts, starts);
    if (table.max_multiplicity > 1 && p != 2.0)
      rep.interpolation_dual = unavailable_estimate(EstimateKind::interpolation_dual, mask,
                                                    conjugate_exponent(p), model, opts.seed,
                                                    "nonlinear_interpolant");
    else
      rep.interpolation_dual = estimate_interpolation_dual(mask, p, model, opts);
  }
  rep.sampling_vs_multiplier = relative_gap(rep.sampling.value, rep.multiplier.value);
  rep.interpolation_vs_dual = relative_gap(rep.interpolation.value, rep.interpolation_dual.value);
  rep.agree = rep.sampling_vs_multiplier <= rep.identity_tolerance &&
              rep.interpolation_vs_dual <= rep.dual_tolerance;
  return rep;
}

nlohmann::ordered_json to_json(const EquivalenceReport& r) {
  nlohmann::ordered_json j;
  j["set"] = r.set_name;
  j["p"] = r.p;
  j["M"] = r.M;
  j["s"] = r.s;
  j["tiling_verdict"] = to_string(r.verdict);
  j["sampling"] = to_json(r.sampling);
  j["interpolation"] = to_json(r.interpolation);
  j["periodized_multiplier"] = to_json(r.multiplier);
  j["interpolation_dual"] = to_json(r.interpolation_dual);
  auto num = [](double v) -> nlohmann::ordered_json {
    if (std::isfinite(v)) return v;
    return "inf";
  };
  j["sampling_vs_multiplier"] = num(r.sampling_vs_multiplier);
  j["interpolation_vs_dual"] = num(r.interpolation_vs_dual);
  j["identity_tolerance"] = r.identity_tolerance;
  j["dual_tolerance"] = r.dual_tolerance;
  j["agree"] = r.agree;
  return j;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("spearman needs two equal series");
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t k = i;
      while (k + 1 < idx.size() && v[idx[k + 1]] == v[idx[i]]) ++k;
      const double avg = 0.5 * static_cast<double>(i + k) + 1.0;
      for (std::size_t t = i; t <= k; ++t) r[idx[t]] = avg;
      i = k + 1;
    }
    return r;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

FeffermanTable fefferman_scan(const std::vector<NamedSet>& sets, const std::vector<double>& ps,
                              const std::vector<int>& Ms, const OptimizerOptions& opts,
                              int s_override) {
  for (double p : ps) require_exponent(p);
  if (sets.empty() || ps.empty() || Ms.empty()) throw InvalidArgument("fefferman scan needs sets, p and M");

  struct Cell {
    std::size_t set, p, m;
  };
  std::vector<Cell> cells;
  for (std::size_t a = 0; a < sets.size(); ++a)
    for (std::size_t b = 0; b < ps.size(); ++b)
      for (std::size_t c = 0; c < Ms.size(); ++c) cells.push_back({a, b, c});

  FeffermanTable table;
  table.rows.resize(cells.size());
  const auto n_cells = static_cast<std::int64_t>(cells.size());
#if defined(TILESAMP_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (std::int64_t i = 0; i < n_cells; ++i) {
    const Cell& cell = cells[static_cast<std::size_t>(i)];
    const RasterizedSet mask = rasterize(sets[cell.set].spec, Ms[cell.m]);
    const TorusModel model = make_model(mask, s_override);
    OptimizerOptions cell_opts = opts;
    cell_opts.seed = derive_seed(opts.seed, "cell", static_cast<std::uint64_t>(i));
    const ConstantEstimate e =
        estimate_multiplier_norm(MultiplierSpec::indicator(mask), ps[cell.p], model, cell_opts);
    ScanRow row;
    row.set_name = sets[cell.set].name;
    row.p = ps[cell.p];
    row.M = Ms[cell.m];
    row.s = model.oversampling;
    row.estimate = e.value;
    row.restarts = e.restarts();
    row.spread = e.spread();
    if (e.flags.empty()) {
      row.flag = "ok";
    } else {
      for (const auto& f : e.flags) row.flag += (row.flag.empty() ? "" : "|") + f;
    }
    table.rows[static_cast<std::size_t>(i)] = std::move(row);
  }

  for (std::size_t a = 0; a < sets.size(); ++a) {
    for (std::size_t b = 0; b < ps.size(); ++b) {
      std::vector<std::pair<double, double>> series;  // (M, estimate)
      for (const auto& row : table.rows)
        if (row.set_name == sets[a].name && row.p == ps[b]) series.emplace_back(row.M, row.estimate);
      std::sort(series.begin(), series.end());
      std::vector<double> m_values, est;
      for (const auto& [mv, e] : series) {
        m_values.push_back(mv);
        est.push_back(e);
      }
      // Estimates equal to 1e-12 relative count as ties.
      std::vector<double> ranked = est;
      for (std::size_t i = 0; i < ranked.size(); ++i)
        for (std::size_t k = 0; k < i; ++k)
          if (std::abs(ranked[i] - ranked[k]) <= 1e-12 * std::abs(ranked[k])) ranked[i] = ranked[k];
      TrendStat t;
      t.set_name = sets[a].name;
      t.p = ps[b];
      if (est.size() >= 2) t.spearman = spearman(m_values, ranked);
      t.strictly_increasing = est.size() >= 2;
      for (std::size_t i = 1; i < ranked.size(); ++i)
        if (!(ranked[i] > ranked[i - 1])) t.strictly_increasing = false;
      const auto [lo, hi] = std::minmax_element(est.begin(), est.end());
      t.max_over_min = *lo > 0.0 ? *hi / *lo : 0.0;
      table.trends.push_back(t);
    }
  }
  return table;
}

}  // namespace tilesamp
