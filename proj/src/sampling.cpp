// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

#include "tilesamp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>

#include "mask_plan.hpp"
#include "tilesamp/fft.hpp"
#include "tilesamp/kernels.hpp"
#include "tilesamp/random.hpp"
#include "tilesamp/set_expr.hpp"

namespace tilesamp {

using detail::MaskPlan;
using detail::make_plan;

SampleSequence sample_lattice(const BandlimitedField& field) {
  const auto pos = lattice_positions(field.model());
  const auto& f = field.spatial();
  SampleSequence out{field.model(), ComplexVector(pos.size())};
  for (std::size_t k = 0; k < pos.size(); ++k) out.values[k] = f[pos[k]];
  return out;
}

ComplexVector spectrum_from_samples(const TorusModel& model, std::span<const cdouble> samples) {
  if (samples.size() != model.lattice_count()) throw InvalidArgument("sample count mismatch");
  ComplexVector G(samples.begin(), samples.end());
  fft::forward(G, model.lattice_extents());
  return G;
}

namespace {

// f = M^{-n} IFFT_N(scatter of values at the fine positions).
void synthesize(const MaskPlan& P, std::span<const cdouble> node_values, std::span<cdouble> f) {
  std::fill(f.begin(), f.end(), cdouble(0.0));
  for (std::size_t t = 0; t < P.fine.size(); ++t) f[P.fine[t]] = node_values[t];
  fft::backward(f, P.model.fine_extents());
  kernels::scale(f, P.lattice_scale);
}

// Adjoint of synthesize: node values of M^{-n} FFT_N(y).
ComplexVector analyze(const MaskPlan& P, std::span<const cdouble> y) {
  ComplexVector t(y.begin(), y.end());
  fft::forward(t, P.model.fine_extents());
  ComplexVector out(P.fine.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = P.lattice_scale * t[P.fine[i]];
  return out;
}

double relative_gap(double a, double b) { return b > 0.0 ? std::abs(a - b) / b : 0.0; }

// Ratio of the same lattice-indexed input under the map rebuilt at 2s.
template <class Builder>
double lattice_quadrature_error(const Builder& build, const TorusModel& model,
                                const ComplexVector& x, double p) {
  if (x.empty()) return 0.0;
  const double coarse = norm_ratio(build(model), x, p);
  const double fine = norm_ratio(build(model.refined()), x, p);
  return relative_gap(coarse, fine);
}

}  // namespace

// ---------------------------------------------------------------------------

LinearMap sampling_inverse_map(const RasterizedSet& mask, const TorusModel& model) {
  auto P = std::make_shared<const MaskPlan>(make_plan(mask, model));
  if (P->max_multiplicity > 1)
    throw PreconditionError("aliasing",
                            "two mask nodes share a residue class; sampling is not injective");
  LinearMap A;
  A.in_dim = model.lattice_count();
  A.out_dim = model.fine_count();
  A.in_weight = 1.0;
  A.out_weight = model.cell_weight();
  A.apply = [P](std::span<const cdouble> a, std::span<cdouble> f) {
    ComplexVector G(a.begin(), a.end());
    fft::forward(G, P->model.lattice_extents());
    ComplexVector v(P->fine.size());
    for (std::size_t t = 0; t < v.size(); ++t) v[t] = G[P->residue[t]];
    synthesize(*P, v, f);
  };
  A.adjoint = [P](std::span<const cdouble> y, std::span<cdouble> a) {
    const auto v = analyze(*P, y);
    std::fill(a.begin(), a.end(), cdouble(0.0));
    for (std::size_t t = 0; t < v.size(); ++t) a[P->residue[t]] += v[t];
    fft::backward(a, P->model.lattice_extents());
  };
  if (P->empty_classes > 0) {
    A.project = [P](std::span<cdouble> a) {
      fft::forward(a, P->model.lattice_extents());
      for (std::size_t r = 0; r < a.size(); ++r)
        if (P->multiplicity[r] == 0) a[r] = 0.0;
      fft::backward(a, P->model.lattice_extents());
      kernels::scale(a, P->lattice_scale);
    };
  }
  return A;
}

LinearMap plancherel_polya_map(const RasterizedSet& mask, const TorusModel& model) {
  auto P = std::make_shared<const MaskPlan>(make_plan(mask, model));
  auto lattice = std::make_shared<const std::vector<std::size_t>>(lattice_positions(model));
  auto keep = std::make_shared<std::vector<std::uint8_t>>(model.fine_count(), 0);
  for (std::size_t pos : P->fine) (*keep)[pos] = 1;
  const double inv_n = 1.0 / static_cast<double>(model.fine_count());

  LinearMap A;
  A.in_dim = model.fine_count();
  A.out_dim = model.lattice_count();
  A.in_weight = model.cell_weight();
  A.out_weight = 1.0;
  A.apply = [lattice](std::span<const cdouble> f, std::span<cdouble> a) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = f[(*lattice)[k]];
  };
  A.adjoint = [lattice](std::span<const cdouble> a, std::span<cdouble> f) {
    std::fill(f.begin(), f.end(), cdouble(0.0));
    for (std::size_t k = 0; k < a.size(); ++k) f[(*lattice)[k]] = a[k];
  };
  A.project = [P, keep, inv_n](std::span<cdouble> f) {
    fft::forward(f, P->model.fine_extents());
    for (std::size_t i = 0; i < f.size(); ++i)
      if (!(*keep)[i]) f[i] = 0.0;
    fft::backward(f, P->model.fine_extents());
    kernels::scale(f, inv_n);
  };
  return A;
}

LinearMap minimal_interpolation_map(const RasterizedSet& mask, const TorusModel& model) {
  auto P = std::make_shared<const MaskPlan>(make_plan(mask, model));
  if (P->empty_classes > 0)
    throw PreconditionError("coverage_violation",
                            std::to_string(P->empty_classes) +
                                " residue classes contain no mask node; the translates of K "
                                "by 2 pi Z^n do not cover R^n");
  LinearMap A;
  A.in_dim = model.lattice_count();
  A.out_dim = model.fine_count();
  A.in_weight = 1.0;
  A.out_weight = model.cell_weight();
  A.apply = [P](std::span<const cdouble> a, std::span<cdouble> f) {
    ComplexVector G(a.begin(), a.end());
    fft::forward(G, P->model.lattice_extents());
    ComplexVector v(P->fine.size());
    for (std::size_t t = 0; t < v.size(); ++t)
      v[t] = G[P->residue[t]] / static_cast<double>(P->multiplicity[P->residue[t]]);
    synthesize(*P, v, f);
  };
  A.adjoint = [P](std::span<const cdouble> y, std::span<cdouble> a) {
    const auto v = analyze(*P, y);
    std::fill(a.begin(), a.end(), cdouble(0.0));
    for (std::size_t t = 0; t < v.size(); ++t)
      a[P->residue[t]] += v[t] / static_cast<double>(P->multiplicity[P->residue[t]]);
    fft::backward(a, P->model.lattice_extents());
  };
  return A;
}

LinearMap interpolation_dual_map(const RasterizedSet& mask, const TorusModel& model) {
  const LinearMap I = minimal_interpolation_map(mask, model);
  const double w = model.cell_weight();
  LinearMap D;
  D.in_dim = I.out_dim;
  D.out_dim = I.in_dim;
  D.in_weight = w;
  D.out_weight = 1.0;
  D.apply = [adj = I.adjoint, w](std::span<const cdouble> y, std::span<cdouble> a) {
    adj(y, a);
    kernels::scale(a, w);
  };
  D.adjoint = [fwd = I.apply, w](std::span<const cdouble> a, std::span<cdouble> y) {
    fwd(a, y);
    kernels::scale(y, w);
  };
  return D;
}

// ---------------------------------------------------------------------------

ConstantEstimate estimate_sampling_constant(const RasterizedSet& mask, double p,
                                            const TorusModel& model, const OptimizerOptions& opts,
                                            const std::vector<ComplexVector>& starts) {
  require_exponent(p);
  if (mask.count() == 0) throw InvalidArgument("sampling constant of an empty mask");
  const auto table = residue_table(mask);
  if (table.max_multiplicity > 1) {
    ConstantEstimate e;
    e.kind = EstimateKind::sampling;
    e.set_name = mask.name();
    e.p = p;
    e.M = model.resolution;
    e.s = model.oversampling;
    e.value = std::numeric_limits<double>::infinity();
    e.seed = opts.seed;
    e.add_flag("aliasing");
    return e;
  }
  const LinearMap A = sampling_inverse_map(mask, model);
  const PowerResult run = boyd_power(A, p, opts, starts);
  ConstantEstimate e = make_estimate(EstimateKind::sampling, mask.name(), p, model, run, opts.seed);
  if (A.project) e.add_flag("projected");
  e.quadrature_error = lattice_quadrature_error(
      [&](const TorusModel& m) { return sampling_inverse_map(mask, m); }, model, run.best_input, p);
  return e;
}

ConstantEstimate estimate_plancherel_polya(const RasterizedSet& mask, double p,
                                           const TorusModel& model, const OptimizerOptions& opts) {
  require_exponent(p);
  if (mask.count() == 0) throw InvalidArgument("Plancherel-Polya constant of an empty mask");
  const LinearMap A = plancherel_polya_map(mask, model);
  const PowerResult run = boyd_power(A, p, opts);
  ConstantEstimate e =
      make_estimate(EstimateKind::plancherel_polya, mask.name(), p, model, run, opts.seed);
  if (!run.best_input.empty()) {
    // The best input lies in E_K, so it transfers exactly to the 2s grid.
    const TorusModel fine = model.refined();
    const auto F = forward_transform(model, mask.grid(), run.best_input);
    const auto x2 = inverse_transform(fine, mask.grid(), F);
    e.quadrature_error =
        relative_gap(norm_ratio(A, run.best_input, p), norm_ratio(plancherel_polya_map(mask, fine), x2, p));
  }
  return e;
}

ConstantEstimate estimate_interpolation_constant(const RasterizedSet& mask, double p,
                                                 const TorusModel& model,
                                                 const OptimizerOptions& opts,
                                                 const std::vector<ComplexVector>& starts) {
  require_exponent(p);
  const auto table = residue_table(mask);
  if (table.empty_classes > 0)
    throw PreconditionError("coverage_violation",
                            std::to_string(table.empty_classes) +
                                " residue classes contain no mask node; the translates of K by "
                                "2 pi Z^n do not cover R^n, so interpolation is impossible");
  if (table.max_multiplicity == 1) {
    // One node per class: the interpolant is unique and equals the
    // inverse of sampling.
    const LinearMap A = sampling_inverse_map(mask, model);
    const PowerResult run = boyd_power(A, p, opts, starts);
    ConstantEstimate e =
        make_estimate(EstimateKind::interpolation, mask.name(), p, model, run, opts.seed);
    e.quadrature_error = lattice_quadrature_error(
        [&](const TorusModel& m) { return sampling_inverse_map(mask, m); }, model, run.best_input, p);
    return e;
  }

  const LinearMap A = minimal_interpolation_map(mask, model);
  const PowerResult run = boyd_power(A, p, opts, starts);
  ConstantEstimate e =
      make_estimate(EstimateKind::interpolation, mask.name(), p, model, run, opts.seed);
  e.quadrature_error = lattice_quadrature_error(
      [&](const TorusModel& m) { return minimal_interpolation_map(mask, m); }, model, run.best_input, p);
  if (p != 2.0) {
    // The l^2-minimal interpolant is not L^p-minimal: rescore every
    // restart's best sequence with the IRLS interpolant.
    e.value = 0.0;
    for (std::size_t r = 0; r < run.restarts.size(); ++r) {
      const auto& a = run.restarts[r].best_input;
      if (a.empty()) continue;
      const auto F = minimal_interpolant(mask, model, a, p);
      const auto f = inverse_transform(model, mask.grid(), F);
      const double ratio = lp_norm(model, f, p) / lp_norm_samples(a, p);
      e.per_restart_ratios[r] = ratio;
      e.value = std::max(e.value, ratio);
    }
    e.add_flag("approximate_minimizer");
  }
  return e;
}

ComplexVector minimal_interpolant(const RasterizedSet& mask, const TorusModel& model,
                                  std::span<const cdouble> samples, double p, int iterations) {
  require_exponent(p);
  const MaskPlan P = make_plan(mask, model);
  if (P.empty_classes > 0)
    throw PreconditionError("coverage_violation", "some residue class contains no mask node");
  const ComplexVector G = spectrum_from_samples(model, samples);
  const std::size_t nn = P.node.size();
  ComplexVector F0(nn);
  for (std::size_t t = 0; t < nn; ++t)
    F0[t] = G[P.residue[t]] / static_cast<double>(P.multiplicity[P.residue[t]]);

  auto to_grid = [&](const ComplexVector& v) {
    ComplexVector out(mask.grid().node_count());
    for (std::size_t t = 0; t < nn; ++t) out[P.node[t]] = v[t];
    return out;
  };
  if (p == 2.0 || P.max_multiplicity == 1) return to_grid(F0);

  const std::size_t fine_n = model.fine_count();
  auto synth = [&](const ComplexVector& v) {
    ComplexVector f(fine_n);
    synthesize(P, v, f);
    return f;
  };
  // Per-class mean removal: orthogonal projector onto the interpolation
  // null space.
  auto null_project = [&](ComplexVector& v) {
    ComplexVector mean(P.multiplicity.size());
    for (std::size_t t = 0; t < nn; ++t) mean[P.residue[t]] += v[t];
    for (std::size_t t = 0; t < nn; ++t)
      v[t] -= mean[P.residue[t]] / static_cast<double>(P.multiplicity[P.residue[t]]);
  };
  auto dot = [](const ComplexVector& a, const ComplexVector& b) {
    cdouble s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s.real();
  };

  ComplexVector best = F0;
  double best_norm = lp_norm(model, synth(F0), p);
  ComplexVector u(nn);  // F = F0 + u, u in the null space
  std::vector<double> w(fine_n);
  for (int it = 0; it < iterations; ++it) {
    ComplexVector F = F0;
    for (std::size_t t = 0; t < nn; ++t) F[t] += u[t];
    const ComplexVector f = synth(F);
    const double peak = kernels::max_abs(f);
    if (peak == 0.0) break;
    for (std::size_t i = 0; i < fine_n; ++i)
      w[i] = std::pow(std::max(std::abs(f[i]), 1e-8 * peak), p - 2.0);

    // CG on  Q u = b,  Q = Z A^H W A Z,  b = -Z A^H W A F0.
    auto Q = [&](const ComplexVector& v) {
      ComplexVector y = synth(v);
      for (std::size_t i = 0; i < fine_n; ++i) y[i] *= w[i];
      ComplexVector out = analyze(P, y);
      null_project(out);
      return out;
    };
    ComplexVector b = Q(F0);
    for (auto& v : b) v = -v;
    null_project(u);
    ComplexVector Qu = Q(u);
    ComplexVector r(nn), d(nn);
    for (std::size_t t = 0; t < nn; ++t) r[t] = b[t] - Qu[t];
    d = r;
    double rr = dot(r, r);
    const double bb = std::max(dot(b, b), 1e-300);
    for (int k = 0; k < 200 && rr > 1e-24 * bb; ++k) {
      const ComplexVector Qd = Q(d);
      const double dQd = dot(d, Qd);
      if (dQd <= 0.0) break;
      const double alpha = rr / dQd;
      for (std::size_t t = 0; t < nn; ++t) {
        u[t] += alpha * d[t];
        r[t] -= alpha * Qd[t];
      }
      const double rr_new = dot(r, r);
      const double beta = rr_new / rr;
      rr = rr_new;
      for (std::size_t t = 0; t < nn; ++t) d[t] = r[t] + beta * d[t];
    }

    ComplexVector next = F0;
    for (std::size_t t = 0; t < nn; ++t) next[t] += u[t];
    const double norm = lp_norm(model, synth(next), p);
    const bool improved = norm < best_norm * (1.0 - 1e-12);
    if (norm < best_norm) {
      best_norm = norm;
      best = next;
    }
    if (!improved) break;
  }
  return to_grid(best);
}

// ---------------------------------------------------------------------------

namespace {

// Grid nodes within `reach` cells (centre to centre) of a mask node. `grid`
// contains the mask grid.
std::vector<std::uint8_t> dilate_nodes(const RasterizedSet& mask, const GridSpec& grid, double reach) {
  const int n = grid.dim();
  const int r = static_cast<int>(std::floor(reach + 1e-12));
  std::vector<std::vector<int>> offsets;
  std::vector<int> d(n, -r);
  while (true) {
    double d2 = 0.0;
    for (int v : d) d2 += static_cast<double>(v) * v;
    if (d2 <= reach * reach + 1e-12) offsets.push_back(d);
    int a = n - 1;
    while (a >= 0 && d[a] == r) d[a--] = -r;
    if (a < 0) break;
    ++d[a];
  }
  std::vector<std::uint8_t> out(grid.node_count(), 0);
  std::vector<int> j(n);
  for (std::size_t i = 0; i < mask.grid().node_count(); ++i) {
    if (!mask.at_flat(i)) continue;
    const auto node = node_of_flat(mask.grid(), i);
    for (const auto& o : offsets) {
      for (int a = 0; a < n; ++a) j[a] = node[a] + o[a];
      const auto flat = flat_node_index(grid, j);
      if (flat >= 0) out[static_cast<std::size_t>(flat)] = 1;
    }
  }
  return out;
}

GridSpec padded_grid(const GridSpec& base, double margin) {
  const int pad = static_cast<int>(std::ceil(margin / kTwoPi));
  GridSpec grid = base;
  for (int a = 0; a < base.dim(); ++a) {
    grid.cell_lo[a] -= pad;
    grid.cell_hi[a] += pad;
  }
  return grid;
}

}  // namespace

Bump make_bump(const RasterizedSet& mask, const BumpSpec& spec) {
  if (!(spec.margin >= 0.0) || !std::isfinite(spec.margin))
    throw InvalidArgument("bump margin must be finite and >= 0");
  if (spec.order < 0) throw InvalidArgument("bump order must be >= 0");
  const GridSpec& base = mask.grid();
  const int n = base.dim();
  GridSpec grid = padded_grid(base, spec.margin);
  const double delta = grid.spacing();
  const auto ext = grid.node_extent();
  const std::size_t count = grid.node_count();

  // Indicator of K dilated by margin/2 (distances between cell centres).
  const auto half = dilate_nodes(mask, grid, 0.5 * spec.margin / delta);
  std::vector<double> phi(half.begin(), half.end());
  const auto in_k = dilate_nodes(mask, grid, 0.0);

  // Box averages of half-width h cells along each axis.
  const int h = spec.order > 0
                    ? static_cast<int>(std::floor(spec.margin /
                                                  (2.0 * spec.order * std::sqrt(double(n)) * delta) +
                                                  1e-12))
                    : 0;
  if (h > 0) {
    std::vector<double> tmp(count);
    for (int pass = 0; pass < spec.order; ++pass) {
      for (int a = 0; a < n; ++a) {
        std::size_t stride = 1;
        for (int b = a + 1; b < n; ++b) stride *= static_cast<std::size_t>(ext[b]);
        const int len = ext[a];
        for (std::size_t i = 0; i < count; ++i) {
          const int pos = static_cast<int>((i / stride) % static_cast<std::size_t>(len));
          double s = 0.0;
          for (int o = -h; o <= h; ++o) {
            const int q = pos + o;
            if (q >= 0 && q < len)
              s += phi[static_cast<std::size_t>(static_cast<std::int64_t>(i) +
                                                static_cast<std::int64_t>(o) *
                                                    static_cast<std::int64_t>(stride))];
          }
          tmp[i] = s / (2 * h + 1);
        }
        phi.swap(tmp);
      }
    }
  }
  std::vector<std::uint8_t> support(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    if (in_k[i] || std::abs(phi[i] - 1.0) < 1e-12) phi[i] = 1.0;
    if (phi[i] < 1e-14) phi[i] = 0.0;
    support[i] = phi[i] > 0.0 ? 1 : 0;
  }
  std::string name = "bump(" + mask.name() + ";" + format_number(spec.margin) + ";" +
                     std::to_string(spec.order) + ")";
  return Bump{raster_from_mask(std::move(grid), std::move(support), std::move(name)),
              std::move(phi)};
}

BandlimitedField reconstruct_from_samples(const SampleSequence& samples, const RasterizedSet& mask,
                                          const BumpSpec& spec) {
  const Bump bump = make_bump(mask, spec);
  // Checked on K + B(0, margin) itself: on coarse grids phi may not reach it.
  const GridSpec grid = padded_grid(mask.grid(), spec.margin);
  const auto table = residue_table(raster_from_mask(
      grid, dilate_nodes(mask, grid, spec.margin / grid.spacing()), "dilation"));
  if (table.max_multiplicity > 1)
    throw PreconditionError("dilated_overlap",
                            "the translates of K + B(0, " + format_number(spec.margin) +
                                ") by 2 pi Z^n overlap; phi G does not determine F");
  const TorusModel& model = samples.model;
  const ComplexVector G = spectrum_from_samples(model, samples.values);
  const auto res = node_residues(bump.support.grid());
  ComplexVector F(bump.phi.size());
  for (std::size_t i = 0; i < F.size(); ++i)
    if (bump.support.at_flat(i)) F[i] = bump.phi[i] * G[res[i]];
  return BandlimitedField(model, bump.support, std::move(F));
}

LinearMap product_map(const Bump& bump, const TorusModel& model) {
  auto P = std::make_shared<const MaskPlan>(make_plan(bump.support, model));
  auto phi = std::make_shared<std::vector<double>>();
  for (std::size_t i : P->node) phi->push_back(bump.phi[i]);
  LinearMap A;
  A.in_dim = model.lattice_count();
  A.out_dim = model.fine_count();
  A.in_weight = 1.0;
  A.out_weight = model.cell_weight();
  A.apply = [P, phi](std::span<const cdouble> c, std::span<cdouble> f) {
    ComplexVector G(c.begin(), c.end());
    fft::backward(G, P->model.lattice_extents());
    ComplexVector v(P->fine.size());
    for (std::size_t t = 0; t < v.size(); ++t) v[t] = (*phi)[t] * G[P->residue[t]];
    synthesize(*P, v, f);
  };
  A.adjoint = [P, phi](std::span<const cdouble> y, std::span<cdouble> c) {
    const auto v = analyze(*P, y);
    std::fill(c.begin(), c.end(), cdouble(0.0));
    for (std::size_t t = 0; t < v.size(); ++t) c[P->residue[t]] += (*phi)[t] * v[t];
    fft::forward(c, P->model.lattice_extents());
  };
  return A;
}

TorusModel bump_model(const Bump& bump, int s_override) {
  return make_model(bump.support, s_override);
}

ConstantEstimate estimate_product_bound(const Bump& bump, double p, const TorusModel& model,
                                        const OptimizerOptions& opts) {
  require_exponent(p);
  const LinearMap A = product_map(bump, model);
  const PowerResult run = boyd_power(A, p, opts);
  ConstantEstimate e =
      make_estimate(EstimateKind::product_bound, bump.support.name(), p, model, run, opts.seed);
  e.quadrature_error = lattice_quadrature_error(
      [&](const TorusModel& m) { return product_map(bump, m); }, model, run.best_input, p);
  return e;
}

// ---------------------------------------------------------------------------

AliasingWitness aliasing_witness(const RasterizedSet& mask, const TorusModel& model,
                                 std::span<const int> k0) {
  const GridSpec& grid = mask.grid();
  const int n = grid.dim();
  if (static_cast<int>(k0.size()) != n) throw InvalidArgument("k0 has the wrong dimension");
  if (std::all_of(k0.begin(), k0.end(), [](int v) { return v == 0; }))
    throw InvalidArgument("k0 must be nonzero");
  const int M = grid.resolution;
  const std::size_t count = grid.node_count();

  // Overlap region: j in K and j + M k0 in K.
  std::vector<std::uint8_t> overlap(count, 0);
  std::vector<int> j2(n);
  bool any = false;
  for (std::size_t i = 0; i < count; ++i) {
    if (!mask.at_flat(i)) continue;
    const auto j = node_of_flat(grid, i);
    for (int a = 0; a < n; ++a) j2[a] = j[a] + M * k0[a];
    if (mask.at(j2)) {
      overlap[i] = 1;
      any = true;
    }
  }
  if (!any)
    throw PreconditionError("no_overlap",
                            "K and its translate by 2 pi k0 share no grid cell; the overlap "
                            "condition holds and there is no aliasing witness");

  auto inside = [&](const std::vector<int>& j) {
    const auto flat = flat_node_index(grid, j);
    return flat >= 0 && overlap[static_cast<std::size_t>(flat)];
  };
  // Squared distance (in nodes) from node j to the nearest node outside
  // the overlap region, by growing Chebyshev shells.
  auto clearance = [&](const std::vector<int>& j) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> d(n), q(n);
    for (int r = 1;; ++r) {
      if (static_cast<double>(r) * r >= best) break;
      std::fill(d.begin(), d.end(), -r);
      while (true) {
        int cheb = 0;
        double d2 = 0.0;
        for (int a = 0; a < n; ++a) {
          cheb = std::max(cheb, std::abs(d[a]));
          d2 += static_cast<double>(d[a]) * d[a];
        }
        if (cheb == r && d2 < best) {
          for (int a = 0; a < n; ++a) q[a] = j[a] + d[a];
          if (!inside(q)) best = d2;
        }
        int a = n - 1;
        while (a >= 0 && d[a] == r) d[a--] = -r;
        if (a < 0) break;
        ++d[a];
      }
    }
    return best;
  };

  double best = -1.0;
  std::vector<int> centre;
  for (std::size_t i = 0; i < count; ++i) {
    if (!overlap[i]) continue;
    const auto j = node_of_flat(grid, i);
    const double c = clearance(j);
    if (c > best) {
      best = c;
      centre = j;
    }
  }

  ComplexVector Fgen(count), Fg(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!overlap[i]) continue;
    const auto j = node_of_flat(grid, i);
    double d2 = 0.0;
    for (int a = 0; a < n; ++a) d2 += static_cast<double>(j[a] - centre[a]) * (j[a] - centre[a]);
    if (d2 >= best) continue;
    Fgen[i] = 1.0;
    Fg[i] -= 1.0;
    for (int a = 0; a < n; ++a) j2[a] = j[a] + M * k0[a];
    Fg[static_cast<std::size_t>(flat_node_index(grid, j2))] += 1.0;
  }
  return AliasingWitness{BandlimitedField(model, mask, std::move(Fg)),
                         BandlimitedField(model, mask, std::move(Fgen)),
                         std::vector<int>(k0.begin(), k0.end()), std::sqrt(best) * grid.spacing()};
}

AliasingWitness aliasing_witness(const RasterizedSet& mask, const TorusModel& model) {
  std::optional<AliasingWitness> best;
  for (const auto& k : candidate_shifts(mask.dim(), mask.diameter())) {
    try {
      auto w = aliasing_witness(mask, model, k);
      if (!best || w.radius > best->radius) best.emplace(std::move(w));
    } catch (const PreconditionError&) {
    }
  }
  if (!best)
    throw PreconditionError("no_overlap",
                            "no translate of K by 2 pi Z^n shares a grid cell with K; there is "
                            "no aliasing witness");
  return std::move(*best);
}

// ---------------------------------------------------------------------------

RasterizedSet shannon_mask(double omega, double h, int M) {
  if (!(omega > 0.0) || !(h > 0.0)) throw InvalidArgument("shannon: omega and h must be positive");
  const double half = omega * h;
  return rasterize(SetSpec::cube({0.0}, 2.0 * half), M);
}

namespace {

void require_nyquist(double omega, double h) {
  if (h > kPi / omega * (1.0 + 1e-12))
    throw PreconditionError("sub_nyquist", "h = " + format_number(h) + " exceeds pi / omega = " +
                                               format_number(kPi / omega) +
                                               "; sampling at h Z is below the Nyquist rate");
}

}  // namespace

ShannonReport shannon_1d(std::span<const cdouble> spectrum, double omega, double h, int M) {
  require_nyquist(omega, h);
  const RasterizedSet mask = shannon_mask(omega, h, M);
  if (spectrum.size() != mask.count())
    throw InvalidArgument("shannon: expected " + std::to_string(mask.count()) +
                          " spectral values (one per node of K')");
  const TorusModel model = make_model(mask);
  ComplexVector F(mask.grid().node_count());
  std::size_t t = 0;
  for (std::size_t i = 0; i < F.size(); ++i)
    if (mask.at_flat(i)) F[i] = spectrum[t++];
  const BandlimitedField field(model, mask, std::move(F));
  const SampleSequence samples = sample_lattice(field);

  ShannonReport rep;
  rep.omega = omega;
  rep.h = h;
  rep.M = M;
  // f(x) = g(x / h): ||f||_2 = sqrt(h) ||g||_2 and sqrt(h) f(kh) = sqrt(h) g(k).
  rep.field_norm = std::sqrt(h) * lp_norm(field, 2.0);
  rep.sample_norm = std::sqrt(h) * lp_norm_samples(samples.values, 2.0);
  rep.isometry_error = rep.field_norm > 0.0
                           ? std::abs(rep.sample_norm - rep.field_norm) / rep.field_norm
                           : 0.0;
  const BandlimitedField rec = reconstruct_from_samples(samples, mask, BumpSpec{0.0, 0});
  ComplexVector diff = rec.spatial();
  const auto& f = field.spatial();
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= f[i];
  const double base = lp_norm(model, f, 2.0);
  rep.reconstruction_error = base > 0.0 ? lp_norm(model, diff, 2.0) / base : 0.0;
  return rep;
}

ShannonReport shannon_1d(double omega, double h, int M, std::uint64_t seed) {
  require_nyquist(omega, h);
  const RasterizedSet mask = shannon_mask(omega, h, M);
  const ComplexVector values = random_complex_vector(mask.count(), derive_seed(seed, "field"));
  return shannon_1d(values, omega, h, M);
}

AliasingWitness shannon_aliasing(double omega, double h, int M) {
  const RasterizedSet mask = shannon_mask(omega, h, M);
  const int k0 = 1;
  return aliasing_witness(mask, make_model(mask), std::span<const int>(&k0, 1));
}

}  // namespace tilesamp
