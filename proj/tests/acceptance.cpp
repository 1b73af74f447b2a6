// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance checks. Prints one PASS/FAIL line per criterion; with
// --criterion N runs only criterion N. Exit status is nonzero on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tilesamp/geometry.hpp"
#include "tilesamp/kernels.hpp"
#include "tilesamp/multiplier.hpp"
#include "tilesamp/random.hpp"
#include "tilesamp/sampling.hpp"
#include "tilesamp/set_expr.hpp"

using namespace tilesamp;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void check(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
    pass = pass && ok;
  }
};

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t negate_index(std::size_t k, int M, int dim) {
  std::size_t rest = k, flat = 0, stride = 1;
  for (int a = 0; a < dim; ++a) {
    const std::size_t ka = rest % static_cast<std::size_t>(M);
    rest /= static_cast<std::size_t>(M);
    flat += ((static_cast<std::size_t>(M) - ka) % static_cast<std::size_t>(M)) * stride;
    stride *= static_cast<std::size_t>(M);
  }
  return flat;
}

// 1. Tiling certificates.
Outcome tiling_certificates() {
  Outcome out;
  const std::vector<int> Ms{16, 32, 64};
  const auto t0 = std::chrono::steady_clock::now();
  const TilingReport cube = classify_tiling(parse_set("cube(0,0;2pi)"), Ms);
  const TilingReport k = classify_tiling(SetSpec::counterexample_k(), Ms);
  const TilingReport big = classify_tiling(parse_set("ball(0,0;3pi/2)"), Ms);
  const TilingReport small = classify_tiling(parse_set("ball(0,0;pi)"), Ms);
  const double elapsed = seconds_since(t0);
  out.check(cube.verdict == TilingVerdict::fundamental, std::string("cube ") + to_string(cube.verdict));
  out.check(k.verdict == TilingVerdict::fundamental, std::string("counterexampleK ") + to_string(k.verdict));
  out.check(big.verdict == TilingVerdict::overlap_violation,
            std::string("ball 3pi/2 ") + to_string(big.verdict));
  out.check(small.verdict == TilingVerdict::coverage_violation,
            std::string("ball pi ") + to_string(small.verdict));
  bool zeros = true;
  for (const auto* r : {&cube, &k})
    for (const auto& l : r->levels) zeros = zeros && l.overlap_total == 0.0 && l.coverage_gap == 0.0;
  out.check(zeros, "fundamental domains: overlap 0, gap 0");
  const double gap = 4.0 * kPi * kPi - kPi * kPi * kPi;
  double worst = 0.0;
  bool within = true;
  for (const auto& l : small.levels) {
    const double rel = std::abs(l.coverage_gap - gap) / gap;
    worst = std::max(worst, rel * l.resolution);
    within = within && rel <= 3.0 / l.resolution;
  }
  out.check(within, "ball gap vs 4pi^2 - pi^3, max M*rel = " + num(worst) + " (<= 3)");
  out.check(elapsed < 10.0, "runtime " + num(elapsed) + " s");
  return out;
}

// 2. Poisson identity.
Outcome poisson_identity() {
  Outcome out;
  for (const char* text : {"cube(0,0;2pi)", "counterexampleK", "ball(0,0;3pi/2)"}) {
    const RasterizedSet mask = rasterize(parse_set(text), 16);
    const TorusModel model = make_model(mask);
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 100; ++t) {
      const BandlimitedField f = random_bandlimited(derive_seed(2, "trial", t), mask, model);
      const SampleSequence a = sample_lattice(f);
      const PeriodicSpectrum per = periodize(f);
      double err = 0.0;
      for (std::size_t k = 0; k < per.c.size(); ++k)
        err = std::max(err, std::abs(per.c[k] - a.values[negate_index(k, 16, 2)]));
      worst = std::max(worst, err / kernels::max_abs(f.spatial()));
    }
    out.check(worst < 1e-10, std::string(text) + " max rel " + num(worst));
  }
  return out;
}

// 3. p = 2 isometry on fundamental domains.
Outcome p2_isometry() {
  Outcome out;
  for (const char* text : {"cube(0,0;2pi)", "counterexampleK"}) {
    double worst = 0.0;
    for (int M : {8, 16, 32}) {
      const RasterizedSet mask = rasterize(parse_set(text), M);
      const auto e = estimate_sampling_constant(mask, 2.0, make_model(mask), OptimizerOptions{});
      worst = std::max(worst, std::abs(e.value - 1.0));
    }
    out.check(worst <= 1e-6, std::string(text) + " max |C - 1| = " + num(worst));
  }
  return out;
}

// 4. Aliasing witness.
Outcome aliasing_witness_check() {
  Outcome out;
  const RasterizedSet mask = rasterize(parse_set("ball(0,0;3pi/2)"), 16);
  const TorusModel model = make_model(mask);
  for (int pass = 0; pass < 2; ++pass) {
    const AliasingWitness w = pass == 0 ? aliasing_witness(mask, model, std::vector<int>{1, 0})
                                        : aliasing_witness(mask, model);
    const double gmax = kernels::max_abs(w.field.spatial());
    const double smax = kernels::max_abs(sample_lattice(w.field).values);
    const double l2 = lp_norm(w.field, 2.0);
    const std::string tag = pass == 0 ? "k0=(1,0)" : "searched k0";
    out.check(smax < 1e-12 * gmax, tag + " max|g(k)|/max|g| = " + num(smax / gmax));
    out.check(l2 > 0.0, tag + " ||g||_2 = " + num(l2));
  }
  return out;
}

// 5. Reconstruction.
Outcome reconstruction() {
  Outcome out;
  const RasterizedSet mask = rasterize(parse_set("cube(0.25,0.25;2pi-0.5)"), 16);
  const TorusModel model = make_model(mask);
  const BumpSpec bump{0.2, 2};
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const BandlimitedField f = random_bandlimited(derive_seed(5, "trial", seed), mask, model);
    const BandlimitedField g = reconstruct_from_samples(sample_lattice(f), mask, bump);
    double num2 = 0.0, den = 0.0;
    for (std::size_t i = 0; i < f.spatial().size(); ++i) {
      num2 += std::norm(g.spatial()[i] - f.spatial()[i]);
      den += std::norm(f.spatial()[i]);
    }
    worst = std::max(worst, std::sqrt(num2 / den));
  }
  out.check(worst < 1e-10, "max relative L2 error " + num(worst));
  return out;
}

// 6. Paired identity on fundamental domains.
Outcome paired_identity() {
  Outcome out;
  OptimizerOptions o;
  o.seed = 6;
  for (const char* text : {"cube(0,0;2pi)", "counterexampleK"}) {
    for (double p : {1.5, 3.0, 4.0}) {
      const EquivalenceReport r = equivalence_experiment(parse_set(text), p, 16, o);
      out.check(r.sampling_vs_multiplier <= 1e-3,
                std::string(text) + " p=" + num(p) + " C_samp=" + num(r.sampling.value) +
                    " N_mult=" + num(r.multiplier.value) + " gap " + num(r.sampling_vs_multiplier));
      out.check(r.interpolation_vs_dual <= 0.05,
                std::string(text) + " p=" + num(p) + " C_interp=" + num(r.interpolation.value) +
                    " dual=" + num(r.interpolation_dual.value) + " gap " + num(r.interpolation_vs_dual));
    }
  }
  return out;
}

// 7. Resolution trend of the ball and cube multipliers.
Outcome fefferman_trend() {
  Outcome out;
  const std::vector<NamedSet> sets{{"ball", parse_set("ball(0,0;pi)")},
                                   {"cube", parse_set("cube(-pi,-pi;2pi)")}};
  const auto t0 = std::chrono::steady_clock::now();
  OptimizerOptions o;
  o.seed = 7;
  const FeffermanTable t = fefferman_scan(sets, {2.0, 4.0}, {8, 16, 32, 64}, o);
  const double elapsed = seconds_since(t0);
  double p2 = 0.0;
  std::string ball4, cube4;
  for (const auto& r : t.rows) {
    if (r.p == 2.0) p2 = std::max(p2, std::abs(r.estimate - 1.0));
    if (r.p == 4.0) (r.set_name == "ball" ? ball4 : cube4) += " " + num(r.estimate);
  }
  for (const auto& tr : t.trends) {
    if (tr.p != 4.0) continue;
    if (tr.set_name == "ball")
      out.check(tr.strictly_increasing && tr.spearman == 1.0,
                "ball p=4 strictly increasing, Spearman " + num(tr.spearman) + ":" + ball4);
    else
      out.check(tr.max_over_min <= 1.1, "cube p=4 max/min " + num(tr.max_over_min) + " (<= 1.1):" + cube4);
  }
  out.check(p2 <= 1e-8, "p=2 cells max |N - 1| = " + num(p2));
  out.check(elapsed < 600.0, "scan runtime " + num(elapsed) + " s");
  return out;
}

// 8. Shannon baseline.
Outcome shannon() {
  Outcome out;
  for (double omega : {kPi, 2.0, 0.75 * kPi}) {
    const ShannonReport r = shannon_1d(omega, kPi / omega, 32, 8);
    out.check(r.isometry_error < 1e-10, "omega=" + num(omega) + " isometry error " + num(r.isometry_error));
  }
  bool refused = false;
  try {
    (void)shannon_1d(kPi, 1.01, 32, 8);
  } catch (const PreconditionError& e) {
    refused = e.condition() == "sub_nyquist";
  }
  out.check(refused, "h > pi/omega refused as sub-Nyquist");
  const AliasingWitness w = shannon_aliasing(0.9 * kPi, 1.25, 32);
  const double gmax = kernels::max_abs(w.field.spatial());
  const double smax = kernels::max_abs(sample_lattice(w.field).values);
  out.check(gmax > 0.0 && smax < 1e-12 * gmax, "witness at h > pi/omega, max|g(k)|/max|g| = " + num(smax / gmax));
  return out;
}

// 9. Optimizer soundness on small grids.
Outcome optimizer_soundness() {
  Outcome out;
  struct Case {
    std::string name;
    LinearMap map;
  };
  std::vector<Case> cases;
  const RasterizedSet cube = rasterize(parse_set("cube(0,0;2pi)"), 4);
  cases.push_back({"sampling cube", sampling_inverse_map(cube, make_model(cube))});
  const RasterizedSet k = rasterize(SetSpec::counterexample_k(), 4);
  cases.push_back({"sampling counterexampleK", sampling_inverse_map(k, make_model(k))});
  const RasterizedSet disc = rasterize(parse_set("ball(pi,pi;2)"), 4);
  const TorusModel small{2, 4, 1};
  cases.push_back({"chi_ball", multiplier_map(MultiplierSpec::indicator(disc), small)});
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> m(disc.grid().node_count());
  for (auto& v : m) v = u(rng);
  cases.push_back({"random m", multiplier_map(MultiplierSpec::function(disc.grid(), m, "m"), small)});

  OptimizerOptions o;
  o.max_iterations = 5000;
  o.tolerance = 1e-13;
  std::normal_distribution<double> g;
  for (const auto& c : cases) {
    const double sigma = oracle::weighted_sigma_max(c.map);
    const double at2 = boyd_power(c.map, 2.0, o).value;
    out.check(std::abs(at2 - sigma) <= 1e-8 * sigma, c.name + " p=2 |est - sigma_max| = " + num(std::abs(at2 - sigma)));
    for (double p : {1.5, 3.0, 4.0}) {
      const double est = boyd_power(c.map, p, o).value;
      double probe = 0.0;
      ComplexVector x(c.map.in_dim);
      for (int i = 0; i < 100000; ++i) {
        for (auto& v : x) v = {g(rng), g(rng)};
        probe = std::max(probe, norm_ratio(c.map, x, p));
      }
      out.check(est >= probe, c.name + " p=" + num(p) + " est " + num(est) + " >= probe " + num(probe));
    }
  }
  return out;
}

// 10. Product bound.
Outcome product_bound() {
  Outcome out;
  // Margins of a few cells, so the two bumps differ on the M = 16 grid.
  const RasterizedSet mask = rasterize(parse_set("ball(0,0;2)"), 16);
  for (const BumpSpec spec : {BumpSpec{0.8, 2}, BumpSpec{1.6, 1}}) {
    const Bump b = make_bump(mask, spec);
    const TorusModel model = bump_model(b);
    const LinearMap A = product_map(b, model);
    for (double p : {1.5, 3.0}) {
      OptimizerOptions o;
      o.seed = 10;
      const double C = estimate_product_bound(b, p, model, o).value;
      double worst = 0.0;
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const ComplexVector c = random_complex_vector(A.in_dim, derive_seed(10, "fresh", seed));
        worst = std::max(worst, norm_ratio(A, c, p));
      }
      out.check(worst <= C, "eps=" + num(spec.margin) + " order=" + std::to_string(spec.order) + " p=" +
                                num(p) + " C_phi=" + num(C) + " max fresh ratio " + num(worst));
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"tiling certificates", tiling_certificates},
      {"Poisson identity", poisson_identity},
      {"p = 2 isometry on fundamental domains", p2_isometry},
      {"aliasing witness", aliasing_witness_check},
      {"reconstruction from samples", reconstruction},
      {"sampling / multiplier paired identity", paired_identity},
      {"ball and cube multiplier trend", fefferman_trend},
      {"Shannon 1D", shannon},
      {"optimizer soundness", optimizer_soundness},
      {"product bound", product_bound},
  };
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--criterion") == 0) only = std::atoi(argv[i + 1]);
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "criterion must be in 1..%zu\n", criteria.size());
    return 2;
  }
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
