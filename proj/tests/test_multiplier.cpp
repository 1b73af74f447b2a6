// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tilesamp/multiplier.hpp"
#include "tilesamp/random.hpp"
#include "tilesamp/sampling.hpp"
#include "tilesamp/set_expr.hpp"

using namespace tilesamp;

namespace {

bool same_spectrum(const BandlimitedField& a, const BandlimitedField& b, double tol) {
  for (std::size_t i = 0; i < a.spectrum().size(); ++i)
    if (std::abs(a.spectrum()[i] - b.spectrum()[i]) > tol) return false;
  return true;
}

bool throws_condition(const std::function<void()>& fn, const std::string& condition) {
  try {
    fn();
  } catch (const PreconditionError& e) {
    return e.condition() == condition;
  }
  return false;
}

}  // namespace

TEST_CASE("applying multipliers") {
  const RasterizedSet mask = rasterize(parse_set("cube(-pi,-pi;2pi)"), 8);
  const TorusModel model = make_model(mask);
  const BandlimitedField f = random_bandlimited(1, mask, model);

  const auto one = MultiplierSpec::function(mask.grid(), std::vector<double>(mask.grid().node_count(), 1.0), "one");
  CHECK(same_spectrum(apply_multiplier(one, f), f, 0.0));

  const auto chi = MultiplierSpec::indicator(mask);
  CHECK(chi.is_indicator());
  const BandlimitedField once = apply_multiplier(chi, f);
  CHECK(same_spectrum(once, f, 0.0));
  CHECK(same_spectrum(apply_multiplier(chi, once), once, 0.0));

  // Half of the cells: an orthogonal projection at p = 2.
  std::vector<double> half(mask.grid().node_count(), 0.0);
  for (std::size_t i = 0; i < half.size(); ++i) half[i] = node_of_flat(mask.grid(), i)[0] < 0 ? 1.0 : 0.0;
  const auto h = MultiplierSpec::function(mask.grid(), half, "half");
  const BandlimitedField g = apply_multiplier(h, f);
  CHECK(lp_norm(g, 2.0) <= lp_norm(f, 2.0));
  CHECK(same_spectrum(apply_multiplier(h, g), g, 0.0));

  const RasterizedSet other = rasterize(parse_set("cube(0,0;2pi)"), 8);
  CHECK_THROWS_AS(apply_multiplier(MultiplierSpec::indicator(other), f), InvalidArgument);
  std::vector<double> bad(mask.grid().node_count(), 0.0);
  bad[0] = NAN;
  CHECK_THROWS_AS(MultiplierSpec::function(mask.grid(), bad, "bad"), InvalidArgument);
}

TEST_CASE("multiplier maps have exact adjoints") {
  for (const char* text : {"ball(0,0;pi)", "cube(-pi,-pi;2pi)", "counterexampleK", "ball(0.3,0;2)"}) {
    CAPTURE(text);
    const RasterizedSet mask = rasterize(parse_set(text), 8);
    const TorusModel model = make_model(mask);
    CHECK(oracle::adjoint_mismatch(multiplier_map(MultiplierSpec::indicator(mask), model), 1) < 1e-12);
    CHECK(oracle::adjoint_mismatch(periodized_multiplier_map(mask, model), 2) < 1e-12);
  }
}

TEST_CASE("p = 2 multiplier norm is the largest |m|") {
  const RasterizedSet mask = rasterize(parse_set("ball(0,0;2)"), 8);
  const TorusModel model = make_model(mask);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> m(mask.grid().node_count());
    for (auto& v : m) v = u(rng);
    const auto spec = MultiplierSpec::function(mask.grid(), m, "random");
    const auto e = estimate_multiplier_norm(spec, 2.0, model, OptimizerOptions{});
    CHECK(std::abs(e.value - spec.max_abs()) < 1e-10 * spec.max_abs());
  }
  const auto chi = estimate_multiplier_norm(MultiplierSpec::indicator(mask), 2.0, model, OptimizerOptions{});
  CHECK(chi.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("small-grid multiplier norms dominate probes and match the dense SVD") {
  // One spectral cell, so s = 1 gives a 4 x 4 fine grid.
  const RasterizedSet mask = rasterize(parse_set("ball(pi,pi;2)"), 4);
  REQUIRE(mask.grid().max_cells() == 1);
  const TorusModel model{2, 4, 1};
  const auto chi = MultiplierSpec::indicator(mask);
  const LinearMap A = multiplier_map(chi, model);
  CHECK(estimate_multiplier_norm(chi, 2.0, model, OptimizerOptions{}).value ==
        doctest::Approx(oracle::weighted_sigma_max(A)).epsilon(1e-8));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (double p : {1.5, 4.0}) {
    const double est = estimate_multiplier_norm(chi, p, model, OptimizerOptions{}).value;
    ComplexVector x(A.in_dim);
    for (int i = 0; i < 5000; ++i) {
      for (auto& v : x) v = {g(rng), g(rng)};
      CHECK(norm_ratio(A, x, p) <= est * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("duality between p and its conjugate") {
  const RasterizedSet cube = rasterize(parse_set("cube(-pi,-pi;2pi)"), 8);
  const auto rc = multiplier_duality_check(MultiplierSpec::indicator(cube), 4.0, make_model(cube), OptimizerOptions{});
  CHECK(rc.agree);
  CHECK(rc.relative_gap < 0.05);
  const RasterizedSet k = rasterize(SetSpec::counterexample_k(), 8);
  const auto rk = multiplier_duality_check(MultiplierSpec::indicator(k), 3.0, make_model(k), OptimizerOptions{});
  CHECK(rk.relative_gap < 0.05);
  const auto r2 = multiplier_duality_check(MultiplierSpec::indicator(k), 2.0, make_model(k), OptimizerOptions{});
  CHECK(r2.relative_gap < 1e-12);
}

TEST_CASE("periodized multiplier equals the sampling constant under shared restarts") {
  for (const char* text : {"cube(0,0;2pi)", "counterexampleK"}) {
    CAPTURE(text);
    const RasterizedSet mask = rasterize(parse_set(text), 8);
    const TorusModel model = make_model(mask);
    const auto starts = restart_vectors(model.lattice_count(), 3, 8);
    for (double p : {1.5, 4.0}) {
      const auto s = estimate_sampling_constant(mask, p, model, OptimizerOptions{}, starts);
      const auto m = estimate_periodized_multiplier_norm(mask, p, model, OptimizerOptions{},
                                                         coefficient_starts(starts, model));
      CHECK(std::abs(s.value - m.value) / s.value < 1e-3);
    }
  }
}

TEST_CASE("equivalence experiment") {
  OptimizerOptions o;
  const auto r2 = equivalence_experiment(parse_set("cube(0,0;2pi)"), 2.0, 8, o);
  CHECK(r2.sampling.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r2.interpolation.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r2.multiplier.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r2.agree);
  const auto r4 = equivalence_experiment(SetSpec::counterexample_k(), 4.0, 8, o);
  CHECK(r4.sampling_vs_multiplier < 1e-3);
  CHECK(r4.agree);
  const auto j = to_json(r4);
  CHECK(j.at("tiling_verdict") == "fundamental");
  CHECK(j.at("sampling").at("kind") == "sampling");
  CHECK(throws_condition([&] { (void)equivalence_experiment(parse_set("ball(0,0;3pi/2)"), 4.0, 8, o); },
                         "not_fundamental"));
  CHECK(throws_condition([&] { (void)equivalence_experiment(parse_set("ball(0,0;pi)"), 4.0, 8, o); },
                         "not_fundamental"));
}

TEST_CASE("Spearman correlation") {
  CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
  CHECK(spearman({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0));
  CHECK(spearman({1, 2, 3}, {5, 5, 5}) == 0.0);
  CHECK(spearman({1, 2, 3, 4}, {1, 3, 2, 4}) == doctest::Approx(0.8));
  CHECK_THROWS_AS(spearman({1}, {1}), InvalidArgument);
}

TEST_CASE("resolution scan") {
  const std::vector<NamedSet> sets{{"ball", parse_set("ball(0,0;pi)")}, {"cube", parse_set("cube(-pi,-pi;2pi)")}};
  const FeffermanTable t = fefferman_scan(sets, {2.0, 4.0}, {8, 16, 32}, OptimizerOptions{});
  REQUIRE(t.rows.size() == 12);
  for (const auto& r : t.rows) {
    if (r.p == 2.0) CHECK(r.estimate == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r.flag == "ok");
  }
  REQUIRE(t.trends.size() == 4);
  CHECK(t.trends[1].set_name == "ball");
  CHECK(t.trends[1].strictly_increasing);
  CHECK(t.trends[1].spearman == doctest::Approx(1.0));
  // The cube's increments shrink; the ball's do not.
  auto est = [&](const char* name, int M) {
    for (const auto& r : t.rows)
      if (r.set_name == name && r.p == 4.0 && r.M == M) return r.estimate;
    return 0.0;
  };
  const double cube_step1 = est("cube", 16) - est("cube", 8);
  const double cube_step2 = est("cube", 32) - est("cube", 16);
  CHECK(cube_step2 < cube_step1);
  const double ball_step1 = est("ball", 16) - est("ball", 8);
  const double ball_step2 = est("ball", 32) - est("ball", 16);
  CHECK(ball_step2 > 0.9 * ball_step1);
}
