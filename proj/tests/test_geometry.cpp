// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "tilesamp/geometry.hpp"
#include "tilesamp/set_expr.hpp"

using namespace tilesamp;

TEST_CASE("membership of primitives and set operations") {
  const SetSpec q = parse_set("cube(0,0;2pi)");
  CHECK(q.contains(std::vector<double>{0.0, 0.0}));
  CHECK(q.contains(std::vector<double>{kTwoPi, kTwoPi}));
  CHECK_FALSE(q.contains_interior(std::vector<double>{0.0, 1.0}));
  CHECK_FALSE(q.contains(std::vector<double>{-0.01, 1.0}));

  const SetSpec k = SetSpec::counterexample_k();
  CHECK(k.contains(std::vector<double>{kPi, -1.0}));       // in the lower disc
  CHECK_FALSE(k.contains(std::vector<double>{kPi, 5.5}));  // removed upper disc
  CHECK(k.contains(std::vector<double>{0.5, 3.0}));        // part of Q kept

  const Box b = k.bounding_box();
  CHECK(b.lo[1] == doctest::Approx(-kPi));
  CHECK(b.hi[1] == doctest::Approx(kTwoPi));
}

TEST_CASE("rasterization at cell centres") {
  const RasterizedSet q = rasterize(parse_set("cube(0,0;2pi)"), 8);
  CHECK(q.count() == 64);
  CHECK(q.measure() == doctest::Approx(4.0 * kPi * kPi));
  CHECK(residue_table(q).exact_tiling());

  const RasterizedSet k = rasterize(SetSpec::counterexample_k(), 16);
  CHECK(k.count() == 256);
  CHECK(residue_table(k).exact_tiling());

  // A grid that cannot hold the set names the offending primitive.
  GridSpec small{8, {0, 0}, {1, 1}};
  try {
    (void)rasterize(parse_set("ball(0,0;1)"), small);
    FAIL("expected an error");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("ball") != std::string::npos);
  }
}

TEST_CASE("measures match Monte Carlo and lens-area oracles") {
  const SetSpec k = SetSpec::counterexample_k();
  const double mc = oracle::monte_carlo_measure(k, k.bounding_box(), 400000, 7);
  CHECK(mc == doctest::Approx(4.0 * kPi * kPi).epsilon(0.01));
  const RasterizedSet r = rasterize(k, 64);
  CHECK(r.measure() == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-12));

  // Ball(0, pi + 0.2) overlaps its translate by 2 pi e_1 in a lens.
  const double radius = kPi + 0.2;
  const RasterizedSet ball = rasterize(SetSpec::ball({0.0, 0.0}, radius), 64);
  const double lens = oracle::lens_area(radius, kTwoPi);
  const std::vector<int> e1{1, 0};
  CHECK(overlap_measure(ball, e1) == doctest::Approx(lens).epsilon(0.1));
  CHECK(overlap_measure(ball, e1) > 0.0);
}

TEST_CASE("tiling verdicts") {
  const std::vector<int> Ms{16, 32, 64};
  CHECK(classify_tiling(parse_set("cube(0,0;2pi)"), Ms).verdict == TilingVerdict::fundamental);
  CHECK(classify_tiling(SetSpec::counterexample_k(), Ms).verdict == TilingVerdict::fundamental);
  CHECK(classify_tiling(parse_set("ball(0,0;3pi/2)"), Ms).verdict ==
        TilingVerdict::overlap_violation);
  const TilingReport small = classify_tiling(parse_set("ball(0,0;pi)"), Ms);
  CHECK(small.verdict == TilingVerdict::coverage_violation);
  const double gap = 4.0 * kPi * kPi - kPi * kPi * kPi;
  CHECK(std::abs(small.levels.back().coverage_gap - gap) / gap < 3.0 / 64.0);
  CHECK(classify_tiling(parse_set("cube(0,0;2pi-0.5)"), Ms).verdict ==
        TilingVerdict::coverage_violation);
}

TEST_CASE("candidate shifts cover the diameter") {
  const auto shifts = candidate_shifts(2, 3.0 * kPi);
  bool has_e1 = false;
  for (const auto& k : shifts) {
    CHECK((k[0] != 0 || k[1] != 0));
    CHECK(kTwoPi * std::hypot(k[0], k[1]) <= 3.0 * kPi + 1e-12);
    has_e1 = has_e1 || (k[0] == 1 && k[1] == 0);
  }
  CHECK(has_e1);
  CHECK(candidate_shifts(2, 1.0).empty());
}

TEST_CASE("grid indexing round trips") {
  const GridSpec g{8, {-1, 0}, {1, 2}};
  for (std::size_t i = 0; i < g.node_count(); i += 7) {
    const auto j = node_of_flat(g, i);
    CHECK(flat_node_index(g, j) == static_cast<std::int64_t>(i));
  }
  const auto res = node_residues(g);
  const auto j = node_of_flat(g, 37);
  const auto r = res[37];
  CHECK(r == static_cast<std::size_t>(((j[0] % 8) + 8) % 8 * 8 + ((j[1] % 8) + 8) % 8));
}
