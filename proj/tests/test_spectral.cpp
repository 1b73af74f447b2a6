// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "tilesamp/kernels.hpp"
#include "tilesamp/sampling.hpp"
#include "tilesamp/set_expr.hpp"
#include "tilesamp/spectral.hpp"

using namespace tilesamp;

namespace {

double max_diff(const ComplexVector& a, const ComplexVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("oversampling choice") {
  CHECK(required_oversampling(kTwoPi) == 3);
  CHECK(required_oversampling(kTwoPi * std::sqrt(2.0)) == 5);
  const RasterizedSet q = rasterize(parse_set("cube(0,0;2pi)"), 8);
  CHECK(make_model(q).oversampling == 5);
  CHECK(make_model(q, 7).oversampling == 7);
  CHECK_THROWS_AS(make_model(rasterize(parse_set("ball(0,0;3pi/2)"), 8), 1), InvalidArgument);
}

TEST_CASE("delta spectrum at the origin is a constant field") {
  const RasterizedSet q = rasterize(parse_set("cube(0,0;2pi)"), 8);
  const TorusModel model = make_model(q);
  ComplexVector F(q.grid().node_count());
  F[static_cast<std::size_t>(flat_node_index(q.grid(), std::vector<int>{0, 0}))] = 1.0;
  const BandlimitedField f(model, q, F);
  const double c = std::pow(8.0, -2.0);
  for (const auto& v : f.spatial()) CHECK(std::abs(v - cdouble(c)) < 1e-15);
  // f = 1 gives samples 1.
  ComplexVector G = F;
  G[0] = 0.0;
  for (auto& v : G) v = 0.0;
  G[static_cast<std::size_t>(flat_node_index(q.grid(), std::vector<int>{0, 0}))] = 64.0;
  const SampleSequence a = sample_lattice(BandlimitedField(model, q, G));
  for (const auto& v : a.values) CHECK(std::abs(v - cdouble(1.0)) < 1e-13);
}

TEST_CASE("transforms agree with a direct DFT") {
  const RasterizedSet mask = rasterize(parse_set("ball(1,0.5;2.5)"), 4);
  const TorusModel model = make_model(mask, 3);
  const BandlimitedField f = random_bandlimited(5, mask, model);
  // Scatter F onto the fine grid and transform directly.
  const auto pos = fine_positions(model, mask.grid());
  ComplexVector fine(model.fine_count());
  for (std::size_t i = 0; i < pos.size(); ++i) fine[pos[i]] += f.spectrum()[i];
  ComplexVector ref = oracle::direct_dft(fine, model.fine_extents(), +1);
  for (auto& v : ref) v /= std::pow(4.0, 2.0);
  CHECK(max_diff(ref, f.spatial()) < 1e-13);
  // Forward transform inverts.
  const ComplexVector back = forward_transform(f);
  CHECK(max_diff(back, ComplexVector(f.spectrum().begin(), f.spectrum().end())) < 1e-12);
}

TEST_CASE("Parseval and Poisson identities") {
  for (const char* text : {"cube(0,0;2pi)", "counterexampleK", "ball(0,0;3pi/2)"}) {
    CAPTURE(text);
    const RasterizedSet mask = rasterize(parse_set(text), 16);
    const TorusModel model = make_model(mask);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const BandlimitedField f = random_bandlimited(seed, mask, model);
      double spec2 = 0.0;
      for (const auto& v : f.spectrum()) spec2 += std::norm(v);
      CHECK(std::pow(lp_norm(f, 2.0), 2) == doctest::Approx(spec2 / 256.0).epsilon(1e-12));

      const PeriodicSpectrum per = periodize(f);
      const SampleSequence a = sample_lattice(f);
      const double scale = kernels::max_abs(f.spatial());
      for (int k0 = 0; k0 < 16; ++k0)
        for (int k1 = 0; k1 < 16; ++k1) {
          const std::size_t k = static_cast<std::size_t>(k0 * 16 + k1);
          const std::size_t nk = static_cast<std::size_t>(((16 - k0) % 16) * 16 + (16 - k1) % 16);
          CHECK(std::abs(per.c[k] - a.values[nk]) < 1e-10 * scale);
        }
      // G recovered from the coefficients.
      const ComplexVector G = spectrum_from_coefficients(model, per.c);
      CHECK(max_diff(G, per.G) < 1e-10 * kernels::max_abs(per.G));
    }
  }
}

TEST_CASE("quadrature is exact for trigonometric polynomials") {
  const RasterizedSet mask = rasterize(parse_set("cube(-pi,-pi;2pi)"), 8);
  const BandlimitedField f = random_bandlimited(3, mask, make_model(mask));
  CHECK(quadrature_error(f, 2.0) < 1e-12);
  CHECK(quadrature_error(f, 4.0) < 1e-12);
  const BandlimitedField g = random_bandlimited(3, mask, make_model(mask, 9));
  CHECK(lp_norm(g, 4.0) == doctest::Approx(lp_norm(f, 4.0)).epsilon(1e-12));
}

TEST_CASE("band-limited fields reject off-mask spectra") {
  const RasterizedSet mask = rasterize(parse_set("ball(0,0;2)"), 8);
  const TorusModel model = make_model(mask);
  ComplexVector F(mask.grid().node_count(), cdouble(1.0));
  CHECK_THROWS_AS(BandlimitedField(model, mask, F), InvalidArgument);
  const BandlimitedField p = project_bandlimit(model, mask, F);
  const BandlimitedField pp = project_bandlimit(model, mask, p.spectrum());
  CHECK(max_diff(ComplexVector(p.spectrum().begin(), p.spectrum().end()),
                 ComplexVector(pp.spectrum().begin(), pp.spectrum().end())) == 0.0);
}

TEST_CASE("random fields are reproducible") {
  const RasterizedSet mask = rasterize(parse_set("counterexampleK"), 8);
  const TorusModel model = make_model(mask);
  const auto a = random_bandlimited(42, mask, model);
  const auto b = random_bandlimited(42, mask, model);
  const auto c = random_bandlimited(43, mask, model);
  CHECK(std::equal(a.spectrum().begin(), a.spectrum().end(), b.spectrum().begin()));
  CHECK_FALSE(std::equal(a.spectrum().begin(), a.spectrum().end(), c.spectrum().begin()));
}
