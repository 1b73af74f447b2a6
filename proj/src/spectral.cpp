// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

#include "tilesamp/spectral.hpp"

#include <cmath>

#include "tilesamp/fft.hpp"
#include "tilesamp/kernels.hpp"
#include "tilesamp/random.hpp"

namespace tilesamp {

namespace {

std::size_t ipow(std::size_t base, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

void check_grid(const TorusModel& model, const GridSpec& grid) {
  model.validate();
  if (grid.dim() != model.dim || grid.resolution != model.resolution)
    throw InvalidArgument("grid does not match the torus model");
  if (grid.max_cells() > model.oversampling)
    throw InvalidArgument("spectral box is " + std::to_string(grid.max_cells()) +
                          " cells wide but the oversampling is only " +
                          std::to_string(model.oversampling));
}

}  // namespace

std::size_t TorusModel::fine_count() const {
  return ipow(static_cast<std::size_t>(fine_extent()), dim);
}

std::size_t TorusModel::lattice_count() const {
  return ipow(static_cast<std::size_t>(resolution), dim);
}

double TorusModel::cell_weight() const { return std::pow(static_cast<double>(oversampling), -dim); }

void TorusModel::validate() const {
  if (dim < 1) throw InvalidArgument("torus model dimension must be >= 1");
  if (resolution < 4) throw InvalidArgument("torus model resolution M must be >= 4");
  if (oversampling < 1) throw InvalidArgument("torus model oversampling s must be >= 1");
}

int required_oversampling(double diameter) {
  return 2 * static_cast<int>(std::ceil(diameter / kTwoPi - 1e-12)) + 1;
}

TorusModel make_model(const RasterizedSet& set, int s_override) {
  const int need = std::max(required_oversampling(set.diameter()), set.grid().max_cells());
  if (s_override > 0 && s_override < need)
    throw InvalidArgument("oversampling s = " + std::to_string(s_override) +
                          " is below the required " + std::to_string(need));
  TorusModel m{set.dim(), set.resolution(), s_override > 0 ? s_override : need};
  m.validate();
  return m;
}

std::vector<std::size_t> fine_positions(const TorusModel& model, const GridSpec& grid) {
  check_grid(model, grid);
  const int N = model.fine_extent();
  std::vector<std::size_t> pos(grid.node_count());
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const auto j = node_of_flat(grid, i);
    std::size_t flat = 0;
    for (int v : j) flat = flat * N + static_cast<std::size_t>(((v % N) + N) % N);
    pos[i] = flat;
  }
  return pos;
}

std::vector<std::size_t> lattice_positions(const TorusModel& model) {
  model.validate();
  const int M = model.resolution;
  const std::size_t N = static_cast<std::size_t>(model.fine_extent());
  std::vector<std::size_t> pos(model.lattice_count());
  for (std::size_t k = 0; k < pos.size(); ++k) {
    std::size_t rest = k;
    std::size_t flat = 0;
    std::size_t stride = 1;
    for (int a = 0; a < model.dim; ++a) {
      const std::size_t ka = rest % static_cast<std::size_t>(M);
      rest /= static_cast<std::size_t>(M);
      flat += ka * static_cast<std::size_t>(model.oversampling) * stride;
      stride *= N;
    }
    pos[k] = flat;
  }
  return pos;
}

ComplexVector inverse_transform(const TorusModel& model, const GridSpec& grid,
                                std::span<const cdouble> F) {
  if (F.size() != grid.node_count()) throw InvalidArgument("spectrum size does not match grid");
  const auto pos = fine_positions(model, grid);
  ComplexVector f(model.fine_count());
  for (std::size_t i = 0; i < pos.size(); ++i) f[pos[i]] += F[i];
  fft::backward(f, model.fine_extents());
  kernels::scale(f, std::pow(static_cast<double>(model.resolution), -model.dim));
  return f;
}

ComplexVector forward_transform(const TorusModel& model, const GridSpec& grid,
                                std::span<const cdouble> f) {
  if (f.size() != model.fine_count()) throw InvalidArgument("sample count does not match model");
  const auto pos = fine_positions(model, grid);
  ComplexVector work(f.begin(), f.end());
  fft::forward(work, model.fine_extents());
  const double w = model.cell_weight();
  ComplexVector F(pos.size());
  for (std::size_t i = 0; i < pos.size(); ++i) F[i] = w * work[pos[i]];
  return F;
}

BandlimitedField::BandlimitedField(TorusModel model, RasterizedSet mask, ComplexVector spectrum)
    : model_(std::move(model)),
      mask_(std::move(mask)),
      spectrum_(std::move(spectrum)),
      cache_(std::make_shared<Cache>()) {
  check_grid(model_, mask_.grid());
  if (spectrum_.size() != mask_.grid().node_count())
    throw InvalidArgument("spectrum size does not match the mask grid");
  for (std::size_t i = 0; i < spectrum_.size(); ++i)
    if (!mask_.at_flat(i) && spectrum_[i] != cdouble(0.0))
      throw InvalidArgument("spectrum does not vanish outside the mask");
}

const ComplexVector& BandlimitedField::spatial() const {
  std::call_once(cache_->once, [this] {
    cache_->values = tilesamp::inverse_transform(model_, mask_.grid(), spectrum_);
  });
  return cache_->values;
}

ComplexVector forward_transform(const BandlimitedField& field) {
  return ComplexVector(field.spectrum().begin(), field.spectrum().end());
}

BandlimitedField inverse_transform(const TorusModel& model, const RasterizedSet& mask,
                                   ComplexVector F) {
  return BandlimitedField(model, mask, std::move(F));
}

BandlimitedField project_bandlimit(const TorusModel& model, const RasterizedSet& mask,
                                   std::span<const cdouble> F) {
  if (F.size() != mask.grid().node_count())
    throw InvalidArgument("spectrum size does not match the mask grid");
  ComplexVector out(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) out[i] = mask.at_flat(i) ? F[i] : cdouble(0.0);
  return BandlimitedField(model, mask, std::move(out));
}

PeriodicSpectrum periodize(const TorusModel& model, const GridSpec& grid,
                           std::span<const cdouble> F) {
  check_grid(model, grid);
  if (F.size() != grid.node_count()) throw InvalidArgument("spectrum size does not match grid");
  const auto residues = node_residues(grid);
  PeriodicSpectrum ps{model, ComplexVector(model.lattice_count()), {}};
  for (std::size_t i = 0; i < F.size(); ++i) ps.G[residues[i]] += F[i];
  ps.c = ps.G;
  fft::forward(ps.c, model.lattice_extents());
  kernels::scale(ps.c, std::pow(static_cast<double>(model.resolution), -model.dim));
  return ps;
}

PeriodicSpectrum periodize(const BandlimitedField& field) {
  return periodize(field.model(), field.grid(), field.spectrum());
}

ComplexVector spectrum_from_coefficients(const TorusModel& model, std::span<const cdouble> c) {
  if (c.size() != model.lattice_count()) throw InvalidArgument("coefficient count mismatch");
  ComplexVector G(c.begin(), c.end());
  fft::backward(G, model.lattice_extents());
  return G;
}

double lp_norm(const TorusModel& model, std::span<const cdouble> f, double p) {
  require_exponent(p);
  if (f.size() != model.fine_count()) throw InvalidArgument("sample count does not match model");
  return std::pow(model.cell_weight() * kernels::pow_sum(f, p), 1.0 / p);
}

double lp_norm(const BandlimitedField& field, double p) {
  return lp_norm(field.model(), field.spatial(), p);
}

double lp_norm_samples(std::span<const cdouble> a, double p) {
  require_exponent(p);
  return std::pow(kernels::pow_sum(a, p), 1.0 / p);
}

double quadrature_error(const BandlimitedField& field, double p) {
  const double coarse = lp_norm(field, p);
  const TorusModel fine = field.model().refined();
  const auto g = inverse_transform(fine, field.grid(), field.spectrum());
  const double refined = lp_norm(fine, g, p);
  return refined > 0.0 ? std::abs(coarse - refined) / refined : 0.0;
}

BandlimitedField random_bandlimited(std::uint64_t seed, const RasterizedSet& mask,
                                    const TorusModel& model) {
  ComplexNormal gen(derive_seed(seed, "field"));
  ComplexVector F(mask.grid().node_count());
  for (std::size_t i = 0; i < F.size(); ++i)
    if (mask.at_flat(i)) F[i] = gen();
  return BandlimitedField(model, mask, std::move(F));
}

}  // namespace tilesamp
