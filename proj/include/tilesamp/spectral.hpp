// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file spectral.hpp
/// \brief The discrete torus model and its Fourier machinery.
///
/// Model. At resolution M and oversampling s a field lives on the torus
/// R^n / (M Z)^n, sampled on the fine grid (1/s) Z^n, i.e. N = M s points per
/// axis. Its spectrum sits on the nodes j of a GridSpec, node j carrying the
/// frequency xi_j = j 2pi / M. Transforms follow
///
///     F(xi) = int e^{-i x.xi} f(x) dx          (one period)
///     f(x)  = M^{-n} sum_j F_j e^{i xi_j . x}
///
/// so the per-period integral plays the role of the continuum integral and
/// M^{-n} = (2pi)^{-n} delta^n is the continuum inversion factor times the
/// cell volume. With these conventions
///
///     ||f||_p   = (s^{-n} sum_{fine grid} |f|^p)^{1/p}
///     ||f||_2^2 = M^{-n} sum_j |F_j|^2
///     G_r       = sum_{j = r mod M} F_j,    c(k) = M^{-n} sum_r G_r e^{-2 pi i k.r/M} = f(-k).
///
/// Node j lands on fine frequency index j mod N, so the spectral box must be
/// at most s cells wide per axis (checked by make_model).

#ifndef TILESAMP_SPECTRAL_HPP
#define TILESAMP_SPECTRAL_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>

#include "tilesamp/geometry.hpp"
#include "tilesamp/types.hpp"

namespace tilesamp {

struct TorusModel {
  int dim = 0;
  int resolution = 0;    // M
  int oversampling = 0;  // s

  int fine_extent() const { return resolution * oversampling; }
  std::vector<int> fine_extents() const { return std::vector<int>(dim, fine_extent()); }
  std::vector<int> lattice_extents() const { return std::vector<int>(dim, resolution); }
  std::size_t fine_count() const;
  std::size_t lattice_count() const;
  /// s^{-n}, the quadrature weight of one fine grid point.
  double cell_weight() const;
  void validate() const;
  /// Same model with oversampling 2s.
  TorusModel refined() const { return {dim, resolution, 2 * oversampling}; }

  friend bool operator==(const TorusModel&, const TorusModel&) = default;
};

/// Smallest odd s with s >= 2 ceil(diameter / 2pi) + 1.
int required_oversampling(double diameter);

/// Model for `set`: s = max(required_oversampling, box width in cells,
/// s_override). Throws if s_override is given but too small.
TorusModel make_model(const RasterizedSet& set, int s_override = 0);

/// Fine-grid frequency index (row-major, extent N) of each grid node.
std::vector<std::size_t> fine_positions(const TorusModel& model, const GridSpec& grid);
/// Fine-grid spatial index of each lattice point k in [0,M)^n.
std::vector<std::size_t> lattice_positions(const TorusModel& model);

/// f = inverse transform of spectral values F on the nodes of `grid`.
ComplexVector inverse_transform(const TorusModel& model, const GridSpec& grid,
                                std::span<const cdouble> F);
/// F_j on every node of `grid` from fine-grid samples f.
ComplexVector forward_transform(const TorusModel& model, const GridSpec& grid,
                                std::span<const cdouble> f);

/// An element of the discrete E_K^p: spectral values on the nodes of the
/// mask grid, zero outside the mask. Spatial samples are computed on first
/// use; copies share the cache and reading it is thread-safe.
class BandlimitedField {
 public:
  BandlimitedField(TorusModel model, RasterizedSet mask, ComplexVector spectrum);

  const TorusModel& model() const { return model_; }
  const RasterizedSet& mask() const { return mask_; }
  const GridSpec& grid() const { return mask_.grid(); }
  std::span<const cdouble> spectrum() const { return spectrum_; }
  /// Fine-grid samples, row-major with extent N per axis.
  const ComplexVector& spatial() const;

 private:
  struct Cache {
    std::once_flag once;
    ComplexVector values;
  };
  TorusModel model_;
  RasterizedSet mask_;
  ComplexVector spectrum_;
  std::shared_ptr<Cache> cache_;
};

/// Spectrum of a field (the stored coefficients).
ComplexVector forward_transform(const BandlimitedField& field);
/// Builds the field with spectrum F (must vanish outside the mask).
BandlimitedField inverse_transform(const TorusModel& model, const RasterizedSet& mask,
                                   ComplexVector F);

/// Zeroes F outside the mask. Idempotent.
BandlimitedField project_bandlimit(const TorusModel& model, const RasterizedSet& mask,
                                   std::span<const cdouble> F);

/// The 2 pi Z^n periodization of a spectrum and its coefficient sequence.
struct PeriodicSpectrum {
  TorusModel model;
  ComplexVector G;  // residues r in [0,M)^n, row-major
  ComplexVector c;  // lattice points k in [0,M)^n, row-major
};

PeriodicSpectrum periodize(const TorusModel& model, const GridSpec& grid,
                           std::span<const cdouble> F);
PeriodicSpectrum periodize(const BandlimitedField& field);
/// G from the coefficient sequence c (inverse of the c step of periodize).
ComplexVector spectrum_from_coefficients(const TorusModel& model, std::span<const cdouble> c);

/// Per-period L^p norm. Requires 1 < p < inf.
double lp_norm(const TorusModel& model, std::span<const cdouble> f, double p);
double lp_norm(const BandlimitedField& field, double p);
/// Plain l^p norm.
double lp_norm_samples(std::span<const cdouble> a, double p);
/// |norm at s - norm at 2s| / norm at 2s.
double quadrature_error(const BandlimitedField& field, double p);

/// Complex standard normal coefficients on the mask nodes (flat order),
/// drawn from derive_seed(seed, "field").
BandlimitedField random_bandlimited(std::uint64_t seed, const RasterizedSet& mask,
                                    const TorusModel& model);

}  // namespace tilesamp

#endif  // TILESAMP_SPECTRAL_HPP
