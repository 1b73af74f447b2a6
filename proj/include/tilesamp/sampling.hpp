// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file sampling.hpp
/// \brief Sampling on Z^n: best constants, reconstruction, aliasing.
///
/// All operators act on the discrete model of spectral.hpp. Sample
/// sequences are indexed by k in [0,M)^n (row-major), one spatial period.
/// From samples a the periodized spectrum is G = DFT_M(a), i.e.
/// G_r = sum_k a_k e^{-2 pi i k.r/M}.

#ifndef TILESAMP_SAMPLING_HPP
#define TILESAMP_SAMPLING_HPP

#include <cstdint>

#include "tilesamp/boyd.hpp"
#include "tilesamp/estimate.hpp"
#include "tilesamp/spectral.hpp"

namespace tilesamp {

struct SampleSequence {
  TorusModel model;
  ComplexVector values;  // f(k), k in [0,M)^n
};

/// Exact samples of the field at the integer points of one period.
SampleSequence sample_lattice(const BandlimitedField& field);

/// G = DFT_M(samples).
ComplexVector spectrum_from_samples(const TorusModel& model, std::span<const cdouble> samples);

// ---------------------------------------------------------------------------
// Linear maps (exposed for testing against dense oracles).

/// T: samples -> the field in E_K with those samples (l^p -> L^p). Requires
/// at most one mask node per residue class; when classes are empty the
/// admissible samples form a subspace and the map carries its projector.
LinearMap sampling_inverse_map(const RasterizedSet& mask, const TorusModel& model);
/// f -> f|Z^n on E_K (L^p -> l^p), with the projector onto E_K.
LinearMap plancherel_polya_map(const RasterizedSet& mask, const TorusModel& model);
/// The l^2-minimal interpolant: samples -> f, splitting G_r equally over
/// the nodes of class r. Requires every class to be nonempty.
LinearMap minimal_interpolation_map(const RasterizedSet& mask, const TorusModel& model);
/// s^{-n} times the adjoint of minimal_interpolation_map (L^q -> l^q). This
/// is sampling composed with the chi_K multiplier, the Banach adjoint of
/// the interpolation operator for the weighted pairing.
LinearMap interpolation_dual_map(const RasterizedSet& mask, const TorusModel& model);

// ---------------------------------------------------------------------------
// Best constants.

/// Best C with ||f||_p <= C ||f|Z^n||_p on the discrete E_K (the p-th root
/// of the constant in the stable-sampling inequality). Infinite, flagged
/// "aliasing", when two mask nodes share a residue class.
ConstantEstimate estimate_sampling_constant(const RasterizedSet& mask, double p,
                                            const TorusModel& model, const OptimizerOptions& opts,
                                            const std::vector<ComplexVector>& starts = {});

/// Best C with ||f|Z^n||_p <= C ||f||_p on the discrete E_K.
ConstantEstimate estimate_plancherel_polya(const RasterizedSet& mask, double p,
                                           const TorusModel& model, const OptimizerOptions& opts);

/// Best C with min{||f||_p : f in E_K, f|Z^n = a} <= C ||a||_p. Throws
/// PreconditionError("coverage_violation") when some residue class has no
/// mask node (some sequences cannot be interpolated at all).
ConstantEstimate estimate_interpolation_constant(const RasterizedSet& mask, double p,
                                                 const TorusModel& model,
                                                 const OptimizerOptions& opts,
                                                 const std::vector<ComplexVector>& starts = {});

/// Spectrum (mask grid nodes) of an approximately L^p-minimal interpolant
/// of `samples`, by iteratively reweighted least squares. Exact for p = 2
/// and for masks with one node per class.
ComplexVector minimal_interpolant(const RasterizedSet& mask, const TorusModel& model,
                                  std::span<const cdouble> samples, double p,
                                  int iterations = 30);

// ---------------------------------------------------------------------------
// Reconstruction.

/// phi = 1 on K, supported in K + B(0, margin): the indicator of K dilated
/// by margin/2, smoothed by `order` box averages whose total reach is at
/// most margin/2. Margin 0 gives the indicator of K.
struct BumpSpec {
  double margin = 0.0;
  int order = 2;
};

struct Bump {
  RasterizedSet support;    // nodes where phi > 0, on the padded grid
  std::vector<double> phi;  // one value per node of support.grid()
};

/// Evaluates phi on the mask grid padded by ceil(margin / 2pi) cells.
Bump make_bump(const RasterizedSet& mask, const BumpSpec& spec);

/// F = phi G with G built from the samples; returns the field on the
/// support of phi. Throws PreconditionError("dilated_overlap") when two
/// nodes of the support share a residue class (translates of the dilated
/// set overlap, so G no longer determines F).
BandlimitedField reconstruct_from_samples(const SampleSequence& samples, const RasterizedSet& mask,
                                          const BumpSpec& spec);

/// c -> inverse transform of phi G(c), G = sum_k c_k e^{i k.xi}, as a map
/// l^p -> L^p. Requires a model whose box fits the bump grid.
LinearMap product_map(const Bump& bump, const TorusModel& model);
/// Model with enough oversampling for the bump support.
TorusModel bump_model(const Bump& bump, int s_override = 0);
ConstantEstimate estimate_product_bound(const Bump& bump, double p, const TorusModel& model,
                                        const OptimizerOptions& opts);

// ---------------------------------------------------------------------------
// Aliasing.

struct AliasingWitness {
  BandlimitedField field;      // g, with g(k) = 0 on Z^n
  BandlimitedField generator;  // f, with g = (e^{2 pi i k0.x} - 1) f
  std::vector<int> k0;
  double radius = 0.0;  // ball radius in frequency units
};

/// Builds g from the largest ball B of nodes with B and B + 2 pi k0 inside
/// the mask. Throws PreconditionError("no_overlap") when K and K + 2 pi k0
/// share no node.
AliasingWitness aliasing_witness(const RasterizedSet& mask, const TorusModel& model,
                                 std::span<const int> k0);
/// Searches all candidate shifts and keeps the largest ball.
AliasingWitness aliasing_witness(const RasterizedSet& mask, const TorusModel& model);

// ---------------------------------------------------------------------------
// One-dimensional Shannon baseline.
//
// f with spectrum in [-omega, omega] sampled at h Z becomes, after x -> h x,
// a field on Z with spectrum K' = [-omega h, omega h]; the scaled samples
// sqrt(h) f(kh) have the l^2 norm of f exactly when the translates of K'
// by 2 pi Z are disjoint, i.e. h <= pi / omega.

struct ShannonReport {
  double omega = 0.0;
  double h = 0.0;
  int M = 0;
  double field_norm = 0.0;          // ||f||_2
  double sample_norm = 0.0;         // ||sqrt(h) f(kh)||_2
  double isometry_error = 0.0;      // |sample_norm - field_norm| / field_norm
  double reconstruction_error = 0.0;  // relative L^2 error of reconstruct(sample(f))
};

/// K' rasterized at resolution M.
RasterizedSet shannon_mask(double omega, double h, int M);
/// Throws PreconditionError("sub_nyquist") when h > pi / omega.
ShannonReport shannon_1d(std::span<const cdouble> spectrum, double omega, double h, int M);
/// Same with complex normal coefficients from derive_seed(seed, "field").
ShannonReport shannon_1d(double omega, double h, int M, std::uint64_t seed);
/// Aliasing witness on K' for h > pi / omega (k0 = 1).
AliasingWitness shannon_aliasing(double omega, double h, int M);

}  // namespace tilesamp

#endif  // TILESAMP_SAMPLING_HPP
