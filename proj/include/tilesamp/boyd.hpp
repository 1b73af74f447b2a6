// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file boyd.hpp
/// \brief Nonlinear power method for ||A||_{p -> p}.
///
/// Norms carry a constant weight, ||x|| = (w sum |x_i|^p)^{1/p}, so the same
/// code serves l^p and quadrature L^p norms. One step is
///
///     x <- P psi_q(A^H psi_p(A x)),   psi_r(z) = |z|^{r-2} z,
///
/// followed by normalization, where P is an optional orthogonal projector
/// onto an admissible subspace of inputs. Every iterate x is an admissible
/// input, so every ratio ||Ax|| / ||x|| is a lower bound of the norm; the
/// estimate is the largest ratio seen. At p = 2 the step is a power
/// iteration for the top singular vector.

#ifndef TILESAMP_BOYD_HPP
#define TILESAMP_BOYD_HPP

#include <cstdint>
#include <functional>
#include <span>

#include "tilesamp/types.hpp"

namespace tilesamp {

struct LinearMap {
  using Apply = std::function<void(std::span<const cdouble>, std::span<cdouble>)>;

  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  Apply apply;
  /// Adjoint for the plain inner product sum x_i conj(y_i).
  Apply adjoint;
  /// Optional in-place orthogonal projector on the input space.
  std::function<void(std::span<cdouble>)> project;
  double in_weight = 1.0;
  double out_weight = 1.0;
};

struct OptimizerOptions {
  int restarts = 8;
  int max_iterations = 500;
  /// Converged when the best ratio improves by less than this (relative)
  /// over `window` iterations.
  double tolerance = 1e-8;
  int window = 10;
  std::uint64_t seed = 0;
};

struct RestartTrace {
  double ratio = 0.0;  // best ratio of this restart
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;  // ratio of every iterate
  ComplexVector best_input;     // iterate attaining `ratio`
};

struct PowerResult {
  double value = 0.0;
  std::vector<RestartTrace> restarts;
  ComplexVector best_input;
  bool converged() const;
  /// (max - min) / max over the per-restart ratios.
  double spread() const;
};

/// Ratio ||Ax|| / ||x|| in the weighted p-norms (0 for x = 0).
double norm_ratio(const LinearMap& A, std::span<const cdouble> x, double p);

/// Runs `opts.restarts` restarts. Restart r starts from starts[r] when
/// given, otherwise from a complex normal vector drawn from
/// derive_seed(opts.seed, "restart", r). Restarts run concurrently.
PowerResult boyd_power(const LinearMap& A, double p, const OptimizerOptions& opts,
                       const std::vector<ComplexVector>& starts = {});

/// The start vectors boyd_power would draw for restarts [0, count).
std::vector<ComplexVector> restart_vectors(std::size_t dim, std::uint64_t seed, int count);

}  // namespace tilesamp

#endif  // TILESAMP_BOYD_HPP
