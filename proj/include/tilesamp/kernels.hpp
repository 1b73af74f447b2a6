// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file kernels.hpp
/// \brief Data-parallel inner loops.
///
/// Every kernel exists twice: `serial::` is the reference implementation
/// kept for testing, `parallel::` is the OpenMP version. The unqualified
/// functions in `tilesamp::kernels` dispatch to the parallel version for
/// large inputs when OpenMP is enabled and no parallel region is already
/// active, and to the serial version otherwise.

#ifndef TILESAMP_KERNELS_HPP
#define TILESAMP_KERNELS_HPP

#include <cstdint>
#include <span>

#include "tilesamp/types.hpp"

namespace tilesamp::kernels {

/// Inputs shorter than this stay on the serial path.
inline constexpr std::size_t kParallelThreshold = 1u << 14;

/// Compressed residue table: the nodes of residue class r are
/// `node[offset[r]] .. node[offset[r+1]-1]`.
struct ResidueLists {
  std::vector<std::size_t> offset;
  std::vector<std::size_t> node;
  std::size_t classes() const { return offset.empty() ? 0 : offset.size() - 1; }
};

namespace serial {
/// sum_i |x_i|^p
double pow_sum(std::span<const cdouble> x, double p);
double max_abs(std::span<const cdouble> x);
/// out_i = |x_i|^(p-2) x_i, with out_i = 0 where x_i = 0.
void duality_map(std::span<const cdouble> x, std::span<cdouble> out, double p);
/// x_i *= m_i
void multiply(std::span<cdouble> x, std::span<const double> m);
void scale(std::span<cdouble> x, double factor);
/// out_r = sum of x over the nodes of residue class r.
void fold_residues(std::span<const cdouble> x, const ResidueLists& lists,
                   std::span<cdouble> out);
/// mask_i = pred(i) for i in [0, mask.size())
template <class Pred>
void fill_mask(std::span<std::uint8_t> mask, Pred&& pred) {
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = pred(i) ? 1 : 0;
}
}  // namespace serial

namespace parallel {
double pow_sum(std::span<const cdouble> x, double p);
double max_abs(std::span<const cdouble> x);
void duality_map(std::span<const cdouble> x, std::span<cdouble> out, double p);
void multiply(std::span<cdouble> x, std::span<const double> m);
void scale(std::span<cdouble> x, double factor);
void fold_residues(std::span<const cdouble> x, const ResidueLists& lists,
                   std::span<cdouble> out);
template <class Pred>
void fill_mask(std::span<std::uint8_t> mask, Pred&& pred) {
  const auto n = static_cast<std::int64_t>(mask.size());
#if defined(TILESAMP_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < n; ++i)
    mask[static_cast<std::size_t>(i)] = pred(static_cast<std::size_t>(i)) ? 1 : 0;
}
}  // namespace parallel

/// True when a call on `n` elements should take the OpenMP path.
bool use_parallel(std::size_t n);

double pow_sum(std::span<const cdouble> x, double p);
double max_abs(std::span<const cdouble> x);
void duality_map(std::span<const cdouble> x, std::span<cdouble> out, double p);
void multiply(std::span<cdouble> x, std::span<const double> m);
void scale(std::span<cdouble> x, double factor);
void fold_residues(std::span<const cdouble> x, const ResidueLists& lists,
                   std::span<cdouble> out);

template <class Pred>
void fill_mask(std::span<std::uint8_t> mask, Pred&& pred) {
  if (use_parallel(mask.size()))
    parallel::fill_mask(mask, std::forward<Pred>(pred));
  else
    serial::fill_mask(mask, std::forward<Pred>(pred));
}

}  // namespace tilesamp::kernels

#endif  // TILESAMP_KERNELS_HPP
