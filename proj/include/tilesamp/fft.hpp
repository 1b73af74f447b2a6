// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TILESAMP_FFT_HPP
#define TILESAMP_FFT_HPP

#include <span>
#include <vector>

#include "tilesamp/types.hpp"

namespace tilesamp::fft {

// Unnormalized in-place multidimensional DFTs over a row-major array.
//   forward:  X[f] = sum_m x[m] exp(-2 pi i f.m / N)
//   backward: x[m] = sum_f X[f] exp(+2 pi i f.m / N)
// Plans are cached per (extents, direction); lookup is thread-safe and
// execution uses the new-array interface, so concurrent calls are fine.
void forward(std::span<cdouble> data, const std::vector<int>& extents);
void backward(std::span<cdouble> data, const std::vector<int>& extents);

}  // namespace tilesamp::fft

#endif  // TILESAMP_FFT_HPP
