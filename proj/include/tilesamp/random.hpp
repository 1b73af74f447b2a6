// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file random.hpp
/// \brief Seed splitting.
///
/// All randomness derives from one root seed. A stream is named by a tag
/// and an index; its seed is
///
///     splitmix64(root ^ splitmix64(fnv1a64(tag) + index))
///
/// so streams with different tags or indices are decorrelated and the same
/// (root, tag, index) always reproduces the same numbers. Tags in use:
/// "field" (random_bandlimited draws), "restart" (optimizer start vectors),
/// "probe" (test probes), "cell" (per-cell seeds in scans).

#ifndef TILESAMP_RANDOM_HPP
#define TILESAMP_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string_view>

#include "tilesamp/types.hpp"

namespace tilesamp {

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t root, std::string_view tag, std::uint64_t index = 0);

/// Complex normal with E|z|^2 = 1 (real and imaginary parts N(0, 1/2)).
class ComplexNormal {
 public:
  explicit ComplexNormal(std::uint64_t seed) : engine_(seed) {}
  cdouble operator()() {
    const double a = dist_(engine_);
    const double b = dist_(engine_);
    return {a * kScale, b * kScale};
  }
  std::mt19937_64& engine() { return engine_; }

 private:
  static constexpr double kScale = 0.70710678118654752440;
  std::mt19937_64 engine_;
  std::normal_distribution<double> dist_{0.0, 1.0};
};

ComplexVector random_complex_vector(std::size_t n, std::uint64_t seed);

}  // namespace tilesamp

#endif  // TILESAMP_RANDOM_HPP
