// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TILESAMP_TYPES_HPP
#define TILESAMP_TYPES_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace tilesamp {

using cdouble = std::complex<double>;
using ComplexVector = std::vector<cdouble>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr const char* kVersion = "0.1.0";

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad sizes, bad exponents, inconsistent grids.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition of an operation does not hold for the
/// given data (e.g. the set does not cover R^n mod 2 pi Z^n).
/// `condition()` is a stable machine-readable tag such as
/// "coverage_violation" or "overlap_violation".
class PreconditionError : public Error {
 public:
  PreconditionError(std::string condition, const std::string& what)
      : Error(what), condition_(std::move(condition)) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

/// Rejects p outside the open interval (1, inf).
void require_exponent(double p);

/// Conjugate exponent q with 1/p + 1/q = 1.
inline double conjugate_exponent(double p) { return p / (p - 1.0); }

}  // namespace tilesamp

#endif  // TILESAMP_TYPES_HPP
