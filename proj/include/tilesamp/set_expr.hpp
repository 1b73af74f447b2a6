// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file set_expr.hpp
/// \brief Text form of SetSpec.
///
/// Grammar (whitespace is ignored between tokens):
///
///     set     := 'cube' '(' num {',' num} ';' num ')'      corner; side
///              | 'ball' '(' num {',' num} ';' num ')'      centre; radius
///              | 'translate' '(' set ';' num {',' num} ')'
///              | 'union' '(' set {',' set} ')'
///              | 'intersect' '(' set {',' set} ')'
///              | 'diff' '(' set ',' set ')'
///              | 'counterexampleK'
///     num     := term {('+' | '-') term}
///     term    := factor {('*' | '/') factor}
///     factor  := ['-' | '+'] (literal ['pi'] | 'pi' | '(' num ')')
///
/// A cube is written by its lower corner, so `cube(0,0;2pi)` is [0,2pi]^2.
/// `2pi`, `2*pi`, `3pi/2` and `pi+0.2` are all valid numbers.

#ifndef TILESAMP_SET_EXPR_HPP
#define TILESAMP_SET_EXPR_HPP

#include <string>
#include <string_view>
#include <vector>

#include "tilesamp/geometry.hpp"

namespace tilesamp {

/// Syntax error; `position()` is the 0-based byte offset of the problem.
class ParseError : public InvalidArgument {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

SetSpec parse_set(std::string_view text);

/// Canonical text. parse_set(format_set(s)) formats back to the same text.
std::string format_set(const SetSpec& spec);

/// A number in the set grammar (e.g. "3pi/2").
double parse_number(std::string_view text);
/// Rational multiples of pi with small denominators print as such
/// ("3pi/2"); everything else prints with 17 significant digits.
std::string format_number(double value);

/// Splits on commas that are not nested inside parentheses.
std::vector<std::string> split_top_level(std::string_view text, char sep = ',');

}  // namespace tilesamp

#endif  // TILESAMP_SET_EXPR_HPP
