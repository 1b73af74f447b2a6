// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

#include "tilesamp/set_expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace tilesamp {

ParseError::ParseError(std::size_t position, const std::string& message)
    : InvalidArgument("parse error at position " + std::to_string(position) + ": " + message),
      position_(position) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SetSpec parse_top() {
    SetSpec s = parse_set();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return s;
  }

  double parse_number_top() {
    const double v = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  bool keyword(std::string_view kw) {
    skip_ws();
    if (text_.substr(pos_, kw.size()) != kw) return false;
    const std::size_t end = pos_ + kw.size();
    if (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) return false;
    pos_ = end;
    return true;
  }

  SetSpec parse_set() {
    skip_ws();
    const std::size_t start = pos_;
    const std::string name = identifier();
    if (name.empty()) fail("expected a set expression");
    if (name == "counterexampleK") return SetSpec::counterexample_k();
    if (name == "cube" || name == "ball") {
      expect('(');
      std::vector<double> coords{parse_sum()};
      while (peek(',')) {
        ++pos_;
        coords.push_back(parse_sum());
      }
      expect(';');
      const std::size_t size_pos = pos_;
      const double size = parse_sum();
      expect(')');
      if (!(size > 0.0)) {
        pos_ = size_pos;
        fail(name == "cube" ? "cube side must be positive" : "ball radius must be positive");
      }
      if (name == "ball") return SetSpec::ball(std::move(coords), size);
      for (auto& c : coords) c += 0.5 * size;
      return SetSpec::cube(std::move(coords), size);
    }
    if (name == "translate") {
      expect('(');
      SetSpec inner = parse_set();
      expect(';');
      std::vector<double> v{parse_sum()};
      while (peek(',')) {
        ++pos_;
        v.push_back(parse_sum());
      }
      expect(')');
      if (static_cast<int>(v.size()) != inner.dim()) {
        pos_ = start;
        fail("translate offset has the wrong dimension");
      }
      return SetSpec::translate(std::move(inner), std::move(v));
    }
    if (name == "union" || name == "intersect" || name == "diff") {
      expect('(');
      std::vector<SetSpec> parts{parse_set()};
      while (peek(',')) {
        ++pos_;
        parts.push_back(parse_set());
      }
      expect(')');
      const int d = parts.front().dim();
      for (const auto& s : parts)
        if (s.dim() != d) {
          pos_ = start;
          fail("operands of " + name + " have different dimensions");
        }
      if (name == "diff") {
        if (parts.size() != 2) {
          pos_ = start;
          fail("diff takes exactly two operands");
        }
        return SetSpec::difference(parts[0], parts[1]);
      }
      return name == "union" ? SetSpec::unite(std::move(parts))
                             : SetSpec::intersect(std::move(parts));
    }
    pos_ = start;
    fail("unknown set '" + name + "'");
  }

  double parse_sum() {
    double v = parse_term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        v += parse_term();
      } else if (peek('-')) {
        ++pos_;
        v -= parse_term();
      } else {
        return v;
      }
    }
  }

  double parse_term() {
    double v = parse_factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        v *= parse_factor();
      } else if (peek('/')) {
        ++pos_;
        const std::size_t at = pos_;
        const double d = parse_factor();
        if (d == 0.0) {
          pos_ = at;
          fail("division by zero");
        }
        v /= d;
      } else {
        return v;
      }
    }
  }

  double parse_factor() {
    skip_ws();
    if (peek('-')) {
      ++pos_;
      return -parse_factor();
    }
    if (peek('+')) {
      ++pos_;
      return parse_factor();
    }
    if (peek('(')) {
      ++pos_;
      const double v = parse_sum();
      expect(')');
      return v;
    }
    if (keyword("pi")) return kPi;
    skip_ws();
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - first);
    // Implicit multiplication: "2pi".
    if (pos_ < text_.size() && text_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      v *= kPi;
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void format_into(const SetSpec& s, std::string& out) {
  auto coords = [&](const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ',';
      out += format_number(v[i]);
    }
  };
  switch (s.kind()) {
    case SetSpec::Kind::cube: {
      std::vector<double> corner = s.center();
      for (auto& c : corner) c -= 0.5 * s.size();
      out += "cube(";
      coords(corner);
      out += ';' + format_number(s.size()) + ')';
      return;
    }
    case SetSpec::Kind::ball:
      out += "ball(";
      coords(s.center());
      out += ';' + format_number(s.size()) + ')';
      return;
    case SetSpec::Kind::translate:
      out += "translate(";
      format_into(s.children()[0], out);
      out += ';';
      coords(s.offset());
      out += ')';
      return;
    case SetSpec::Kind::set_union:
    case SetSpec::Kind::set_intersection:
    case SetSpec::Kind::set_difference: {
      if (s == SetSpec::counterexample_k()) {
        out += "counterexampleK";
        return;
      }
      out += s.kind() == SetSpec::Kind::set_union          ? "union("
             : s.kind() == SetSpec::Kind::set_intersection ? "intersect("
                                                           : "diff(";
      for (std::size_t i = 0; i < s.children().size(); ++i) {
        if (i) out += ',';
        format_into(s.children()[i], out);
      }
      out += ')';
      return;
    }
  }
}

}  // namespace

SetSpec parse_set(std::string_view text) { return Parser(text).parse_top(); }

double parse_number(std::string_view text) { return Parser(text).parse_number_top(); }

std::string format_set(const SetSpec& spec) {
  std::string out;
  format_into(spec, out);
  return out;
}

std::string format_number(double value) {
  if (value == 0.0) return "0";
  for (int den : {1, 2, 3, 4, 6, 8}) {
    const double num = value * den / kPi;
    const double rounded = std::round(num);
    if (rounded != 0.0 && std::abs(num - rounded) < 1e-12 * std::max(1.0, std::abs(num)) &&
        std::abs(rounded) < 1e6) {
      const long long a = static_cast<long long>(rounded);
      std::string s = a == 1 ? "" : a == -1 ? "-" : std::to_string(a);
      s += "pi";
      if (den != 1) s += "/" + std::to_string(den);
      return s;
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[32];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, value);
    if (std::strtod(shorter, nullptr) == value) return shorter;
  }
  return buf;
}

std::vector<std::string> split_top_level(std::string_view text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& s : out) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  }
  return out;
}

}  // namespace tilesamp
