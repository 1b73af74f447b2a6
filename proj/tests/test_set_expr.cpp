// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "tilesamp/set_expr.hpp"

using namespace tilesamp;

TEST_CASE("numbers") {
  CHECK(parse_number("2pi") == doctest::Approx(kTwoPi));
  CHECK(parse_number("3pi/2") == doctest::Approx(1.5 * kPi));
  CHECK(parse_number("-pi") == doctest::Approx(-kPi));
  CHECK(parse_number("(1+2)*0.5") == doctest::Approx(1.5));
  CHECK(parse_number("2pi-0.5") == doctest::Approx(kTwoPi - 0.5));
  CHECK(parse_number("1e-3") == doctest::Approx(1e-3));
  CHECK_THROWS_AS(parse_number("pi pi"), ParseError);
  CHECK_THROWS_AS(parse_number("1/0"), InvalidArgument);
  for (double v : {0.0, 1.0, -2.5, kPi, kTwoPi, 1.5 * kPi, kPi / 3.0, 0.1, 1.0 / 3.0, 4.0 / 3.0,
                   kTwoPi - 0.5, 123456.789})
    CHECK(parse_number(format_number(v)) == v);
  CHECK(format_number(kPi) == "pi");
  CHECK(format_number(kTwoPi) == "2pi");
  CHECK(format_number(1.5) == "1.5");
}

TEST_CASE("cube text gives the lower corner") {
  const SetSpec q = parse_set("cube(0,0;2pi)");
  CHECK(q.kind() == SetSpec::Kind::cube);
  CHECK(q.center()[0] == doctest::Approx(kPi));
  CHECK(q.size() == doctest::Approx(kTwoPi));
  const Box b = parse_set("cube(-pi,-pi;2pi)").bounding_box();
  CHECK(b.lo[0] == doctest::Approx(-kPi));
  CHECK(b.hi[1] == doctest::Approx(kPi));
}

TEST_CASE("format and parse round trip") {
  for (const char* text : {"cube(0,0;2pi)", "ball(0,0;3pi/2)", "ball(0.3,-0.2;2.5)", "cube(0;2pi)",
                           "counterexampleK", "union(ball(0,0;1),cube(1,1;2))",
                           "diff(cube(0,0;2pi),ball(0,0;1))",
                           "intersect(cube(0,0;2pi),ball(1,1;2))",
                           "translate(ball(0,0;1);pi,0)"}) {
    CAPTURE(text);
    const SetSpec s = parse_set(text);
    CHECK(parse_set(format_set(s)) == s);
  }
  CHECK(format_set(SetSpec::counterexample_k()) == "counterexampleK");
  CHECK(parse_set("counterexampleK") == SetSpec::counterexample_k());
}

TEST_CASE("parse errors carry a position") {
  try {
    (void)parse_set("cube(0,0;2pi");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() > 0);
  }
  CHECK_THROWS_AS(parse_set("blob(0;1)"), ParseError);
  CHECK_THROWS_AS(parse_set("ball(0,0;-1)"), InvalidArgument);
  CHECK_THROWS_AS(parse_set("union(ball(0;1),ball(0,0;1))"), InvalidArgument);
}

TEST_CASE("top-level splitting ignores nested commas") {
  const auto parts = split_top_level("ball(0,0;pi),cube(-pi,-pi;2pi), counterexampleK");
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == "ball(0,0;pi)");
  CHECK(parts[1] == "cube(-pi,-pi;2pi)");
}
