// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "tilesamp/kernels.hpp"
#include "tilesamp/random.hpp"

using namespace tilesamp;

TEST_CASE("parallel kernels agree with the serial reference") {
  const ComplexVector x = random_complex_vector(100003, 11);
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const double s = kernels::serial::pow_sum(x, p);
    CHECK(kernels::parallel::pow_sum(x, p) == doctest::Approx(s).epsilon(1e-12));
    ComplexVector a(x.size()), b(x.size());
    kernels::serial::duality_map(x, a, p);
    kernels::parallel::duality_map(x, b, p);
    CHECK(a == b);
  }
  CHECK(kernels::parallel::max_abs(x) == kernels::serial::max_abs(x));

  std::vector<double> m(x.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::sin(0.01 * static_cast<double>(i));
  ComplexVector a = x, b = x;
  kernels::serial::multiply(a, m);
  kernels::parallel::multiply(b, m);
  CHECK(a == b);
  kernels::serial::scale(a, 0.25);
  kernels::parallel::scale(b, 0.25);
  CHECK(a == b);

  kernels::ResidueLists lists;
  lists.offset = {0};
  for (std::size_t r = 0; r < 1000; ++r) {
    for (std::size_t t = r; t < x.size(); t += 1000) lists.node.push_back(t);
    lists.offset.push_back(lists.node.size());
  }
  ComplexVector fa(1000), fb(1000);
  kernels::serial::fold_residues(x, lists, fa);
  kernels::parallel::fold_residues(x, lists, fb);
  CHECK(fa == fb);

  std::vector<std::uint8_t> ma(50000), mb(50000);
  auto pred = [](std::size_t i) { return i % 7 == 3; };
  kernels::serial::fill_mask(std::span<std::uint8_t>(ma), pred);
  kernels::parallel::fill_mask(std::span<std::uint8_t>(mb), pred);
  CHECK(ma == mb);
}

TEST_CASE("parallel pow_sum is deterministic") {
  const ComplexVector x = random_complex_vector(1 << 17, 3);
  const double first = kernels::parallel::pow_sum(x, 3.0);
  for (int i = 0; i < 5; ++i) CHECK(kernels::parallel::pow_sum(x, 3.0) == first);
}

TEST_CASE("duality map pairs to the p-th power sum") {
  const ComplexVector x = random_complex_vector(257, 5);
  for (double p : {1.25, 2.0, 3.5, 4.0}) {
    ComplexVector d(x.size());
    kernels::duality_map(x, d, p);
    cdouble pair = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) pair += d[i] * std::conj(x[i]);
    CHECK(pair.real() == doctest::Approx(kernels::pow_sum(x, p)).epsilon(1e-12));
    CHECK(std::abs(pair.imag()) < 1e-9);
  }
  ComplexVector zero(4), out(4, cdouble(1.0));
  kernels::duality_map(zero, out, 1.5);
  for (const auto& v : out) CHECK(v == cdouble(0.0));
}

TEST_CASE("exponent validation") {
  CHECK_THROWS_AS(require_exponent(1.0), InvalidArgument);
  CHECK_THROWS_AS(require_exponent(0.5), InvalidArgument);
  CHECK_THROWS_AS(require_exponent(INFINITY), InvalidArgument);
  CHECK_THROWS_AS(require_exponent(NAN), InvalidArgument);
  CHECK_NOTHROW(require_exponent(1.0001));
  CHECK(conjugate_exponent(4.0) == doctest::Approx(4.0 / 3.0));
}
