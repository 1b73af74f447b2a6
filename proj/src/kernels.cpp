// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

#include "tilesamp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#if defined(TILESAMP_HAVE_OPENMP)
#include <omp.h>
#endif

namespace tilesamp {

void require_exponent(double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw InvalidArgument("exponent p must satisfy 1 < p < inf (got " +
                          std::to_string(p) +
                          "); the endpoints p = 1 and p = inf are not supported");
}

namespace kernels {
namespace {

// |x|^p through |x|^2 to avoid the square root.
inline double abs_pow(cdouble x, double p) {
  const double n2 = std::norm(x);
  if (p == 2.0) return n2;
  if (p == 4.0) return n2 * n2;
  return n2 == 0.0 ? 0.0 : std::pow(n2, 0.5 * p);
}

inline cdouble dual(cdouble x, double p) {
  const double n2 = std::norm(x);
  if (n2 == 0.0) return {0.0, 0.0};
  if (p == 2.0) return x;
  if (p == 4.0) return n2 * x;
  return std::pow(n2, 0.5 * (p - 2.0)) * x;
}

}  // namespace

namespace serial {

double pow_sum(std::span<const cdouble> x, double p) {
  double s = 0.0;
  for (const auto& v : x) s += abs_pow(v, p);
  return s;
}

double max_abs(std::span<const cdouble> x) {
  double m = 0.0;
  for (const auto& v : x) m = std::max(m, std::abs(v));
  return m;
}

void duality_map(std::span<const cdouble> x, std::span<cdouble> out, double p) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = dual(x[i], p);
}

void multiply(std::span<cdouble> x, std::span<const double> m) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] *= m[i];
}

void scale(std::span<cdouble> x, double factor) {
  for (auto& v : x) v *= factor;
}

void fold_residues(std::span<const cdouble> x, const ResidueLists& lists,
                   std::span<cdouble> out) {
  for (std::size_t r = 0; r < lists.classes(); ++r) {
    cdouble acc = 0.0;
    for (std::size_t t = lists.offset[r]; t < lists.offset[r + 1]; ++t)
      acc += x[lists.node[t]];
    out[r] = acc;
  }
}

}  // namespace serial

namespace parallel {

// Fixed blocks summed in order, so the result does not depend on the
// thread count or on the order in which threads finish.
double pow_sum(std::span<const cdouble> x, double p) {
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (x.size() + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
  const auto nb = static_cast<std::int64_t>(blocks);
#if defined(TILESAMP_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(x.size(), lo + kBlock);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += abs_pow(x[i], p);
    partial[static_cast<std::size_t>(b)] = s;
  }
  double s = 0.0;
  for (double v : partial) s += v;
  return s;
}

double max_abs(std::span<const cdouble> x) {
  const auto n = static_cast<std::int64_t>(x.size());
  double m = 0.0;
#if defined(TILESAMP_HAVE_OPENMP)
#pragma omp parallel for schedule(static) reduction(max : m)
#endif
  for (std::int64_t i = 0; i < n; ++i)
    m = std::max(m, std::abs(x[static_cast<std::size_t>(i)]));
  return m;
}

void duality_map(std::span<const cdouble> x, std::span<cdouble> out, double p) {
  const auto n = static_cast<std::int64_t>(x.size());
#if defined(TILESAMP_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = dual(x[k], p);
  }
}

void multiply(std::span<cdouble> x, std::span<const double> m) {
  const auto n = static_cast<std::int64_t>(x.size());
#if defined(TILESAMP_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] *= m[static_cast<std::size_t>(i)];
}

void scale(std::span<cdouble> x, double factor) {
  const auto n = static_cast<std::int64_t>(x.size());
#if defined(TILESAMP_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] *= factor;
}

void fold_residues(std::span<const cdouble> x, const ResidueLists& lists,
                   std::span<cdouble> out) {
  const auto classes = static_cast<std::int64_t>(lists.classes());
#if defined(TILESAMP_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t ri = 0; ri < classes; ++ri) {
    const auto r = static_cast<std::size_t>(ri);
    cdouble acc = 0.0;
    for (std::size_t t = lists.offset[r]; t < lists.offset[r + 1]; ++t)
      acc += x[lists.node[t]];
    out[r] = acc;
  }
}

}  // namespace parallel

bool use_parallel(std::size_t n) {
#if defined(TILESAMP_HAVE_OPENMP)
  return n >= kParallelThreshold && !omp_in_parallel() && omp_get_max_threads() > 1;
#else
  (void)n;
  return false;
#endif
}

double pow_sum(std::span<const cdouble> x, double p) {
  return use_parallel(x.size()) ? parallel::pow_sum(x, p) : serial::pow_sum(x, p);
}

double max_abs(std::span<const cdouble> x) {
  return use_parallel(x.size()) ? parallel::max_abs(x) : serial::max_abs(x);
}

void duality_map(std::span<const cdouble> x, std::span<cdouble> out, double p) {
  if (use_parallel(x.size()))
    parallel::duality_map(x, out, p);
  else
    serial::duality_map(x, out, p);
}

void multiply(std::span<cdouble> x, std::span<const double> m) {
  if (use_parallel(x.size()))
    parallel::multiply(x, m);
  else
    serial::multiply(x, m);
}

void scale(std::span<cdouble> x, double factor) {
  if (use_parallel(x.size()))
    parallel::scale(x, factor);
  else
    serial::scale(x, factor);
}

void fold_residues(std::span<const cdouble> x, const ResidueLists& lists,
                   std::span<cdouble> out) {
  if (use_parallel(x.size()))
    parallel::fold_residues(x, lists, out);
  else
    serial::fold_residues(x, lists, out);
}

}  // namespace kernels
}  // namespace tilesamp
