// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

#include "tilesamp/boyd.hpp"

#include <algorithm>
#include <cmath>

#include "tilesamp/kernels.hpp"
#include "tilesamp/random.hpp"

namespace tilesamp {

bool PowerResult::converged() const {
  return std::all_of(restarts.begin(), restarts.end(),
                     [](const RestartTrace& t) { return t.converged; });
}

double PowerResult::spread() const {
  if (restarts.empty() || value <= 0.0 || !std::isfinite(value)) return 0.0;
  double lo = restarts.front().ratio;
  for (const auto& t : restarts) lo = std::min(lo, t.ratio);
  return (value - lo) / value;
}

double norm_ratio(const LinearMap& A, std::span<const cdouble> x, double p) {
  const double den = A.in_weight * kernels::pow_sum(x, p);
  if (den == 0.0) return 0.0;
  ComplexVector y(A.out_dim);
  A.apply(x, y);
  return std::pow(A.out_weight * kernels::pow_sum(y, p) / den, 1.0 / p);
}

std::vector<ComplexVector> restart_vectors(std::size_t dim, std::uint64_t seed, int count) {
  std::vector<ComplexVector> out;
  for (int r = 0; r < count; ++r)
    out.push_back(random_complex_vector(dim, derive_seed(seed, "restart", static_cast<std::uint64_t>(r))));
  return out;
}

namespace {

void normalize(std::span<cdouble> x, double p) {
  const double n = std::pow(kernels::pow_sum(x, p), 1.0 / p);
  if (n > 0.0) kernels::scale(x, 1.0 / n);
}

// |v|^(p-2) v, with 0 at v = 0.
void signed_power(std::span<const cdouble> v, std::span<cdouble> out, double p) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    out[i] = a > 0.0 ? v[i] * std::pow(a, p - 2.0) : cdouble(0.0);
  }
}

double sum_sq(std::span<const cdouble> v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return s;
}

// One ascent step on a subspace. The Boyd update P psi_q(A^H psi_p(Ax)) need
// not increase the ratio once P is applied, so it is kept only when it does;
// otherwise a backtracking step along the projected gradient of
// log ||Ax||_p - log ||x||_p is taken. Returns false at a stationary point.
bool projected_step(const LinearMap& A, double p, double q, ComplexVector& x, const ComplexVector& y,
                    double ratio, double& step) {
  ComplexVector u(y.size());
  ComplexVector z(x.size());
  kernels::duality_map(y, u, p);
  A.adjoint(u, z);
  ComplexVector cand(x.size());
  kernels::duality_map(z, cand, q);
  A.project(cand);
  normalize(cand, p);
  if (norm_ratio(A, cand, p) > ratio) {
    x.swap(cand);
    return true;
  }

  const double sy = kernels::pow_sum(y, p);
  const double sx = kernels::pow_sum(x, p);
  signed_power(y, u, p);
  A.adjoint(u, z);
  ComplexVector g(x.size());
  signed_power(x, g, p);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = z[i] / sy - g[i] / sx;
  A.project(g);
  const double gn = std::sqrt(sum_sq(g));
  if (!(gn > 0.0)) return false;
  const double scale = std::sqrt(sum_sq(x)) / gn;
  for (int k = 0; k < 60; ++k, step *= 0.5) {
    for (std::size_t i = 0; i < x.size(); ++i) cand[i] = x[i] + step * scale * g[i];
    if (norm_ratio(A, cand, p) > ratio) {
      normalize(cand, p);
      x.swap(cand);
      step = std::min(2.0 * step, 1.0);
      return true;
    }
  }
  return false;
}

RestartTrace run_restart(const LinearMap& A, double p, const OptimizerOptions& opts,
                           ComplexVector x) {
  const double q = conjugate_exponent(p);
  RestartTrace out;
  if (A.project) A.project(x);
  normalize(x, p);

  ComplexVector y(A.out_dim);
  ComplexVector z(A.in_dim);
  double step = 1.0;
  double best = -1.0;
  std::vector<double> best_so_far;
  for (int it = 0; it <= opts.max_iterations; ++it) {
    A.apply(x, y);
    const double den = A.in_weight * kernels::pow_sum(x, p);
    const double ratio =
        den > 0.0 ? std::pow(A.out_weight * kernels::pow_sum(y, p) / den, 1.0 / p) : 0.0;
    out.history.push_back(ratio);
    if (ratio > best) {
      best = ratio;
      out.best_input = x;
    }
    best_so_far.push_back(best);
    out.iterations = it;
    const std::size_t w = static_cast<std::size_t>(opts.window);
    if (best_so_far.size() > w) {
      const double old = best_so_far[best_so_far.size() - 1 - w];
      if (best - old <= opts.tolerance * best) {
        out.converged = true;
        break;
      }
    }
    if (it == opts.max_iterations || ratio == 0.0) break;

    if (!A.project) {
      kernels::duality_map(y, y, p);
      A.adjoint(y, z);
      kernels::duality_map(z, x, q);
      normalize(x, p);
    } else if (!projected_step(A, p, q, x, y, ratio, step)) {
      out.converged = true;
      break;
    }
    if (kernels::max_abs(x) == 0.0) break;
  }
  // A zero operator on this start is an exact fixed point.
  if (best <= 0.0) out.converged = true;
  out.ratio = std::max(best, 0.0);
  return out;
}

}  // namespace

PowerResult boyd_power(const LinearMap& A, double p, const OptimizerOptions& opts,
                       const std::vector<ComplexVector>& starts) {
  require_exponent(p);
  if (opts.restarts < 1) throw InvalidArgument("optimizer needs at least one restart");
  if (opts.max_iterations < 1) throw InvalidArgument("optimizer needs at least one iteration");
  if (!A.apply || !A.adjoint) throw InvalidArgument("linear map needs apply and adjoint");
  for (const auto& s : starts)
    if (s.size() != A.in_dim) throw InvalidArgument("start vector has the wrong size");

  const int R = opts.restarts;
  std::vector<RestartTrace> outcomes(static_cast<std::size_t>(R));
#if defined(TILESAMP_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (int r = 0; r < R; ++r) {
    ComplexVector x = static_cast<std::size_t>(r) < starts.size()
                          ? starts[static_cast<std::size_t>(r)]
                          : random_complex_vector(A.in_dim, derive_seed(opts.seed, "restart",
                                                                        static_cast<std::uint64_t>(r)));
    outcomes[static_cast<std::size_t>(r)] = run_restart(A, p, opts, std::move(x));
  }

  PowerResult result;
  for (auto& o : outcomes) {
    if (o.ratio > result.value || result.best_input.empty()) {
      result.value = std::max(result.value, o.ratio);
      result.best_input = o.best_input;
    }
    result.restarts.push_back(std::move(o));
  }
  return result;
}

}  // namespace tilesamp
