// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference vs OpenMP kernels, plus one full Boyd estimate.

#include <benchmark/benchmark.h>

#include <random>

#include "tilesamp/kernels.hpp"
#include "tilesamp/multiplier.hpp"
#include "tilesamp/set_expr.hpp"

using namespace tilesamp;

namespace {

ComplexVector random_input(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  ComplexVector x(n);
  for (auto& v : x) v = {g(rng), g(rng)};
  return x;
}

void BM_PowSumSerial(benchmark::State& state) {
  const ComplexVector x = random_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::pow_sum(x, 3.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PowSumParallel(benchmark::State& state) {
  const ComplexVector x = random_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::parallel::pow_sum(x, 3.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DualityMapSerial(benchmark::State& state) {
  const ComplexVector x = random_input(static_cast<std::size_t>(state.range(0)));
  ComplexVector out(x.size());
  for (auto _ : state) {
    kernels::serial::duality_map(x, out, 3.0);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DualityMapParallel(benchmark::State& state) {
  const ComplexVector x = random_input(static_cast<std::size_t>(state.range(0)));
  ComplexVector out(x.size());
  for (auto _ : state) {
    kernels::parallel::duality_map(x, out, 3.0);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BallMultiplierNorm(benchmark::State& state) {
  const RasterizedSet mask = rasterize(parse_set("ball(0,0;pi)"), static_cast<int>(state.range(0)));
  const TorusModel model = make_model(mask);
  const MultiplierSpec m = MultiplierSpec::indicator(mask);
  OptimizerOptions o;
  o.restarts = 2;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_multiplier_norm(m, 4.0, model, o).value);
}

}  // namespace

BENCHMARK(BM_PowSumSerial)->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_PowSumParallel)->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_DualityMapSerial)->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_DualityMapParallel)->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_BallMultiplierNorm)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
