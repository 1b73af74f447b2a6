// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

#include "tilesamp/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numeric>

namespace tilesamp::fft {
namespace {

struct PlanKey {
  std::vector<int> extents;
  int sign;
  auto operator<=>(const PlanKey&) const = default;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(const std::vector<int>& extents, int sign) {
    std::lock_guard lock(mutex_);
    PlanKey key{extents, sign};
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t n = std::accumulate(extents.begin(), extents.end(), std::size_t{1},
                                          [](std::size_t a, int b) { return a * static_cast<std::size_t>(b); });
    // FFTW planning is not thread-safe; it happens only under the lock.
    auto* scratch = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft(static_cast<int>(extents.size()), extents.data(), scratch,
                                   scratch, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (plan == nullptr) throw Error("FFTW failed to create a plan");
    plans_.emplace(std::move(key), plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::span<cdouble> data, const std::vector<int>& extents, int sign) {
  std::size_t n = 1;
  for (int e : extents) {
    if (e <= 0) throw InvalidArgument("fft: extents must be positive");
    n *= static_cast<std::size_t>(e);
  }
  if (data.size() != n) throw InvalidArgument("fft: data size does not match extents");
  fftw_plan plan = cache().get(extents, sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace

void forward(std::span<cdouble> data, const std::vector<int>& extents) {
  execute(data, extents, FFTW_FORWARD);
}

void backward(std::span<cdouble> data, const std::vector<int>& extents) {
  execute(data, extents, FFTW_BACKWARD);
}

}  // namespace tilesamp::fft
