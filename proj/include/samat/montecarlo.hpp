// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The samat authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SAMAT_MONTECARLO_HPP
#define SAMAT_MONTECARLO_HPP

#include "samat/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace samat {

/// Sample mean of a per-trial rate, in bits/s/Hz.
struct RateEstimate {
  double mean_bits = 0.0;
  double stderr_bits = 0.0;  // sample standard deviation / sqrt(trials)
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Standard error of the difference of two independent estimates.
inline double combined_stderr(const RateEstimate& a, const RateEstimate& b) {
  return std::hypot(a.stderr_bits, b.stderr_bits);
}

/// Worker count used by parallel loops; 0 means hardware concurrency.
inline unsigned& worker_count() {
  static unsigned count = 0;
  return count;
}

/// Calls fn(i) for i in [0, n) on a pool of threads. Work is split in
/// contiguous blocks, so each index is visited exactly once.
template <typename Fn>
void parallel_for(std::int64_t n, Fn&& fn) {
  if (n <= 0) return;
  unsigned threads = worker_count() ? worker_count() : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::int64_t>(n, 64))));
  if (threads == 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::int64_t block = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::int64_t begin = t * block;
    const std::int64_t end = std::min(n, begin + block);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::int64_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

/// Mean and standard error of per-trial samples, reduced in index order.
inline RateEstimate summarize(const std::vector<double>& samples, std::uint64_t seed) {
  RateEstimate est;
  est.trials = static_cast<std::int64_t>(samples.size());
  est.seed = seed;
  if (samples.empty()) return est;

  double sum = 0.0;
  for (double s : samples) sum += s;
  const double mean = sum / static_cast<double>(samples.size());
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  est.mean_bits = mean;
  if (samples.size() > 1) {
    const double var = ss / static_cast<double>(samples.size() - 1);
    est.stderr_bits = std::sqrt(var / static_cast<double>(samples.size()));
  }
  return est;
}

/// Runs `trials` independent trials; sample(SeedSpec) returns one value.
/// The result depends only on (trials, seed), never on the thread count.
template <typename Sample>
RateEstimate monte_carlo(std::int64_t trials, std::uint64_t seed, Sample&& sample) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  std::vector<double> values(static_cast<std::size_t>(trials));
  parallel_for(trials, [&](std::int64_t i) {
    values[static_cast<std::size_t>(i)] = sample(SeedSpec{seed, static_cast<std::uint64_t>(i)});
  });
  return summarize(values, seed);
}

}  // namespace samat

#endif  // SAMAT_MONTECARLO_HPP
