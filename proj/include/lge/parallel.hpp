// Copyright 2026 The LGE Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "lge/rng.hpp"

namespace lge {

/// Trials per work unit; each unit draws from its own stream.
inline constexpr std::uint64_t kBatchSize = std::uint64_t{1} << 14;

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs `trials` trials in batches of kBatchSize. Batch b uses
/// StreamRng(seed, b) and a fresh accumulator from `make`; `body(acc, rng,
/// count)` fills it. Per-batch accumulators are merged with `+=`, which must
/// be associative and commutative (integer counts) for the result to be
/// independent of the thread count.
template <typename Make, typename Body>
auto run_batched(std::uint64_t trials, std::uint64_t seed, unsigned threads, Make make,
                 Body body) {
  using Acc = decltype(make());
  const std::uint64_t batches = (trials + kBatchSize - 1) / kBatchSize;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(batches, 1)));

  std::vector<Acc> partial(workers, make());
  std::atomic<std::uint64_t> next{0};
  auto work = [&](unsigned w) {
    for (std::uint64_t b = next++; b < batches; b = next++) {
      const std::uint64_t count = std::min(kBatchSize, trials - b * kBatchSize);
      StreamRng rng(seed, b);
      Acc acc = make();
      body(acc, rng, count);
      partial[w] += acc;
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  Acc total = make();
  for (const auto& acc : partial) total += acc;
  return total;
}

}  // namespace lge
