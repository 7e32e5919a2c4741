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

#include <cstdint>
#include <limits>
#include <random>

namespace lge {

/// SplitMix64 step: advances `state` and returns a well-mixed 64-bit word.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Independent random stream identified by (master seed, stream index).
///
/// The pair is hashed through SplitMix64 into the seed sequence of a
/// Mersenne twister, so stream k of a given master seed is the same no
/// matter which thread or in which order it is consumed.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  StreamRng(std::uint64_t master_seed, std::uint64_t stream_index);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }

  result_type operator()() { return engine_(); }

  /// Uniform double strictly inside (0,1): (k + 1/2) 2^-52 with k a 52-bit
  /// word. k + 1/2 needs 53 significant bits, so the sum is exact and the
  /// largest value stays below 1.
  double uniform_open() { return to_open_unit(word52()); }

  /// The 52-bit word behind the next uniform_open().
  std::uint64_t word52() { return engine_() >> 12; }

  /// Monotone map from a 52-bit word to the value uniform_open() would give.
  static double to_open_unit(std::uint64_t k) {
    constexpr double kScale = 1.0 / 4503599627370496.0;  // 2^-52
    return (static_cast<double>(k) + 0.5) * kScale;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lge
