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

#include "lge/protocol.hpp"

#include <algorithm>
#include <stdexcept>

#include "lge/analytics.hpp"

namespace lge {
namespace {

void check_digit_index(unsigned L) {
  if (L > kMaxDigitIndex) {
    throw std::invalid_argument("digit index L must be at most " +
                                std::to_string(kMaxDigitIndex));
  }
}

// Bits of the key, first slot in the most significant used position.
std::uint64_t pack_key(std::uint64_t g, unsigned L) {
  std::uint64_t packed = 0;
  std::uint64_t scale = key_capacity(L) / 3;  // 3^L
  for (unsigned i = 0; i <= L; ++i) {
    const std::uint64_t digit = g / scale;
    g %= scale;
    scale /= 3;
    packed = (packed << 2) | (digit == 0 ? 0b00u : digit == 1 ? 0b01u : 0b10u);
  }
  return packed;
}

}  // namespace

std::uint64_t key_capacity(unsigned L) {
  check_digit_index(L);
  std::uint64_t cap = 1;
  for (unsigned i = 0; i <= L; ++i) cap *= 3;
  return cap;
}

std::uint64_t truncate_draw(std::uint64_t g, unsigned L) {
  if (g < 1) throw std::invalid_argument("draws are positive integers");
  return g < key_capacity(L) ? g : 0;
}

std::uint64_t TransmissionKey::value() const {
  std::uint64_t v = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) v = 3 * v + *it;
  return v;
}

std::string TransmissionKey::bit_string() const {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

TransmissionKey encode_key(std::uint64_t g, unsigned L) {
  if (g >= key_capacity(L)) {
    throw std::invalid_argument("value does not fit in L+1 base-3 digits");
  }
  TransmissionKey key;
  key.digits.resize(L + 1);
  for (unsigned k = 0; k <= L; ++k) {
    key.digits[k] = static_cast<std::uint8_t>(g % 3);
    g /= 3;
  }
  key.bits.reserve(2 * (L + 1));
  for (unsigned k = L + 1; k-- > 0;) {
    const auto d = key.digits[k];
    key.bits.push_back(d == 2 ? 1 : 0);
    key.bits.push_back(d == 1 ? 1 : 0);
  }
  return key;
}

ElectionTrace run_election(std::span<const std::uint64_t> draws, unsigned L) {
  if (draws.empty()) throw std::invalid_argument("election needs at least one station");

  std::vector<StationState> stations;
  stations.reserve(draws.size());
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const std::uint64_t g = truncate_draw(draws[i], L);
    stations.push_back({i, g, encode_key(g, L), true});
  }

  ElectionTrace trace;
  const std::size_t slots = 2 * (static_cast<std::size_t>(L) + 1);
  trace.slots.reserve(slots);
  for (std::size_t i = 0; i < slots; ++i) {
    std::size_t beepers = 0;
    for (const auto& s : stations) {
      if (s.candidate && s.key.bits[i] == 1) ++beepers;
    }
    const bool busy = beepers > 0;
    trace.slots.push_back({i + 1, beepers, busy});
    if (!busy) continue;
    for (auto& s : stations) {
      if (s.candidate && s.key.bits[i] == 0) {
        s.candidate = false;
        trace.eliminations.push_back({s.id, i + 1});
      }
    }
  }
  for (const auto& s : stations) {
    if (s.candidate) trace.survivors.push_back(s.id);
  }
  return trace;
}

std::size_t count_survivors(std::span<const std::uint64_t> draws, unsigned L) {
  if (draws.empty()) throw std::invalid_argument("election needs at least one station");
  std::vector<std::uint64_t> keys;
  keys.reserve(draws.size());
  for (auto g : draws) keys.push_back(pack_key(truncate_draw(g, L), L));

  const unsigned width = 2 * (L + 1);
  for (unsigned i = 0; i < width && keys.size() > 1; ++i) {
    const std::uint64_t mask = std::uint64_t{1} << (width - 1 - i);
    bool busy = false;
    for (auto k : keys) busy |= (k & mask) != 0;
    if (busy) std::erase_if(keys, [mask](std::uint64_t k) { return (k & mask) == 0; });
  }
  return keys.size();
}

std::vector<std::size_t> survivors_oracle(std::span<const std::uint64_t> draws, unsigned L) {
  if (draws.empty()) throw std::invalid_argument("election needs at least one station");
  std::uint64_t best = 0;
  for (auto g : draws) best = std::max(best, truncate_draw(g, L));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    if (truncate_draw(draws[i], L) == best) out.push_back(i);
  }
  return out;
}

PhaseResult lge_phase(std::size_t n, const GeoParam& param, unsigned L, StreamRng& rng,
                      bool keep_trace) {
  if (n < 1) throw std::invalid_argument("a phase needs at least one station");
  check_digit_index(L);
  std::vector<std::uint64_t> draws(n);
  for (auto& g : draws) g = sample_geometric(param, rng.uniform_open());
  if (!keep_trace) return {count_survivors(draws, L), std::nullopt};
  ElectionTrace trace = run_election(draws, L);
  const std::size_t count = trace.survivors.size();
  return {count, std::move(trace)};
}

PhaseResult lge_phase(std::size_t n, const GeoParam& param, unsigned L, std::uint64_t seed,
                      bool keep_trace) {
  StreamRng rng(seed, 0);
  return lge_phase(n, param, L, rng, keep_trace);
}

}  // namespace lge
