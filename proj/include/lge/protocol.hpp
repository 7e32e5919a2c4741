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

// Slot-level simulation of one election phase on a beep channel.
//
// Each station draws a geometric value g, zeroes it if g >= 3^(L+1), writes
// it in base 3 as digits b_L..b_0 and maps every digit to two bits
// (0 -> 00, 1 -> 01, 2 -> 10). In slot i a station holding bit 1 beeps; a
// station holding bit 0 listens and withdraws if the channel is busy.
// Slots are numbered from 1.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lge/geo_param.hpp"
#include "lge/rng.hpp"

namespace lge {

/// Keys are packed into 64 bits, so the digit index is capped at 30.
inline constexpr unsigned kMaxDigitIndex = 30;

/// 3^(L+1), the truncation cutoff.
std::uint64_t key_capacity(unsigned L);

/// g if g < 3^(L+1), otherwise 0.
std::uint64_t truncate_draw(std::uint64_t g, unsigned L);

struct TransmissionKey {
  std::vector<std::uint8_t> digits;  // b_0..b_L, least significant first
  std::vector<std::uint8_t> bits;    // f(b_L) .. f(b_0), 2(L+1) symbols

  std::uint64_t value() const;
  std::string bit_string() const;
};

TransmissionKey encode_key(std::uint64_t g, unsigned L);

struct StationState {
  std::size_t id;
  std::uint64_t drawn_value;  // after truncation
  TransmissionKey key;
  bool candidate = true;
};

struct SlotRecord {
  std::size_t slot_index;
  std::size_t beepers;
  bool channel_busy;
};

struct Elimination {
  std::size_t station;
  std::size_t slot_index;
};

struct ElectionTrace {
  std::vector<SlotRecord> slots;
  std::vector<Elimination> eliminations;
  std::vector<std::size_t> survivors;  // ascending station ids
};

/// Runs all 2(L+1) slots for stations holding the given raw draws.
ElectionTrace run_election(std::span<const std::uint64_t> draws, unsigned L);

/// Same protocol on packed keys without a trace; returns the survivor count.
std::size_t count_survivors(std::span<const std::uint64_t> draws, unsigned L);

/// Stations whose truncated draw is maximal (ascending ids).
std::vector<std::size_t> survivors_oracle(std::span<const std::uint64_t> draws, unsigned L);

struct PhaseResult {
  std::size_t survivor_count;
  std::optional<ElectionTrace> trace;  // present only when requested
};

/// One full phase: n geometric draws from `rng`, truncation, election.
PhaseResult lge_phase(std::size_t n, const GeoParam& param, unsigned L, StreamRng& rng,
                      bool keep_trace = true);

/// Convenience overload drawing from StreamRng(seed, 0).
PhaseResult lge_phase(std::size_t n, const GeoParam& param, unsigned L, std::uint64_t seed,
                      bool keep_trace = true);

}  // namespace lge
