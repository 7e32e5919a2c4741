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

// CSV (RFC 4180, header row) and JSON (stable field order) encodings of the
// toolkit's reports. Reals are written in shortest round-trip form.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lge/montecarlo.hpp"
#include "lge/occupancy.hpp"
#include "lge/protocol.hpp"

namespace lge::io {

using Json = nlohmann::ordered_json;

std::string format_real(double x);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void row(const std::vector<std::string>& fields);

  static std::string cell(double x) { return format_real(x); }
  static std::string cell(std::uint64_t x) { return std::to_string(x); }
  static std::string cell(bool x) { return x ? "1" : "0"; }
  static std::string cell(std::string_view s) { return std::string(s); }

 private:
  std::ostream& out_;
};

Json to_json(const EstimateReport& r);
Json to_json(const MaxTailReport& r);
Json to_json(const PhaseSurvivorReport& r);
Json to_json(const MspResult& r);

/// {n, p, L, survivorCount, slots}
Json phase_summary(std::size_t n, double p, unsigned L, std::size_t survivor_count);

/// Columns: slotIndex, beepersCount, channelBusy.
void write_trace_csv(std::ostream& out, const ElectionTrace& trace);

/// Columns: a, count, frequency, analytic, z.
void write_histogram_csv(std::ostream& out, const std::vector<EstimateReport>& bins);

/// Columns: L, n, searchValue, bound.
void write_msp_sweep_csv(std::ostream& out, const std::vector<MspResult>& results);

}  // namespace lge::io
