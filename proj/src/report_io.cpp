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

#include "lge/report_io.hpp"

#include <fmt/format.h>

namespace lge::io {
namespace {

// Histogram labels end in "=<a>]".
std::string bin_label(const std::string& quantity) {
  const auto eq = quantity.rfind('=');
  const auto close = quantity.rfind(']');
  if (eq == std::string::npos || close == std::string::npos || close < eq) return quantity;
  return quantity.substr(eq + 1, close - eq - 1);
}

Json json_real(double x) {
  // JSON has no infinities.
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

std::string format_real(double x) { return fmt::format("{}", x); }

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << csv_escape(fields[i]);
  }
  out_ << "\r\n";
}

Json to_json(const EstimateReport& r) {
  Json j;
  j["quantity"] = r.quantity;
  j["trials"] = r.trials;
  j["count"] = r.count;
  j["empirical"] = json_real(r.empirical);
  j["analytic"] = json_real(r.analytic);
  j["stdError"] = json_real(r.std_error);
  j["zScore"] = json_real(r.z_score);
  return j;
}

Json to_json(const MaxTailReport& r) {
  Json j = to_json(r.estimate);
  j["threshold"] = r.threshold;
  j["exactTail"] = r.exact_tail;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const PhaseSurvivorReport& r) {
  Json j;
  j["L"] = r.digit_index;
  j["maxSurvivors"] = r.max_survivors;
  j["truncationBudget"] = r.truncation_budget;
  j["regimeMismatch"] = r.regime_mismatch;
  Json bins = Json::array();
  for (const auto& b : r.bins) bins.push_back(to_json(b));
  j["bins"] = std::move(bins);
  return j;
}

Json to_json(const MspResult& r) {
  Json j;
  j["L"] = r.L;
  j["n"] = r.n;
  Json vec = Json::array();
  for (Eigen::Index i = 0; i < r.best_vector.size(); ++i) vec.push_back(r.best_vector[i]);
  j["bestVector"] = std::move(vec);
  j["worstQ"] = r.worst_q;
  j["value"] = r.value;
  j["bound"] = r.bound;
  return j;
}

Json phase_summary(std::size_t n, double p, unsigned L, std::size_t survivor_count) {
  Json j;
  j["n"] = n;
  j["p"] = p;
  j["L"] = L;
  j["survivorCount"] = survivor_count;
  j["slots"] = 2 * (static_cast<std::size_t>(L) + 1);
  return j;
}

void write_trace_csv(std::ostream& out, const ElectionTrace& trace) {
  CsvWriter csv(out);
  csv.row({"slotIndex", "beepersCount", "channelBusy"});
  for (const auto& s : trace.slots) {
    csv.row({CsvWriter::cell(std::uint64_t{s.slot_index}), CsvWriter::cell(std::uint64_t{s.beepers}),
             CsvWriter::cell(s.channel_busy)});
  }
}

void write_histogram_csv(std::ostream& out, const std::vector<EstimateReport>& bins) {
  CsvWriter csv(out);
  csv.row({"a", "count", "frequency", "analytic", "z"});
  for (const auto& b : bins) {
    csv.row({bin_label(b.quantity), CsvWriter::cell(b.count), CsvWriter::cell(b.empirical),
             CsvWriter::cell(b.analytic), CsvWriter::cell(b.z_score)});
  }
}

void write_msp_sweep_csv(std::ostream& out, const std::vector<MspResult>& results) {
  CsvWriter csv(out);
  csv.row({"L", "n", "searchValue", "bound"});
  for (const auto& r : results) {
    csv.row({CsvWriter::cell(std::uint64_t{r.L}), CsvWriter::cell(std::uint64_t{r.n}),
             CsvWriter::cell(r.value), CsvWriter::cell(r.bound)});
  }
}

}  // namespace lge::io
