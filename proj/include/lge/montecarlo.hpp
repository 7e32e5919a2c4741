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

// Empirical estimates of the analytic quantities, each reported next to its
// analytic value with a standard error and z-score.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lge/geo_param.hpp"

namespace lge {

struct EstimateReport {
  std::string quantity;
  std::uint64_t trials = 0;
  std::uint64_t count = 0;  // hits, for proportions
  double empirical = 0.0;
  double analytic = 0.0;
  double std_error = 0.0;
  double z_score = 0.0;
};

struct McOptions {
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Binomial standard error sqrt(p(1-p)/N); Wilson score half-width (z = 1)
/// when fewer than 10 hits or misses were seen.
double proportion_std_error(std::uint64_t count, std::uint64_t trials);

EstimateReport proportion_report(std::string quantity, std::uint64_t count,
                                 std::uint64_t trials, double analytic);

/// Frequencies of W from direct geometric draws, one report per observed a.
std::vector<EstimateReport> estimate_survivor_pmf(std::uint64_t n, const GeoParam& param,
                                                  std::uint64_t trials,
                                                  const McOptions& opts = {});

/// Sample means of W and M against expected_survivors and expected_max_exact.
std::vector<EstimateReport> estimate_means(std::uint64_t n, const GeoParam& param,
                                           std::uint64_t trials, const McOptions& opts = {});

struct MaxTailReport {
  EstimateReport estimate;  // analytic = n^(1-C)
  double threshold = 0.0;
  double exact_tail = 0.0;  // 1 - (1 - q^floor(threshold))^n
  bool pass = false;        // empirical <= bound + 3 stdError
};

/// Exceedance frequency of C ln n / ln Q by the maximum of n draws.
MaxTailReport estimate_max_tail(std::uint64_t n, const GeoParam& param, double C,
                                std::uint64_t trials, const McOptions& opts = {});

struct PhaseSurvivorReport {
  unsigned digit_index = 0;
  std::vector<EstimateReport> bins;
  std::uint64_t max_survivors = 0;
  /// Pr[some draw reaches 3^(L+1)], an upper bound on the total-variation
  /// distance between the phase survivor count and W.
  double truncation_budget = 0.0;
  /// Truncation may be visible at this sample size (budget >= 1/trials).
  bool regime_mismatch = false;
};

/// Survivor counts of full protocol phases against the W pmf.
PhaseSurvivorReport estimate_phase_survivors(std::uint64_t n, const GeoParam& param,
                                             unsigned L, std::uint64_t trials,
                                             const McOptions& opts = {});

}  // namespace lge
