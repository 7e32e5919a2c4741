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

#include "lge/montecarlo.hpp"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "lge/analytics.hpp"
#include "lge/rng.hpp"

namespace lge {
namespace {

TEST(StreamRngTest, StreamsAreReproducibleAndDistinct) {
  StreamRng a(5, 3), b(5, 3), c(5, 4), d(6, 3);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
    EXPECT_NE(x, d());
  }
}

TEST(StreamRngTest, OpenUnitInterval) {
  EXPECT_GT(StreamRng::to_open_unit(0), 0.0);
  EXPECT_LT(StreamRng::to_open_unit((1ull << 52) - 1), 1.0);
  EXPECT_LT(StreamRng::to_open_unit(1), StreamRng::to_open_unit(2));
  StreamRng r(1, 0);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) sum += r.uniform_open();
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

TEST(ProportionStdErrorTest, BinomialAndWilson) {
  EXPECT_NEAR(proportion_std_error(500, 1000), std::sqrt(0.25 / 1000), 1e-15);
  // No hits: Wilson half-width at z = 1 is (1/(2N)) / (1 + 1/N).
  const double N = 1e5;
  EXPECT_NEAR(proportion_std_error(0, 100000), (0.5 / N) / (1 + 1 / N), 1e-18);
  EXPECT_GT(proportion_std_error(3, 100000), proportion_std_error(0, 100000));
  EXPECT_GT(proportion_std_error(100000, 100000), 0.0);
  EXPECT_THROW(proportion_std_error(0, 0), std::invalid_argument);
}

TEST(ProportionReportTest, ZScore) {
  const auto r = proportion_report("Pr[x]", 520, 1000, 0.5);
  EXPECT_DOUBLE_EQ(r.empirical, 0.52);
  EXPECT_NEAR(r.z_score, 0.02 / std::sqrt(0.52 * 0.48 / 1000), 1e-12);
}

TEST(EstimateSurvivorPmfTest, TwoContenders) {
  const auto bins = estimate_survivor_pmf(2, GeoParam(0.5), 200000, {7, 1});
  ASSERT_EQ(bins.size(), 2u);
  EXPECT_EQ(bins[0].quantity, "Pr[W=1]");
  EXPECT_DOUBLE_EQ(bins[0].analytic, survivor_pmf_series(2, GeoParam(0.5), 1));
  EXPECT_EQ(bins[0].count + bins[1].count, 200000u);
  for (const auto& b : bins) EXPECT_LT(std::abs(b.z_score), 4.0) << b.quantity;
}

TEST(EstimateSurvivorPmfTest, ReproducibleAcrossThreadCounts) {
  const auto one = estimate_survivor_pmf(30, GeoParam(0.2), 50000, {11, 1});
  const auto four = estimate_survivor_pmf(30, GeoParam(0.2), 50000, {11, 4});
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].count, four[i].count);
    EXPECT_EQ(one[i].quantity, four[i].quantity);
  }
  const auto other = estimate_survivor_pmf(30, GeoParam(0.2), 50000, {12, 1});
  EXPECT_NE(one[0].count, other[0].count);
}

// 10^5 trials per cell; at |z| <= 3 about 99.7% of well-populated bins
// should agree, so at least 99% of them must.
TEST(EstimateSurvivorPmfTest, ZScoreGrid) {
  int cells = 0, within = 0;
  std::uint64_t seed = 100;
  for (double p : {0.01, 0.1, 1.0 / 3.0, 0.5, 0.9}) {
    for (std::uint64_t n : {2u, 5u, 20u, 100u}) {
      for (const auto& b : estimate_survivor_pmf(n, GeoParam(p), 100000, {++seed, 0})) {
        if (b.analytic * 100000 < 10) continue;
        ++cells;
        within += std::abs(b.z_score) <= 3.0;
      }
    }
  }
  EXPECT_GT(cells, 60);
  EXPECT_GE(within, 0.99 * cells) << within << "/" << cells;
}

TEST(EstimateMeansTest, SurvivorsAndMaximum) {
  const auto r = estimate_means(1000, GeoParam(0.5), 100000, {3, 0});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].quantity, "E[W]");
  EXPECT_EQ(r[1].quantity, "E[M]");
  EXPECT_NEAR(r[0].empirical, r[0].analytic, 3 * r[0].std_error);
  EXPECT_NEAR(r[1].empirical, r[1].analytic, 3 * r[1].std_error);
  EXPECT_DOUBLE_EQ(r[1].analytic, expected_max_exact(1000, GeoParam(0.5)));
}

TEST(EstimateMaxTailTest, ReportsBoundAndExactTail) {
  const auto r = estimate_max_tail(100, GeoParam(0.5), 2.0, 200000, {9, 0});
  EXPECT_NEAR(r.estimate.analytic, 0.01, 1e-15);
  EXPECT_NEAR(r.threshold, 2 * std::log(100.0) / std::log(2.0), 1e-12);
  EXPECT_NEAR(r.exact_tail, 1 - std::pow(1 - std::pow(0.5, 13), 100), 1e-15);
  // The sampler follows the exact law.
  EXPECT_NEAR(r.estimate.empirical, r.exact_tail, 4 * r.estimate.std_error);
  // The fractional threshold leaves the exact tail above n^(1-C).
  EXPECT_GT(r.exact_tail, r.estimate.analytic);
  EXPECT_EQ(r.pass, r.estimate.empirical <= r.estimate.analytic + 3 * r.estimate.std_error);
}

TEST(EstimateMaxTailTest, SmallPPasses) {
  const auto r = estimate_max_tail(100, GeoParam(0.01), 2.0, 200000, {10, 0});
  EXPECT_LT(r.exact_tail, r.estimate.analytic);
  EXPECT_TRUE(r.pass);
}

TEST(EstimatePhaseSurvivorsTest, MatchesSurvivorLaw) {
  const auto r = estimate_phase_survivors(50, GeoParam(0.1), 5, 50000, {4, 0});
  EXPECT_FALSE(r.regime_mismatch);
  EXPECT_LT(r.truncation_budget, 1e-10);
  ASSERT_FALSE(r.bins.empty());
  EXPECT_EQ(r.bins[0].quantity, "Pr[survivors=1]");
  for (const auto& b : r.bins) {
    if (b.analytic * 50000 >= 10) EXPECT_LT(std::abs(b.z_score), 4.0) << b.quantity;
  }
}

TEST(EstimatePhaseSurvivorsTest, FlagsHeavyTruncation) {
  // L = 0 keeps only draws 1 and 2; most phases end in a truncated tie.
  const auto r = estimate_phase_survivors(20, GeoParam(0.1), 0, 2000, {4, 0});
  EXPECT_TRUE(r.regime_mismatch);
  EXPECT_GT(r.truncation_budget, 0.9);
}

TEST(EstimatePhaseSurvivorsTest, ReproducibleAcrossThreadCounts) {
  const auto a = estimate_phase_survivors(40, GeoParam(0.3), 4, 30000, {8, 1});
  const auto b = estimate_phase_survivors(40, GeoParam(0.3), 4, 30000, {8, 3});
  ASSERT_EQ(a.bins.size(), b.bins.size());
  for (std::size_t i = 0; i < a.bins.size(); ++i) EXPECT_EQ(a.bins[i].count, b.bins[i].count);
  EXPECT_EQ(a.max_survivors, b.max_survivors);
}

TEST(MonteCarloTest, RejectsZeroTrials) {
  EXPECT_THROW(estimate_survivor_pmf(5, GeoParam(0.5), 0), std::invalid_argument);
  EXPECT_THROW(estimate_means(5, GeoParam(0.5), 0), std::invalid_argument);
}

}  // namespace
}  // namespace lge
