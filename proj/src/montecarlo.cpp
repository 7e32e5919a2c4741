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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "lge/analytics.hpp"
#include "lge/parallel.hpp"
#include "lge/protocol.hpp"

namespace lge {
namespace {

struct Histogram {
  std::vector<std::uint64_t> counts;

  Histogram& operator+=(const Histogram& other) {
    if (counts.size() < other.counts.size()) counts.resize(other.counts.size(), 0);
    for (std::size_t i = 0; i < other.counts.size(); ++i) counts[i] += other.counts[i];
    return *this;
  }
};

struct Moments {
  std::uint64_t sum_w = 0, sum_w2 = 0, sum_m = 0, sum_m2 = 0;

  Moments& operator+=(const Moments& o) {
    sum_w += o.sum_w;
    sum_w2 += o.sum_w2;
    sum_m += o.sum_m;
    sum_m2 += o.sum_m2;
    return *this;
  }
};

struct Extreme {
  std::uint64_t max;
  std::uint64_t multiplicity;
};

// Maximum of n Geo(p) draws and how many draws attain it. The inverse-CDF
// sampler is nonincreasing in u, so the maximum belongs to the smallest
// uniform and only uniforms near it need a logarithm.
Extreme draw_extreme(std::uint64_t n, const GeoParam& param, StreamRng& rng,
                     std::vector<std::uint64_t>& scratch) {
  scratch.resize(n);
  std::uint64_t k_min = ~0ull;
  for (auto& k : scratch) {
    k = rng.word52();
    k_min = std::min(k_min, k);
  }
  const std::uint64_t top = sample_geometric(param, StreamRng::to_open_unit(k_min));
  const double cutoff = std::exp(static_cast<double>(top - 1) * param.log_q()) * (1.0 + 1e-9);
  std::uint64_t mult = 0;
  for (std::uint64_t k : scratch) {
    const double u = StreamRng::to_open_unit(k);
    if (u <= cutoff && sample_geometric(param, u) == top) ++mult;
  }
  return {top, mult};
}

std::uint64_t draw_max(std::uint64_t n, const GeoParam& param, StreamRng& rng) {
  std::uint64_t k_min = ~0ull;
  for (std::uint64_t i = 0; i < n; ++i) k_min = std::min(k_min, rng.word52());
  return sample_geometric(param, StreamRng::to_open_unit(k_min));
}

void check_trials(std::uint64_t trials) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
}

}  // namespace

double proportion_std_error(std::uint64_t count, std::uint64_t trials) {
  check_trials(trials);
  const auto N = static_cast<double>(trials);
  const double phat = static_cast<double>(count) / N;
  if (count >= 10 && trials - count >= 10) return std::sqrt(phat * (1.0 - phat) / N);
  // Wilson score interval half-width at z = 1.
  return std::sqrt(phat * (1.0 - phat) / N + 1.0 / (4.0 * N * N)) / (1.0 + 1.0 / N);
}

EstimateReport proportion_report(std::string quantity, std::uint64_t count,
                                 std::uint64_t trials, double analytic) {
  EstimateReport r;
  r.quantity = std::move(quantity);
  r.trials = trials;
  r.count = count;
  r.empirical = static_cast<double>(count) / static_cast<double>(trials);
  r.analytic = analytic;
  r.std_error = proportion_std_error(count, trials);
  r.z_score = (r.empirical - r.analytic) / r.std_error;
  return r;
}

std::vector<EstimateReport> estimate_survivor_pmf(std::uint64_t n, const GeoParam& param,
                                                  std::uint64_t trials, const McOptions& opts) {
  check_trials(trials);
  if (n < 1) throw std::invalid_argument("need at least one contender");
  const Histogram hist = run_batched(
      trials, opts.seed, opts.threads, [n] { return Histogram{std::vector<std::uint64_t>(n + 1, 0)}; },
      [&](Histogram& h, StreamRng& rng, std::uint64_t count) {
        std::vector<std::uint64_t> scratch;
        for (std::uint64_t t = 0; t < count; ++t) ++h.counts[draw_extreme(n, param, rng, scratch).multiplicity];
      });

  const SurvivorPmf pmf = survivor_pmf(n, param);
  std::vector<EstimateReport> out;
  for (std::uint64_t a = 1; a <= n; ++a) {
    if (hist.counts[a] == 0) continue;
    out.push_back(proportion_report(fmt::format("Pr[W={}]", a), hist.counts[a], trials, pmf(a)));
  }
  return out;
}

std::vector<EstimateReport> estimate_means(std::uint64_t n, const GeoParam& param,
                                           std::uint64_t trials, const McOptions& opts) {
  check_trials(trials);
  if (n < 1) throw std::invalid_argument("need at least one contender");
  const Moments mom = run_batched(
      trials, opts.seed, opts.threads, [] { return Moments{}; },
      [&](Moments& m, StreamRng& rng, std::uint64_t count) {
        std::vector<std::uint64_t> scratch;
        for (std::uint64_t t = 0; t < count; ++t) {
          const Extreme e = draw_extreme(n, param, rng, scratch);
          m.sum_w += e.multiplicity;
          m.sum_w2 += e.multiplicity * e.multiplicity;
          m.sum_m += e.max;
          m.sum_m2 += e.max * e.max;
        }
      });

  const auto N = static_cast<double>(trials);
  auto mean_report = [&](std::string label, std::uint64_t s, std::uint64_t s2, double analytic) {
    EstimateReport r;
    r.quantity = std::move(label);
    r.trials = trials;
    r.empirical = static_cast<double>(s) / N;
    r.analytic = analytic;
    const double var = std::max(0.0, static_cast<double>(s2) / N - r.empirical * r.empirical);
    r.std_error = std::sqrt(var * N / std::max(1.0, N - 1.0) / N);
    r.z_score = r.std_error > 0.0 ? (r.empirical - analytic) / r.std_error
                                  : (r.empirical == analytic ? 0.0 : INFINITY);
    return r;
  };
  return {mean_report("E[W]", mom.sum_w, mom.sum_w2, expected_survivors(n, param)),
          mean_report("E[M]", mom.sum_m, mom.sum_m2, expected_max_exact(n, param))};
}

MaxTailReport estimate_max_tail(std::uint64_t n, const GeoParam& param, double C,
                                std::uint64_t trials, const McOptions& opts) {
  check_trials(trials);
  const MaxTailBound b = max_geo_tail_bound(n, param, C);
  struct Count {
    std::uint64_t hits = 0;
    Count& operator+=(const Count& o) {
      hits += o.hits;
      return *this;
    }
  };
  const Count c = run_batched(trials, opts.seed, opts.threads, [] { return Count{}; },
                              [&](Count& acc, StreamRng& rng, std::uint64_t count) {
                                for (std::uint64_t t = 0; t < count; ++t) {
                                  if (static_cast<double>(draw_max(n, param, rng)) > b.threshold) ++acc.hits;
                                }
                              });
  MaxTailReport r;
  r.estimate = proportion_report(fmt::format("Pr[M>{:.6g}]", b.threshold), c.hits, trials, b.bound);
  r.threshold = b.threshold;
  r.exact_tail = max_geo_exact_tail(n, param, b.threshold);
  r.pass = r.estimate.empirical <= b.bound + 3.0 * r.estimate.std_error;
  return r;
}

PhaseSurvivorReport estimate_phase_survivors(std::uint64_t n, const GeoParam& param, unsigned L,
                                             std::uint64_t trials, const McOptions& opts) {
  check_trials(trials);
  if (n < 1) throw std::invalid_argument("need at least one contender");
  const std::uint64_t cap = key_capacity(L);
  const Histogram hist = run_batched(
      trials, opts.seed, opts.threads, [n] { return Histogram{std::vector<std::uint64_t>(n + 1, 0)}; },
      [&](Histogram& h, StreamRng& rng, std::uint64_t count) {
        for (std::uint64_t t = 0; t < count; ++t) {
          ++h.counts[lge_phase(static_cast<std::size_t>(n), param, L, rng, false).survivor_count];
        }
      });

  PhaseSurvivorReport out;
  out.digit_index = L;
  out.truncation_budget = max_geo_exact_tail(n, param, static_cast<double>(cap - 1));
  out.regime_mismatch = out.truncation_budget >= 1.0 / static_cast<double>(trials);
  const SurvivorPmf pmf = survivor_pmf(n, param);
  for (std::uint64_t a = 1; a <= n; ++a) {
    if (hist.counts[a] == 0) continue;
    out.max_survivors = a;
    out.bins.push_back(
        proportion_report(fmt::format("Pr[survivors={}]", a), hist.counts[a], trials, pmf(a)));
  }
  return out;
}

}  // namespace lge
