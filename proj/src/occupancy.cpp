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

#include "lge/occupancy.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "lge/analytics.hpp"
#include "lge/parallel.hpp"
#include "lge/rng.hpp"

namespace lge {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

struct Evaluation {
  double value;  // min over Q of the singleton probability
  unsigned worst_q;
  double willard;
};

Evaluation evaluate(const SimplexVector& p, unsigned n) {
  const Eigen::VectorXd profile = singleton_profile(p, n);
  Eigen::Index arg = 0;
  const double value = profile.minCoeff(&arg);
  double f = 0.0;
  for (Eigen::Index i = 0; i < profile.size(); ++i) f += profile(i) / static_cast<double>(i + 2);
  return {value, static_cast<unsigned>(arg + 2), f};
}

struct StartOutcome {
  SimplexVector best = SimplexVector::uniform(1);
  Evaluation eval{};
  bool exhausted = false;
  std::uint64_t evaluations = 0;
  std::uint64_t violations = 0;
};

// Nelder-Mead on the first L-1 coordinates; the last one is implied and
// every trial point is projected back onto the simplex.
StartOutcome nelder_mead(const Eigen::VectorXd& start, unsigned n, std::uint64_t budget,
                         double harmonic_gap) {
  const Eigen::Index L = start.size();
  const Eigen::Index dim = L - 1;
  StartOutcome out;

  auto to_simplex = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd full(L);
    full.head(dim) = x;
    full(dim) = 1.0 - x.sum();
    return SimplexVector(project_to_simplex(full));
  };
  auto cost = [&](const Eigen::VectorXd& x) {
    const SimplexVector p = to_simplex(x);
    const Evaluation e = evaluate(p, n);
    ++out.evaluations;
    const bool all_below_one = p.probs().maxCoeff() < 1.0;
    const double slack = 1e-12 * std::max(1.0, e.willard);
    if (e.value * harmonic_gap > e.willard + slack ||
        (all_below_one && !(e.willard < static_cast<double>(L - 1)))) {
      ++out.violations;
    }
    if (out.evaluations == 1 || e.value > out.eval.value) {
      out.eval = e;
      out.best = p;
    }
    return -e.value;
  };

  Eigen::MatrixXd vertices(dim, dim + 1);
  Eigen::VectorXd costs(dim + 1);
  vertices.col(0) = start.head(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    Eigen::VectorXd v = start.head(dim);
    v(i) += (v(i) + 0.1 <= 1.0) ? 0.1 : -0.1;
    vertices.col(i + 1) = v;
  }
  for (Eigen::Index i = 0; i <= dim; ++i) costs(i) = cost(vertices.col(i));

  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim + 1));
  for (std::uint64_t iter = 0;; ++iter) {
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index a, Eigen::Index b) { return costs(a) < costs(b); });
    const Eigen::Index best = order.front();
    const Eigen::Index worst = order.back();
    const Eigen::Index second = order[order.size() - 2];

    double spread = 0.0;
    for (Eigen::Index i = 0; i <= dim; ++i) {
      spread = std::max(spread, (vertices.col(i) - vertices.col(best)).lpNorm<Eigen::Infinity>());
    }
    if (spread < 1e-10 && costs(worst) - costs(best) < 1e-14) break;
    if (iter >= budget) {
      out.exhausted = true;
      break;
    }

    const Eigen::VectorXd centroid =
        (vertices.rowwise().sum() - vertices.col(worst)) / static_cast<double>(dim);
    const Eigen::VectorXd reflected = centroid + (centroid - vertices.col(worst));
    const double c_ref = cost(reflected);
    if (c_ref < costs(best)) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - vertices.col(worst));
      const double c_exp = cost(expanded);
      if (c_exp < c_ref) {
        vertices.col(worst) = expanded;
        costs(worst) = c_exp;
      } else {
        vertices.col(worst) = reflected;
        costs(worst) = c_ref;
      }
      continue;
    }
    if (c_ref < costs(second)) {
      vertices.col(worst) = reflected;
      costs(worst) = c_ref;
      continue;
    }
    const bool outside = c_ref < costs(worst);
    const Eigen::VectorXd contracted =
        outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                : Eigen::VectorXd(centroid + 0.5 * (vertices.col(worst) - centroid));
    const double c_con = cost(contracted);
    if (c_con < std::min(c_ref, costs(worst))) {
      vertices.col(worst) = contracted;
      costs(worst) = c_con;
      continue;
    }
    for (Eigen::Index i = 0; i <= dim; ++i) {
      if (i == best) continue;
      vertices.col(i) = vertices.col(best) + 0.5 * (vertices.col(i) - vertices.col(best));
      costs(i) = cost(vertices.col(i));
    }
  }
  return out;
}

Eigen::VectorXd dirichlet_start(Eigen::Index L, StreamRng& rng) {
  Eigen::VectorXd v(L);
  for (Eigen::Index i = 0; i < L; ++i) v(i) = -std::log(rng.uniform_open());
  return v / v.sum();
}

}  // namespace

SimplexVector::SimplexVector(Eigen::VectorXd probs) : probs_(std::move(probs)) {
  require(probs_.size() >= 1, "simplex vector needs at least one urn");
  require(probs_.allFinite() && probs_.minCoeff() >= 0.0, "urn probabilities must be >= 0");
  require(std::abs(probs_.sum() - 1.0) <= 1e-12, "urn probabilities must sum to 1");
}

SimplexVector SimplexVector::uniform(Eigen::Index urns) {
  require(urns >= 1, "simplex vector needs at least one urn");
  return SimplexVector(Eigen::VectorXd::Constant(urns, 1.0 / static_cast<double>(urns)));
}

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v) {
  const Eigen::Index L = v.size();
  Eigen::VectorXd sorted = v;
  std::sort(sorted.data(), sorted.data() + L, std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (Eigen::Index i = 0; i < L; ++i) {
    cumulative += sorted(i);
    const double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (sorted(i) - candidate > 0.0) shift = candidate;
  }
  Eigen::VectorXd out = (v.array() - shift).max(0.0).matrix();
  return out / out.sum();
}

double singleton_prob_single_urn(const SimplexVector& pvec, unsigned ball_count,
                                 Eigen::Index urn) {
  require(ball_count >= 2, "ball count must be at least 2");
  require(urn >= 0 && urn < pvec.size(), "urn index out of range");
  const double pi = pvec[urn];
  return static_cast<double>(ball_count) * pi * std::pow(1.0 - pi, ball_count - 1);
}

double singleton_union_bound(const SimplexVector& pvec, unsigned ball_count) {
  require(ball_count >= 2, "ball count must be at least 2");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < pvec.size(); ++i) acc += singleton_prob_single_urn(pvec, ball_count, i);
  return acc;
}

Eigen::VectorXd singleton_profile(const SimplexVector& pvec, unsigned n) {
  require(n >= 2, "need n >= 2 balls");
  const Eigen::Index L = pvec.size();
  if (L > kMaxExactUrns) {
    throw std::invalid_argument("exact singleton probability supports at most " +
                                std::to_string(kMaxExactUrns) + " urns");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n - 1);
  const std::uint32_t full = (std::uint32_t{1} << L) - 1;
  // Pr[every urn in T is a singleton] = Q!/(Q-t)! prod_T p_i (sum_{not T} p_i)^(Q-t).
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const unsigned t = static_cast<unsigned>(std::popcount(mask));
    if (t > n) continue;
    double prod = 1.0;
    double rest = 0.0;
    for (Eigen::Index i = 0; i < L; ++i) {
      if (mask & (std::uint32_t{1} << i)) {
        prod *= pvec[i];
      } else {
        rest += pvec[i];
      }
    }
    if (prod == 0.0) continue;
    const double sign = (t % 2 == 1) ? 1.0 : -1.0;
    // Q = t, then t+1, ...: falling factorial Q!/(Q-t)! and rest^(Q-t).
    double falling = 1.0;
    for (unsigned j = 0; j < t; ++j) falling *= static_cast<double>(t - j);
    double rest_pow = 1.0;
    for (unsigned Q = t; Q <= n; ++Q) {
      if (Q >= 2) out(Q - 2) += sign * falling * prod * rest_pow;
      falling = falling * static_cast<double>(Q + 1) / static_cast<double>(Q + 1 - t);
      rest_pow *= rest;
    }
  }
  return out;
}

double singleton_prob_exact(const SimplexVector& pvec, unsigned ball_count) {
  require(ball_count >= 2, "ball count must be at least 2");
  return singleton_profile(pvec, ball_count)(ball_count - 2);
}

double willard_f(const SimplexVector& pvec, unsigned n) {
  const Eigen::VectorXd profile = singleton_profile(pvec, n);
  double f = 0.0;
  for (Eigen::Index i = 0; i < profile.size(); ++i) f += profile(i) / static_cast<double>(i + 2);
  return f;
}

double msp_bound(unsigned L, unsigned n) {
  require(L >= 1, "need at least one urn");
  require(n >= 2, "need n >= 2");
  return static_cast<double>(L - 1) / (harmonic(n) - 1.0);
}

MspResult msp_search(unsigned L, unsigned n, std::uint64_t budget, std::uint64_t seed,
                     const MspOptions& opts) {
  require(L >= 1 && L <= 6, "msp_search supports 1 <= L <= 6");
  require(n >= 2 && n <= 200, "msp_search supports 2 <= n <= 200");
  require(opts.starts >= 1, "need at least one start");

  MspResult result;
  result.L = L;
  result.n = n;
  result.bound = msp_bound(L, n);
  if (L == 1) {
    // One urn holds every ball; no singleton once Q >= 2.
    result.best_vector = SimplexVector::uniform(1);
    result.value = 0.0;
    result.worst_q = 2;
    result.evaluations = 1;
    return result;
  }

  const double harmonic_gap = harmonic(n) - 1.0;
  std::vector<StartOutcome> outcomes(opts.starts);
  std::atomic<unsigned> next{0};
  auto work = [&] {
    for (unsigned s = next++; s < opts.starts; s = next++) {
      Eigen::VectorXd start;
      if (s == 0) {
        start = SimplexVector::uniform(L).probs();
      } else {
        StreamRng rng(seed, s);
        start = dirichlet_start(L, rng);
      }
      outcomes[s] = nelder_mead(start, n, budget, harmonic_gap);
    }
  };
  const unsigned workers = std::min(resolve_threads(opts.threads), opts.starts);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  // Strictly greater keeps the lowest start index on ties.
  std::size_t best = 0;
  for (std::size_t s = 0; s < outcomes.size(); ++s) {
    if (outcomes[s].eval.value > outcomes[best].eval.value) best = s;
    result.evaluations += outcomes[s].evaluations;
    result.sandwich_violations += outcomes[s].violations;
    result.budget_exhausted = result.budget_exhausted || outcomes[s].exhausted;
  }
  result.best_vector = outcomes[best].best;
  result.value = outcomes[best].eval.value;
  result.worst_q = outcomes[best].eval.worst_q;
  return result;
}

double random_bits_threshold(double n) {
  require(n >= 2.0, "need n >= 2");
  return std::log2(0.5 * std::log(n) + 0.5 * (1.0 + kEulerGamma));
}

}  // namespace lge
