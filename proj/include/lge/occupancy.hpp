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

// Urns and balls: Q balls thrown independently into L urns with
// probabilities p_1..p_L. A singleton is an urn holding exactly one ball.
// MSP(L, n) is the best (over p) worst-case (over 2 <= Q <= n) probability
// that a singleton exists; it is bounded by (L-1)/(H_n - 1).

#pragma once

#include <cstdint>

#include <Eigen/Core>

namespace lge {

/// Largest urn count for exact inclusion-exclusion (2^L subsets).
inline constexpr Eigen::Index kMaxExactUrns = 20;

/// Point of the probability simplex: entries >= 0 summing to 1 within 1e-12.
class SimplexVector {
 public:
  explicit SimplexVector(Eigen::VectorXd probs);

  static SimplexVector uniform(Eigen::Index urns);

  const Eigen::VectorXd& probs() const noexcept { return probs_; }
  Eigen::Index size() const noexcept { return probs_.size(); }
  double operator[](Eigen::Index i) const { return probs_(i); }

 private:
  Eigen::VectorXd probs_;
};

/// Euclidean projection onto the probability simplex.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v);

/// Pr[urn `urn` holds exactly one of `ball_count` balls] = Q p_i (1-p_i)^(Q-1).
double singleton_prob_single_urn(const SimplexVector& pvec, unsigned ball_count,
                                 Eigen::Index urn);

/// Q sum_i p_i (1-p_i)^(Q-1), the union bound on the singleton probability.
double singleton_union_bound(const SimplexVector& pvec, unsigned ball_count);

/// Exact Pr[some urn holds exactly one ball] by inclusion-exclusion.
double singleton_prob_exact(const SimplexVector& pvec, unsigned ball_count);

/// Exact singleton probabilities for Q = 2..n in one pass; entry Q-2.
Eigen::VectorXd singleton_profile(const SimplexVector& pvec, unsigned n);

/// f(p) = sum_{Q=2}^{n} Pr[singleton with Q balls] / Q.
double willard_f(const SimplexVector& pvec, unsigned n);

/// (L-1) / (H_n - 1).
double msp_bound(unsigned L, unsigned n);

struct MspOptions {
  unsigned starts = 32;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct MspResult {
  unsigned L = 0;
  unsigned n = 0;
  SimplexVector best_vector = SimplexVector::uniform(1);
  unsigned worst_q = 2;
  double value = 0.0;
  double bound = 0.0;
  /// Some start ran out of iterations before its simplex collapsed.
  bool budget_exhausted = false;
  std::uint64_t evaluations = 0;
  /// Evaluated points where p*(H_n-1) <= f(p) < L-1 failed.
  std::uint64_t sandwich_violations = 0;
};

/// Multi-start Nelder-Mead over the simplex maximizing min_Q Pr[singleton].
/// `budget` is the iteration cap per start. Requires L <= 6, n <= 200.
MspResult msp_search(unsigned L, unsigned n, std::uint64_t budget, std::uint64_t seed,
                     const MspOptions& opts = {});

/// log2(ln(n)/2 + (1+gamma)/2): with this many random bits or fewer, an
/// oblivious election among up to n stations succeeds with probability < 1/2.
double random_bits_threshold(double n);

}  // namespace lge
