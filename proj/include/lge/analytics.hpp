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

// Distribution theory for the maximum of n geometric variates (M) and for the
// number of variates attaining it (W, the survivor count).

#pragma once

#include <cstdint>
#include <stdexcept>

#include <Eigen/Core>

#include "lge/geo_param.hpp"

namespace lge {

inline constexpr double kEulerGamma = 0.57721566490153286;

/// Series cutoff: stop once the remaining tail is below this fraction of the
/// accumulated sum.
inline constexpr double kSeriesTolerance = 1e-16;

/// Largest tolerated ratio between the biggest alternating term and the
/// result before the alternating evaluation is declared untrustworthy.
inline constexpr double kCancellationLimit = 1e12;

/// Raised when a caller insists on the alternating-sum path and it cancels.
class CancellationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inverse-CDF draw: ceil(ln u / ln q), at least 1. `uniform` must be in (0,1).
std::uint64_t sample_geometric(const GeoParam& param, double uniform);

struct MaxTailBound {
  double threshold;  // C ln n / ln Q
  double bound;      // n^(1-C)
};

/// Pr[M > threshold] <= bound for M the maximum of n Geo(p) variates.
///
/// The guarantee is only airtight when the threshold is an integer; for a
/// fractional threshold the true tail is n q^floor(threshold) in leading
/// order. `max_geo_exact_tail` gives the exact value for comparison.
MaxTailBound max_geo_tail_bound(std::uint64_t n, const GeoParam& param, double C);

/// Exact Pr[M > x] = 1 - (1 - q^floor(x))^n.
double max_geo_exact_tail(std::uint64_t n, const GeoParam& param, double x);

// ---------------------------------------------------------------------------
// Survivor count W.

/// Scalar used for the alternating sums: quad precision where the compiler
/// offers it, otherwise the platform long double.
#if defined(__SIZEOF_FLOAT128__) && !defined(LGE_NO_FLOAT128)
using ExtendedReal = __float128;
#else
using ExtendedReal = long double;
#endif

template <typename Real>
struct AlternatingSum {
  Real value;
  Real max_abs_term;
};

/// sum_{b=0}^{m} C(m,b) (-1)^b / (1 - q^(shift+b)).
///
/// Uses only field operations, so it is exact up to the rounding of `Real`.
template <typename Real>
AlternatingSum<Real> alternating_binomial_sum(double q, std::uint64_t m,
                                              std::uint64_t shift) {
  const Real qr = static_cast<Real>(q);
  Real q_pow = 1;
  Real base = qr;
  for (std::uint64_t e = shift; e != 0; e >>= 1) {
    if (e & 1u) q_pow *= base;
    base *= base;
  }
  Real binom = 1;
  Real sum = 0;
  Real max_abs = 0;
  for (std::uint64_t b = 0; b <= m; ++b) {
    const Real term = binom / (Real(1) - q_pow);
    if (term > max_abs) max_abs = term;
    sum += (b % 2 == 0) ? term : -term;
    binom = binom * static_cast<Real>(m - b) / static_cast<Real>(b + 1);
    q_pow *= qr;
  }
  return {sum, max_abs};
}

struct AlternatingPmf {
  double value;
  /// max |term| / |inner sum|.
  double cancellation_ratio;
  bool precision_lost;
};

/// Pr[W_{n,p} = a] as the alternating binomial sum
/// C(n,a) p^a sum_b C(n-a,b) (-1)^b / (1 - q^(a+b)).
///
/// Intended as a cross-check for small n. The flag is raised when the
/// cancellation ratio exceeds kCancellationLimit; the value is still returned.
AlternatingPmf survivor_pmf_alternating(std::uint64_t n, const GeoParam& param,
                                        std::uint64_t a);

/// Pr[W_{n,p} = a] as C(n,a) p^a sum_{k>=0} q^(ka) (1 - q^k)^(n-a).
///
/// Every term is nonnegative; this is the production path.
double survivor_pmf_series(std::uint64_t n, const GeoParam& param,
                           std::uint64_t a, double tol = kSeriesTolerance);

enum class PmfMethod { kAlternatingSum, kSeriesInK };

/// Exact distribution table of W_{n,p}; probs(a-1) = Pr[W = a].
struct SurvivorPmf {
  std::uint64_t n;
  GeoParam param;
  Eigen::VectorXd probs;
  PmfMethod method;

  double operator()(std::uint64_t a) const { return probs(static_cast<Eigen::Index>(a - 1)); }
  double mean() const;
  /// Pr[W >= k].
  double tail(std::uint64_t k) const;
};

/// Whole table. With kAlternatingSum a tripped sentinel throws CancellationError.
SurvivorPmf survivor_pmf(std::uint64_t n, const GeoParam& param,
                         PmfMethod method = PmfMethod::kSeriesInK);

/// E[W_{n,p}] from (np/q) sum_b C(n-1,b) (-1)^b / (1 - q^(b+1)); when that
/// sum cancels, falls back to sum_a a Pr[W = a] over the series pmf.
double expected_survivors(std::uint64_t n, const GeoParam& param);

/// Leading term, proven error envelope and oscillating correction of
/// Pr[W_{n,p} = a] for 0 < a < n.
struct RiceApprox {
  double central;      // p^a / (a ln Q)
  double error_bound;  // (a+1)^2 / (12 a) p^a ln Q
  /// Relative correction: Pr[W = a] = central * (1 + fluctuation).
  double fluctuation;
  int truncation_k;
  /// Absolute bound on the terms |k| > truncation_k left out of fluctuation.
  double residual_bound;

  double value() const { return central * (1.0 + fluctuation); }
};

RiceApprox pmf_rice_approx(std::uint64_t n, const GeoParam& param,
                           std::uint64_t a, int truncation_k = 20);

/// phi_p(a) = p^a/(a ln Q) + (a+1)^2/(12a) p^a ln Q; dominates Pr[W = a].
double phi_bound(const GeoParam& param, std::uint64_t a);

/// phi_p(k) / (1 - 2p), an upper bound on Pr[W >= k] for every n.
/// Throws std::domain_error for p >= 1/2, where the bound is inapplicable.
double survivor_tail_bound(const GeoParam& param, std::uint64_t k);

/// 1/2 + H_n / ln Q (the periodic term and O(1/n) are dropped).
double expected_max_approx(std::uint64_t n, const GeoParam& param);

/// E[M] = sum_{k>=0} (1 - (1 - q^k)^n), truncated once a term drops below tol.
double expected_max_exact(std::uint64_t n, const GeoParam& param,
                          double tol = kSeriesTolerance);

struct RoundsPlan {
  std::uint64_t slots;  // 2 * ceil(log_3(...))
  unsigned digit_index; // L: keys carry digits b_0..b_L
};

/// Slot budget 2 ceil(log_3((ln n + failure_exponent ln 10) / ln Q)).
RoundsPlan rounds_required(std::uint64_t n, const GeoParam& param,
                           double failure_exponent);

/// H_n: exact partial sum up to 10^6, asymptotic expansion beyond.
double harmonic(std::uint64_t n);
double harmonic_asymptotic(std::uint64_t n);

}  // namespace lge
