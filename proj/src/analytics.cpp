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

#include "lge/analytics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace lge {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// ln(C(n,a) p^a).
double log_binom_power(std::uint64_t n, std::uint64_t a, double log_p) {
  const auto nd = static_cast<double>(n);
  const auto ad = static_cast<double>(a);
  return std::lgamma(nd + 1.0) - std::lgamma(ad + 1.0) - std::lgamma(nd - ad + 1.0) +
         ad * log_p;
}

// ln(C(n,a) p^a). The interleaved product is accurate for moderate a; log
// gamma takes over when the product leaves the double range.
double log_binom_power_accurate(std::uint64_t n, std::uint64_t a, double p) {
  if (a <= 256) {
    double acc = 1.0;
    for (std::uint64_t i = 1; i <= a; ++i) {
      acc *= static_cast<double>(n - a + i) / static_cast<double>(i) * p;
    }
    if (std::isfinite(acc) && acc > std::numeric_limits<double>::min()) return std::log(acc);
  }
  return log_binom_power(n, a, std::log(p));
}

ExtendedReal ext_abs(ExtendedReal x) { return x < 0 ? -x : x; }

}  // namespace

std::uint64_t sample_geometric(const GeoParam& param, double uniform) {
  require(uniform > 0.0 && uniform < 1.0, "uniform variate must lie in (0,1)");
  const double k = std::ceil(std::log(uniform) / param.log_q());
  if (!(k >= 1.0)) return 1;
  return static_cast<std::uint64_t>(k);
}

MaxTailBound max_geo_tail_bound(std::uint64_t n, const GeoParam& param, double C) {
  require(n >= 2, "max_geo_tail_bound needs n >= 2");
  require(C > 1.0, "max_geo_tail_bound needs C > 1");
  const double log_n = std::log(static_cast<double>(n));
  return {C * log_n / param.log_Q(), std::exp((1.0 - C) * log_n)};
}

double max_geo_exact_tail(std::uint64_t n, const GeoParam& param, double x) {
  require(n >= 1, "max_geo_exact_tail needs n >= 1");
  if (x < 0.0) return 1.0;
  const double q_pow = std::exp(std::floor(x) * param.log_q());
  // 1 - (1 - q^k)^n without cancellation.
  return -std::expm1(static_cast<double>(n) * std::log1p(-q_pow));
}

AlternatingPmf survivor_pmf_alternating(std::uint64_t n, const GeoParam& param,
                                        std::uint64_t a) {
  require(n >= 1, "survivor pmf needs n >= 1");
  require(a >= 1 && a <= n, "survivor pmf needs 1 <= a <= n");
  if (n == 1) return {1.0, 1.0, false};

  const auto inner = alternating_binomial_sum<ExtendedReal>(param.q(), n - a, a);
  const ExtendedReal magnitude = ext_abs(inner.value);
  const double ratio = magnitude > 0
                           ? static_cast<double>(inner.max_abs_term / magnitude)
                           : std::numeric_limits<double>::infinity();

  // C(n,a) p^a in the same precision so the product does not reintroduce error.
  ExtendedReal coef = 1;
  const auto pr = static_cast<ExtendedReal>(param.p());
  for (std::uint64_t i = 1; i <= a; ++i) {
    coef = coef * static_cast<ExtendedReal>(n - a + i) / static_cast<ExtendedReal>(i) * pr;
  }
  return {static_cast<double>(coef * inner.value), ratio, !(ratio <= kCancellationLimit)};
}

double survivor_pmf_series(std::uint64_t n, const GeoParam& param, std::uint64_t a,
                           double tol) {
  require(n >= 1, "survivor pmf needs n >= 1");
  require(a >= 1 && a <= n, "survivor pmf needs 1 <= a <= n");
  require(tol > 0.0, "series tolerance must be positive");
  if (n == 1) return 1.0;

  const double lq = param.log_q();
  const auto ad = static_cast<double>(a);
  const auto m = static_cast<double>(n - a);
  const double step = std::exp(ad * lq);       // q^a
  const double tail_scale = -1.0 / std::expm1(ad * lq);  // 1 / (1 - q^a)

  const double log_pref = log_binom_power_accurate(n, a, param.p());

  // k = 0 contributes only when a == n (0^0 = 1).
  double sum = (a == n) ? std::exp(log_pref) : 0.0;
  for (std::uint64_t k = 1;; ++k) {
    const double log_qk = static_cast<double>(k) * lq;
    const double log_head = log_pref + ad * log_qk;  // ln(C(n,a) p^a q^(ka))
    const double log_rest = (a == n) ? 0.0 : m * std::log(-std::expm1(log_qk));
    sum += std::exp(log_head + log_rest);
    // Later terms are bounded by the geometric tail of q^(ka).
    const double remaining = std::exp(log_head) * step * tail_scale;
    if (remaining < tol * sum || remaining == 0.0) break;
  }
  return sum;
}

double SurvivorPmf::mean() const {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) acc += static_cast<double>(i + 1) * probs(i);
  return acc;
}

double SurvivorPmf::tail(std::uint64_t k) const {
  if (k <= 1) return probs.sum();
  if (k > n) return 0.0;
  return probs.tail(static_cast<Eigen::Index>(n - k + 1)).sum();
}

SurvivorPmf survivor_pmf(std::uint64_t n, const GeoParam& param, PmfMethod method) {
  require(n >= 1, "survivor pmf needs n >= 1");
  SurvivorPmf out{n, param, Eigen::VectorXd(static_cast<Eigen::Index>(n)), method};
  for (std::uint64_t a = 1; a <= n; ++a) {
    double v;
    if (method == PmfMethod::kSeriesInK) {
      v = survivor_pmf_series(n, param, a);
    } else {
      const auto alt = survivor_pmf_alternating(n, param, a);
      if (alt.precision_lost) {
        throw CancellationError("alternating sum cancels at n=" + std::to_string(n) +
                                ", a=" + std::to_string(a) + " (ratio " +
                                std::to_string(alt.cancellation_ratio) + ")");
      }
      v = alt.value;
    }
    out.probs(static_cast<Eigen::Index>(a - 1)) = v;
  }
  return out;
}

double expected_survivors(std::uint64_t n, const GeoParam& param) {
  require(n >= 1, "expected_survivors needs n >= 1");
  if (n == 1) return 1.0;
  const auto inner = alternating_binomial_sum<ExtendedReal>(param.q(), n - 1, 1);
  const ExtendedReal magnitude = ext_abs(inner.value);
  if (magnitude > 0 && inner.max_abs_term / magnitude <= kCancellationLimit) {
    const auto p = static_cast<ExtendedReal>(param.p());
    const auto q = static_cast<ExtendedReal>(param.q());
    return static_cast<double>(static_cast<ExtendedReal>(n) * p / q * inner.value);
  }
  double acc = 0.0;
  for (std::uint64_t a = 1; a <= n; ++a) {
    acc += static_cast<double>(a) * survivor_pmf_series(n, param, a);
  }
  return acc;
}

RiceApprox pmf_rice_approx(std::uint64_t n, const GeoParam& param, std::uint64_t a,
                           int truncation_k) {
  require(a > 0 && a < n, "rice approximation needs 0 < a < n");
  require(truncation_k >= 1, "truncation K must be positive");
  const double p = param.p();
  const double log_Q = param.log_Q();
  const auto ad = static_cast<double>(a);
  const double p_a = std::exp(ad * std::log(p));

  RiceApprox out{};
  out.central = p_a / (ad * log_Q);
  out.error_bound = (ad + 1.0) * (ad + 1.0) / (12.0 * ad) * p_a * log_Q;
  out.truncation_k = truncation_k;

  // Terms k and -k are conjugate, so the sum over k != 0 is twice the real
  // part over k > 0. Each factor 1/(1 - i t/j) has modulus
  // (1 + t^2/j^2)^(-1/2) and argument atan(t/j).
  double fluct = 0.0;
  for (int k = 1; k <= truncation_k; ++k) {
    const double t = 2.0 * std::numbers::pi * k / param.log_q();
    double log_mod = 0.0;
    double phase = 0.0;
    for (std::uint64_t j = a; j <= n; ++j) {
      const double r = t / static_cast<double>(j);
      log_mod -= 0.5 * std::log1p(r * r);
      phase += std::atan(r);
    }
    fluct += 2.0 * std::exp(log_mod) * std::cos(phase);
  }
  out.fluctuation = fluct;

  // |term_k| <= (a+1)^2 (ln q)^2 / (4 pi^2 k^2) and sum_{k>K} 1/k^2 < 1/K.
  const double envelope = (ad + 1.0) * (ad + 1.0) * log_Q * log_Q /
                          (2.0 * std::numbers::pi * std::numbers::pi);
  out.residual_bound = out.central * envelope / truncation_k;
  return out;
}

double phi_bound(const GeoParam& param, std::uint64_t a) {
  require(a >= 1, "phi bound needs a >= 1");
  const auto ad = static_cast<double>(a);
  const double p_a = std::exp(ad * std::log(param.p()));
  const double log_Q = param.log_Q();
  return p_a / (ad * log_Q) + (ad + 1.0) * (ad + 1.0) / (12.0 * ad) * p_a * log_Q;
}

double survivor_tail_bound(const GeoParam& param, std::uint64_t k) {
  require(k >= 1, "tail bound needs k >= 1");
  if (param.p() >= 0.5) {
    throw std::domain_error("bound inapplicable: survivor tail bound needs p < 1/2");
  }
  return phi_bound(param, k) / (1.0 - 2.0 * param.p());
}

double expected_max_approx(std::uint64_t n, const GeoParam& param) {
  require(n >= 1, "expected_max_approx needs n >= 1");
  return 0.5 + harmonic(n) / param.log_Q();
}

double expected_max_exact(std::uint64_t n, const GeoParam& param, double tol) {
  require(n >= 1, "expected_max_exact needs n >= 1");
  require(tol > 0.0, "series tolerance must be positive");
  const auto nd = static_cast<double>(n);
  double sum = 1.0;  // k = 0
  for (std::uint64_t k = 1;; ++k) {
    const double q_k = std::exp(static_cast<double>(k) * param.log_q());
    const double term = -std::expm1(nd * std::log1p(-q_k));
    sum += term;
    if (term < tol) break;
  }
  return sum;
}

RoundsPlan rounds_required(std::uint64_t n, const GeoParam& param, double failure_exponent) {
  require(n >= 2, "rounds_required needs n >= 2");
  require(failure_exponent > 0.0, "failure exponent must be positive");
  const double target =
      (std::log(static_cast<double>(n)) + failure_exponent * std::numbers::ln10) /
      param.log_Q();
  // Smallest digit count D >= 1 with 3^D >= target, i.e. ceil(log_3 target).
  unsigned digits = 1;
  double power = 3.0;
  while (power < target) {
    power *= 3.0;
    ++digits;
  }
  return {2ull * digits, digits - 1};
}

double harmonic_asymptotic(std::uint64_t n) {
  require(n >= 1, "harmonic needs n >= 1");
  const auto x = static_cast<double>(n);
  const double inv2 = 1.0 / (x * x);
  return std::log(x) + kEulerGamma + 0.5 / x - inv2 / 12.0 + inv2 * inv2 / 120.0;
}

double harmonic(std::uint64_t n) {
  require(n >= 1, "harmonic needs n >= 1");
  if (n > 1'000'000) return harmonic_asymptotic(n);
  double sum = 0.0;
  for (std::uint64_t i = n; i >= 1; --i) sum += 1.0 / static_cast<double>(i);
  return sum;
}

}  // namespace lge
