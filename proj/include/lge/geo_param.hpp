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

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace lge {

/// Success probability of a geometric law on {1, 2, ...}, P[X=k] = q^(k-1) p.
///
/// Carries the derived quantities every formula needs: q = 1 - p and
/// logQ = ln(1/q). The ratio Q = 1/q is the base of the exponential tail.
class GeoParam {
 public:
  explicit GeoParam(double p) : p_(p) {
    if (!(p > 0.0 && p < 1.0)) {
      throw std::invalid_argument("geometric parameter p must lie in (0,1), got " +
                                  std::to_string(p));
    }
    q_ = 1.0 - p;
    log_q_ = std::log1p(-p);
  }

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  /// ln q, strictly negative.
  double log_q() const noexcept { return log_q_; }
  /// ln Q = ln(1/(1-p)), strictly positive.
  double log_Q() const noexcept { return -log_q_; }

 private:
  double p_;
  double q_;
  double log_q_;
};

}  // namespace lge
