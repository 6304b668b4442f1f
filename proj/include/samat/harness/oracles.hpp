// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The samat authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SAMAT_HARNESS_ORACLES_HPP
#define SAMAT_HARNESS_ORACLES_HPP

// Monte Carlo checks of the two expectation identities behind the closed-form
// rate approximations.

#include "samat/linalg.hpp"
#include "samat/montecarlo.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace samat::harness {

struct Lemma1Result {
  double mc_mean = 0.0;
  double mc_stderr = 0.0;
  double closed_form = 0.0;
  double gap = 0.0;
};

/// E[ln |h'w|^2] for h ~ CN(0, R) against ln(w'Rw) - gamma.
/// Throws Error(InvalidArgument) for fewer than 1e5 trials.
Lemma1Result lemma1_oracle(const CorrelationMatrix& r, const CVector& w, std::int64_t trials,
                           std::uint64_t seed);

/// x = x_scale |h'u|^2 and
/// y = offset + (y_includes_x ? x : 0) + sum_k c_k |g'v_k|^2,
/// with h ~ CN(0, R) and g = h (dependent) or an independent draw of the same law.
struct RatioSpec {
  CMatrix r;
  CVector u;
  double x_scale = 1.0;
  double offset = 1.0;
  bool y_includes_x = false;
  std::vector<std::pair<CVector, double>> y_terms;
  bool independent = true;
};

struct Lemma2Result {
  double mc_ratio_mean = 0.0;
  double mc_stderr = 0.0;
  double first_order = 0.0;  // E[x] / E[y]
  double gap = 0.0;          // mc_ratio_mean - first_order
};

Lemma2Result lemma2_oracle(const RatioSpec& spec, std::int64_t trials, std::uint64_t seed);

}  // namespace samat::harness

#endif  // SAMAT_HARNESS_ORACLES_HPP
