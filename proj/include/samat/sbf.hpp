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

#ifndef SAMAT_SBF_HPP
#define SAMAT_SBF_HPP

// Statistical beamforming: one symbol per user per slot, precoded with
// covariance knowledge only, equal power rho = P/2 to each user.

#include "samat/linalg.hpp"
#include "samat/montecarlo.hpp"

namespace samat {

struct SbfPrecoders {
  CVector w;  // user A
  CVector q;  // user B
};

/// w = u_min(R_B), q = u_min(R_A).
SbfPrecoders we_precoders(const CorrelationMatrix& ra, const CorrelationMatrix& rb);

/// w = u_max(R_B^{-1} R_A), q = u_max(R_A^{-1} R_B).
SbfPrecoders ge_precoders(const CorrelationMatrix& ra, const CorrelationMatrix& rb);

/// High-SNR lower bound on the SBF sum rate:
/// log2( (w'R_A w / w'R_B w) * (q'R_B q / q'R_A q) ).
double sum_rate_lower_bound(const CorrelationMatrix& ra, const CorrelationMatrix& rb,
                            const SbfPrecoders& pre);

/// Monte Carlo ergodic sum rate with treating-interference-as-noise receivers.
RateEstimate mc_rate_sbf(const CorrelationMatrix& ra, const CorrelationMatrix& rb,
                         const SbfPrecoders& pre, double power, std::int64_t trials,
                         std::uint64_t seed);

/// Per-trial sample of mc_rate_sbf using the slot-1 channels h1, g1.
double sbf_rate_sample(const CVector& h, const CVector& g, const SbfPrecoders& pre, double rho);

}  // namespace samat

#endif  // SAMAT_SBF_HPP
