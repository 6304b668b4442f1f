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

#include "samat/sbf.hpp"

#include <cmath>

namespace samat {

namespace {

void check_pair(const CorrelationMatrix& ra, const CorrelationMatrix& rb) {
  if (ra.dim() != rb.dim()) throw Error(ErrorCode::DimMismatch, "covariances differ in size");
}

void check_precoders(const SbfPrecoders& pre, Eigen::Index dim) {
  if (pre.w.size() != dim || pre.q.size() != dim)
    throw Error(ErrorCode::DimMismatch, "precoder length does not match M");
}

}  // namespace

SbfPrecoders we_precoders(const CorrelationMatrix& ra, const CorrelationMatrix& rb) {
  check_pair(ra, rb);
  return {eig_hermitian(rb).min_vector(), eig_hermitian(ra).min_vector()};
}

SbfPrecoders ge_precoders(const CorrelationMatrix& ra, const CorrelationMatrix& rb) {
  check_pair(ra, rb);
  return {generalized_max_eigvec(ra, rb), generalized_max_eigvec(rb, ra)};
}

double sum_rate_lower_bound(const CorrelationMatrix& ra, const CorrelationMatrix& rb,
                            const SbfPrecoders& pre) {
  check_pair(ra, rb);
  check_precoders(pre, ra.dim());
  const double ratio_w = quad_form(pre.w, ra) / quad_form(pre.w, rb);
  const double ratio_q = quad_form(pre.q, rb) / quad_form(pre.q, ra);
  return std::log2(ratio_w * ratio_q);
}

double sbf_rate_sample(const CVector& h, const CVector& g, const SbfPrecoders& pre, double rho) {
  const double hw = std::norm(h.dot(pre.w));
  const double hq = std::norm(h.dot(pre.q));
  const double gq = std::norm(g.dot(pre.q));
  const double gw = std::norm(g.dot(pre.w));
  const double sinr_a = rho * hw / (1.0 + rho * hq);
  const double sinr_b = rho * gq / (1.0 + rho * gw);
  return std::log2(1.0 + sinr_a) + std::log2(1.0 + sinr_b);
}

RateEstimate mc_rate_sbf(const CorrelationMatrix& ra, const CorrelationMatrix& rb,
                         const SbfPrecoders& pre, double power, std::int64_t trials,
                         std::uint64_t seed) {
  check_pair(ra, rb);
  check_precoders(pre, ra.dim());
  if (!(power > 0.0)) throw Error(ErrorCode::InvalidArgument, "power must be positive");

  const CMatrix sqrt_a = hermitian_sqrt(ra);
  const CMatrix sqrt_b = hermitian_sqrt(rb);
  const int dim = static_cast<int>(ra.dim());
  const double rho = power / 2.0;
  return monte_carlo(trials, seed, [&](const SeedSpec& s) {
    const CVector h = sqrt_a * sample_cn01(dim, s, stream::user_a_slot1);
    const CVector g = sqrt_b * sample_cn01(dim, s, stream::user_b_slot1);
    return sbf_rate_sample(h, g, pre, rho);
  });
}

}  // namespace samat
