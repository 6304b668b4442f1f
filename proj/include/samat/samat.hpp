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

#ifndef SAMAT_SAMAT_HPP
#define SAMAT_SAMAT_HPP

// AMAT with superposed statistically precoded extra symbols. Ten symbol
// powers P1..P10: slot 1 carries u_A = W [P1 P2] and u_B = Q [P3 P4], slot 2
// retransmits eta_A with P5 plus extra symbols on w3 (P6) and q3 (P7), slot 3
// retransmits eta_B with P8 plus extra symbols on w3 (P9) and q3 (P10).

#include "samat/linalg.hpp"
#include "samat/montecarlo.hpp"
#include "samat/sqp.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace samat {

struct PowerAllocation {
  std::array<double, 10> p{};

  /// 1-based access, P(1) .. P(10).
  double P(int k) const { return p.at(static_cast<std::size_t>(k - 1)); }
  double& P(int k) { return p.at(static_cast<std::size_t>(k - 1)); }

  RVector as_vector() const;
  static PowerAllocation from_vector(const RVector& v);
};

struct SamatPrecoders {
  CMatrix W;  // M x 2, columns w1, w2
  CMatrix Q;  // M x 2, columns q1, q2
  CVector w3;
  CVector q3;
};

struct RateCoefficients {
  double lamA1 = 0, lamA2 = 0, lamA3 = 0;  // q1, q2, q3 in R_A
  double lamB1 = 0, lamB2 = 0, lamB3 = 0;  // w1, w2, w3 in R_B
  double tauA1 = 0, tauA2 = 0, tauA3 = 0;  // w1, w2, w3 in R_A
  double tauB1 = 0, tauB2 = 0, tauB3 = 0;  // q1, q2, q3 in R_B
  double thetaA = 0;                       // theta(W)
  double thetaB = 0;                       // theta(Q)
};

RateCoefficients coefficients(const SamatPrecoders& pre, const CorrelationMatrix& ra,
                              const CorrelationMatrix& rb);

template <typename T>
struct DeltaTermsT {
  T a1, a2, b1, b2;
};

template <typename T>
struct SamatRatesT {
  T sum, s_a, sp_a, s_b, sp_b;
};

using DeltaTerms = DeltaTermsT<double>;
using SamatRates = SamatRatesT<double>;

/// Long-term power: sum of P{1,2,3,4,6,7,9,10} + P5(lamA1 P3 + lamA2 P4)
/// + P8(lamB1 P1 + lamB2 P2).
template <typename T>
T power_constraint_t(const std::array<T, 10>& p, const RateCoefficients& c) {
  return p[0] + p[1] + p[2] + p[3] + p[5] + p[6] + p[8] + p[9] +
         p[4] * (c.lamA1 * p[2] + c.lamA2 * p[3]) + p[7] * (c.lamB1 * p[0] + c.lamB2 * p[1]);
}

template <typename T>
DeltaTermsT<T> delta_terms_t(const std::array<T, 10>& p, const RateCoefficients& c) {
  const T &P1 = p[0], &P2 = p[1], &P3 = p[2], &P4 = p[3], &P5 = p[4];
  const T &P6 = p[5], &P7 = p[6], &P8 = p[7], &P9 = p[8], &P10 = p[9];
  DeltaTermsT<T> d;
  d.a1 = 1.0 / (1.0 + c.lamA1 * P3 + c.lamA2 * P4) + P5 / (1.0 + P5 + c.tauA3 * P6 + c.lamA3 * P7);
  d.b1 = 1.0 / (1.0 + c.lamB1 * P1 + c.lamB2 * P2) + P8 / (1.0 + P8 + c.lamB3 * P9 + c.tauB3 * P10);
  d.a2 = P8 / (1.0 + c.tauA3 * P9 + c.lamA3 * P10);
  d.b2 = P5 / (1.0 + c.lamB3 * P6 + c.tauB3 * P7);
  return d;
}

/// Closed-form approximate rates per slot; sum = (s_a + sp_a + s_b + sp_b) / 3.
template <typename T>
SamatRatesT<T> rate_approx_t(const std::array<T, 10>& p, const RateCoefficients& c) {
  using std::log;
  const T &P1 = p[0], &P2 = p[1], &P3 = p[2], &P4 = p[3], &P5 = p[4];
  const T &P6 = p[5], &P7 = p[6], &P8 = p[7], &P9 = p[8], &P10 = p[9];
  const DeltaTermsT<T> d = delta_terms_t(p, c);
  const double ln2 = std::log(2.0);
  auto lg = [&](const T& x) -> T { return T(log(x)) / ln2; };

  SamatRatesT<T> r;
  r.s_a = lg(1.0 + d.a1 * (c.tauA1 * P1 + c.tauA2 * P2) + d.a2 * (c.lamB1 * P1 + c.lamB2 * P2) +
             d.a1 * d.a2 * c.thetaA * P1 * P2);
  r.sp_a = lg(1.0 + c.tauA3 * P6 / (1.0 + P5 + c.lamA3 * P7)) +
           lg(1.0 + c.tauA3 * P9 / (1.0 + c.lamA3 * P10));
  r.s_b = lg(1.0 + d.b1 * (c.tauB1 * P3 + c.tauB2 * P4) + d.b2 * (c.lamA1 * P3 + c.lamA2 * P4) +
             d.b1 * d.b2 * c.thetaB * P3 * P4);
  r.sp_b = lg(1.0 + c.tauB3 * P7 / (1.0 + c.lamB3 * P6)) +
           lg(1.0 + c.tauB3 * P10 / (1.0 + P8 + c.lamB3 * P9));
  r.sum = (r.s_a + r.sp_a + r.s_b + r.sp_b) / 3.0;
  return r;
}

double power_constraint(const PowerAllocation& p, const RateCoefficients& c);
DeltaTerms delta_terms(const PowerAllocation& p, const RateCoefficients& c);
SamatRates rate_approx_samat(const PowerAllocation& p, const RateCoefficients& c);

/// Approximate sum rate and its gradient in P1..P10 (forward-mode AD).
double rate_sum_with_gradient(const RVector& p, const RateCoefficients& c, RVector* grad);

/// power_constraint and its gradient in P1..P10.
double power_constraint_with_gradient(const RVector& p, const RateCoefficients& c, RVector* grad);

enum class PrecoderCase { Case1, Case2 };

/// Case 1: eigenvectors of each covariance; case 2: generalized eigenvectors.
SamatPrecoders case_precoders(PrecoderCase kind, const CorrelationMatrix& ra,
                              const CorrelationMatrix& rb);

struct KktResiduals {
  double r1 = 0.0;
  double r2 = 0.0;
};

/// Relative mismatch of P1/P2 and P3/P4 against the stationarity ratios.
KktResiduals kkt_ratio_residual(const PowerAllocation& p, const RateCoefficients& c);

/// P1..P4 = rho, P5 = P8 = 1, rest 0.
PowerAllocation amat_preset(double rho);

/// rho that puts amat_preset exactly on the budget: 3P / (4 + lamA1 + lamA2 + lamB1 + lamB2).
double amat_preset_rho(const RateCoefficients& c, double budget);

/// P2 = P4 = P6 = P7 = P9 = P10 = P/2, rest 0 (equal-power SBF in every slot).
PowerAllocation sbf_preset(double budget);

/// Multiplies every power by the scale that meets power_constraint = 3 * budget.
/// Throws Error(InvalidArgument) for an all-zero allocation.
PowerAllocation scale_to_budget(const PowerAllocation& p, const RateCoefficients& c, double budget);

struct PowerOptions {
  SqpOptions sqp{};
  int random_starts = 5;
  std::uint64_t seed = 0x504F574552ULL;
};

struct PowerSolution {
  PowerAllocation power;
  SolveReport report;        // report of the run that produced `power`
  double objective = 0.0;    // approximate sum rate at `power`
  int best_start = 0;        // 0 AMAT-like, 1 SBF-like, 2 uniform, 3.. random
  bool from_start_point = false;
  std::vector<SolveReport> reports;
};

/// Multi-start SQP on the approximate sum rate subject to the long-term
/// power constraint = 3 * budget and P >= 0.
PowerSolution optimize_power(const RateCoefficients& c, double budget, const PowerOptions& opts = {});

/// Per-trial SAMAT sum rate per slot for one channel realization.
double samat_rate_sample(const ChannelTriple& ch, const SamatPrecoders& pre, const PowerAllocation& p);

/// Monte Carlo ergodic SAMAT sum rate per slot.
RateEstimate mc_rate_samat(const CorrelationMatrix& ra, const CorrelationMatrix& rb,
                           const SamatPrecoders& pre, const PowerAllocation& p,
                           std::int64_t trials, std::uint64_t seed);

}  // namespace samat

#endif  // SAMAT_SAMAT_HPP
