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

#ifndef SAMAT_AMAT_HPP
#define SAMAT_AMAT_HPP

// Alternative MAT with statistical precoding. Slot 1 carries two symbols per
// user through W (user A) and Q (user B); slots 2 and 3 retransmit the
// overheard interference from one antenna using delayed CSIT.

#include "samat/linalg.hpp"
#include "samat/montecarlo.hpp"

#include <vector>

namespace samat {

struct AmatPrecoders {
  CMatrix W;  // M x 2, user A
  CMatrix Q;  // M x 2, user B
};

struct ConvergenceTrace {
  std::vector<double> theta_values;  // initial value, then one per iteration
  std::vector<double> step_values;   // value after every single block update
  int iterations = 0;
  bool converged = false;
};

/// Theta(W) = Tr(W'R_A W) Tr(W'R_B W) - Tr(W'R_A W W'R_B W).
template <typename Real>
Real theta(const CMat<Real>& w, const CMat<Real>& ra, const CMat<Real>& rb) {
  if (w.rows() != ra.rows() || ra.rows() != rb.rows() || ra.rows() != ra.cols())
    throw Error(ErrorCode::DimMismatch, "theta: shapes disagree");
  const CMat<Real> a = w.adjoint() * ra * w;
  const CMat<Real> b = w.adjoint() * rb * w;
  return std::real(a.trace() * b.trace() - (a * b).trace());
}

template <typename Real>
Real theta(const CMat<Real>& w, const CorrelationMatrixT<Real>& ra, const CorrelationMatrixT<Real>& rb) {
  return theta<Real>(w, ra.matrix(), rb.matrix());
}

/// Approximate per-user AMAT rate (2/3) log2(1 + rho sqrt(e^a theta)).
double rate_approx_amat(double rho, double theta_value);

/// Equal power per symbol that meets the long-term constraint: 3P/(4+2M).
double equal_power(double power, int dim);

/// M(w2) = (w2'R_B w2) R_A + (w2'R_A w2) R_B - R_A w2 w2' R_B - R_B w2 w2' R_A,
/// so that Theta(w1, w2) = w1' M(w2) w1. Returned Hermitian-symmetrized.
CMatrix theta_quadratic(const CVector& w_fixed, const CorrelationMatrix& ra,
                        const CorrelationMatrix& rb);

/// Closed-form block update: dominant eigenvector of M(w_fixed).
CVector max_eig_update(const CVector& w_fixed, const CorrelationMatrix& ra,
                       const CorrelationMatrix& rb);

struct StepOptions {
  int steps = 1;
  double initial_step = 1.0;
  double backtrack = 0.5;
  double armijo = 1e-4;
  int max_backtracks = 60;
};

/// Projected gradient ascent on the unit sphere for w' M(w_fixed) w with
/// Armijo backtracking; Theta never decreases.
CVector grad_ascent_update(const CVector& w_current, const CVector& w_fixed,
                           const CorrelationMatrix& ra, const CorrelationMatrix& rb,
                           const StepOptions& opts = {});

enum class UpdateMethod { GradAct, MaxEig };

struct OptimizeOptions {
  UpdateMethod method = UpdateMethod::MaxEig;
  double eps = 1e-8;
  int max_iter = 200;
  int restarts = 3;
  std::uint64_t seed = 0x5A3A7ULL;
  StepOptions grad{.steps = 25};
};

/// Alternating two-column precoder for one user.
struct PrecoderSolution {
  CMatrix columns;  // M x 2
  double theta = 0.0;
  ConvergenceTrace trace;
};

/// Block-coordinate ascent of Theta from random normalized starts; the best
/// restart is returned along with its trace.
PrecoderSolution optimize_precoders(const CorrelationMatrix& ra, const CorrelationMatrix& rb,
                                    const OptimizeOptions& opts = {});

struct AmatDesign {
  AmatPrecoders precoders;
  ConvergenceTrace trace_w;
  ConvergenceTrace trace_q;
};

/// Optimizes W (from Theta_A) and Q (from Theta_B) independently.
AmatDesign optimize_amat_precoders(const CorrelationMatrix& ra, const CorrelationMatrix& rb,
                                   const OptimizeOptions& opts = {});

/// First two columns of the identity for both users.
AmatPrecoders org_precoders(int dim);

/// Weakest two eigenvectors of the unintended user's covariance.
AmatPrecoders we_amat_precoders(const CorrelationMatrix& ra, const CorrelationMatrix& rb);

/// Dominant two generalized eigenvectors of (R_A, R_B) for W and (R_B, R_A) for Q.
AmatPrecoders ge_amat_precoders(const CorrelationMatrix& ra, const CorrelationMatrix& rb);

/// Per-trial MMSE-SIC sum rate per slot (both users), given channels.
double amat_rate_sample(const ChannelTriple& ch, const AmatPrecoders& pre, double rho);

/// Monte Carlo ergodic AMAT sum rate per slot.
RateEstimate mc_rate_amat(const CorrelationMatrix& ra, const CorrelationMatrix& rb,
                          const AmatPrecoders& pre, double rho, std::int64_t trials,
                          std::uint64_t seed);

}  // namespace samat

#endif  // SAMAT_AMAT_HPP
