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

#include "samat/samat.hpp"

#include "samat/amat.hpp"

#include <unsupported/Eigen/AutoDiff>

#include <algorithm>
#include <cmath>

namespace samat {

namespace {

using Grad10 = Eigen::Matrix<double, 10, 1>;
using Ad = Eigen::AutoDiffScalar<Grad10>;

std::array<Ad, 10> seeded(const RVector& p) {
  if (p.size() != 10) throw Error(ErrorCode::BadDim, "power vector must have 10 entries");
  std::array<Ad, 10> out;
  for (int i = 0; i < 10; ++i) out[static_cast<std::size_t>(i)] = Ad(p(i), 10, i);
  return out;
}

std::array<double, 10> plain(const RVector& p) {
  if (p.size() != 10) throw Error(ErrorCode::BadDim, "power vector must have 10 entries");
  std::array<double, 10> out;
  for (int i = 0; i < 10; ++i) out[static_cast<std::size_t>(i)] = p(i);
  return out;
}

void check_nonnegative(const PowerAllocation& p) {
  for (double v : p.p)
    if (!(v >= 0.0)) throw Error(ErrorCode::InvalidArgument, "powers must be nonnegative");
}

double det2(const Eigen::Matrix2cd& x) {
  return ((1.0 + x(0, 0).real()) * (1.0 + x(1, 1).real()) - std::norm(x(0, 1)));
}

// log2 det(I + P^{1/2} (sum_i r_i' r_i / k_i) P^{1/2}) for 1x2 rows r_i.
double sic_rate(const std::array<Eigen::RowVector2cd, 3>& rows, const std::array<double, 3>& k,
                double pa, double pb) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  for (std::size_t i = 0; i < 3; ++i) m += rows[i].adjoint() * rows[i] / k[i];
  const Eigen::Vector2cd s(std::sqrt(pa), std::sqrt(pb));
  const Eigen::Matrix2cd x = s.asDiagonal() * m * s.asDiagonal();
  return std::log2(det2(x));
}

}  // namespace

RVector PowerAllocation::as_vector() const {
  RVector v(10);
  for (int i = 0; i < 10; ++i) v(i) = p[static_cast<std::size_t>(i)];
  return v;
}

PowerAllocation PowerAllocation::from_vector(const RVector& v) {
  PowerAllocation out;
  out.p = plain(v);
  return out;
}

RateCoefficients coefficients(const SamatPrecoders& pre, const CorrelationMatrix& ra,
                              const CorrelationMatrix& rb) {
  const Eigen::Index m = ra.dim();
  if (rb.dim() != m) throw Error(ErrorCode::DimMismatch, "covariances differ in size");
  if (pre.W.rows() != m || pre.Q.rows() != m || pre.W.cols() != 2 || pre.Q.cols() != 2 ||
      pre.w3.size() != m || pre.q3.size() != m)
    throw Error(ErrorCode::DimMismatch, "SAMAT precoders must be M x 2, M x 2, M, M");

  const CVector w1 = pre.W.col(0), w2 = pre.W.col(1), q1 = pre.Q.col(0), q2 = pre.Q.col(1);
  RateCoefficients c;
  c.lamA1 = quad_form(q1, ra);
  c.lamA2 = quad_form(q2, ra);
  c.lamA3 = quad_form(pre.q3, ra);
  c.lamB1 = quad_form(w1, rb);
  c.lamB2 = quad_form(w2, rb);
  c.lamB3 = quad_form(pre.w3, rb);
  c.tauA1 = quad_form(w1, ra);
  c.tauA2 = quad_form(w2, ra);
  c.tauA3 = quad_form(pre.w3, ra);
  c.tauB1 = quad_form(q1, rb);
  c.tauB2 = quad_form(q2, rb);
  c.tauB3 = quad_form(pre.q3, rb);
  c.thetaA = theta<double>(pre.W, ra, rb);
  c.thetaB = theta<double>(pre.Q, ra, rb);
  return c;
}

double power_constraint(const PowerAllocation& p, const RateCoefficients& c) {
  return power_constraint_t(p.p, c);
}

DeltaTerms delta_terms(const PowerAllocation& p, const RateCoefficients& c) {
  return delta_terms_t(p.p, c);
}

SamatRates rate_approx_samat(const PowerAllocation& p, const RateCoefficients& c) {
  return rate_approx_t(p.p, c);
}

double rate_sum_with_gradient(const RVector& p, const RateCoefficients& c, RVector* grad) {
  if (!grad) return rate_approx_t(plain(p), c).sum;
  const Ad r = rate_approx_t(seeded(p), c).sum;
  *grad = r.derivatives();
  return r.value();
}

double power_constraint_with_gradient(const RVector& p, const RateCoefficients& c, RVector* grad) {
  if (!grad) return power_constraint_t(plain(p), c);
  const Ad r = power_constraint_t(seeded(p), c);
  *grad = r.derivatives();
  return r.value();
}

SamatPrecoders case_precoders(PrecoderCase kind, const CorrelationMatrix& ra,
                              const CorrelationMatrix& rb) {
  if (ra.dim() != rb.dim()) throw Error(ErrorCode::DimMismatch, "covariances differ in size");
  const Eigen::Index m = ra.dim();
  SamatPrecoders pre;
  pre.W.resize(m, 2);
  pre.Q.resize(m, 2);
  if (kind == PrecoderCase::Case1) {
    const auto ea = eig_hermitian(ra);
    const auto eb = eig_hermitian(rb);
    pre.W.col(0) = eb.max_vector();
    pre.W.col(1) = eb.min_vector();
    pre.Q.col(0) = ea.max_vector();
    pre.Q.col(1) = ea.min_vector();
  } else {
    const CVector wmax = generalized_max_eigvec(ra, rb);
    const CVector qmax = generalized_max_eigvec(rb, ra);
    pre.W.col(0) = generalized_min_eigvec(ra, rb).normalized();
    pre.W.col(1) = wmax.normalized();
    pre.Q.col(0) = generalized_min_eigvec(rb, ra).normalized();
    pre.Q.col(1) = qmax.normalized();
  }
  pre.w3 = pre.W.col(1);
  pre.q3 = pre.Q.col(1);
  return pre;
}

KktResiduals kkt_ratio_residual(const PowerAllocation& p, const RateCoefficients& c) {
  if (p.P(2) == 0.0 || p.P(4) == 0.0) throw Error(ErrorCode::DivisionByZero, "P2 or P4 is zero");
  const double ratio1 = p.P(1) / p.P(2);
  const double ratio2 = p.P(3) / p.P(4);
  if (ratio1 == 0.0 || ratio2 == 0.0) throw Error(ErrorCode::DivisionByZero, "P1 or P3 is zero");
  const double target1 = (1.0 + c.lamB2 * p.P(8)) / (1.0 + c.lamB1 * p.P(8));
  const double target2 = (1.0 + c.lamA2 * p.P(5)) / (1.0 + c.lamA1 * p.P(5));
  return {std::abs(ratio1 - target1) / ratio1, std::abs(ratio2 - target2) / ratio2};
}

PowerAllocation amat_preset(double rho) {
  PowerAllocation p;
  p.P(1) = p.P(2) = p.P(3) = p.P(4) = rho;
  p.P(5) = p.P(8) = 1.0;
  return p;
}

double amat_preset_rho(const RateCoefficients& c, double budget) {
  if (!(budget > 0.0)) throw Error(ErrorCode::InvalidArgument, "budget must be positive");
  return 3.0 * budget / (4.0 + c.lamA1 + c.lamA2 + c.lamB1 + c.lamB2);
}

PowerAllocation sbf_preset(double budget) {
  if (!(budget > 0.0)) throw Error(ErrorCode::InvalidArgument, "budget must be positive");
  PowerAllocation p;
  for (int k : {2, 4, 6, 7, 9, 10}) p.P(k) = budget / 2.0;
  return p;
}

PowerAllocation scale_to_budget(const PowerAllocation& p, const RateCoefficients& c, double budget) {
  check_nonnegative(p);
  if (!(budget > 0.0)) throw Error(ErrorCode::InvalidArgument, "budget must be positive");
  const double target = 3.0 * budget;
  auto scaled = [&](double s) {
    PowerAllocation q = p;
    for (double& v : q.p) v *= s;
    return q;
  };
  if (!(power_constraint(p, c) > 0.0))
    throw Error(ErrorCode::InvalidArgument, "cannot scale an allocation with zero power");

  double lo = 0.0, hi = 1.0;
  while (power_constraint(scaled(hi), c) < target) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (power_constraint(scaled(mid), c) < target)
      lo = mid;
    else
      hi = mid;
  }
  // Pick whichever bracket end is closer to the surface.
  const double rl = std::abs(power_constraint(scaled(lo), c) - target);
  const double rh = std::abs(power_constraint(scaled(hi), c) - target);
  return scaled(rl < rh ? lo : hi);
}

PowerSolution optimize_power(const RateCoefficients& c, double budget, const PowerOptions& opts) {
  if (!(budget > 0.0)) throw Error(ErrorCode::InvalidArgument, "budget must be positive");

  std::vector<PowerAllocation> starts;
  starts.push_back(amat_preset(amat_preset_rho(c, budget)));
  starts.push_back(sbf_preset(budget));
  PowerAllocation uniform;
  uniform.p.fill(1.0);
  starts.push_back(scale_to_budget(uniform, c, budget));
  for (int s = 0; s < opts.random_starts; ++s) {
    StreamRng rng(SeedSpec{opts.seed, static_cast<std::uint64_t>(s)}, stream::auxiliary);
    PowerAllocation r;
    for (double& v : r.p) v = rng.uniform();
    starts.push_back(scale_to_budget(r, c, budget));
  }

  // Variables are powers divided by the budget; the constraint is divided by
  // 3 * budget so that ctol is relative to the budget.
  const double scale = budget;
  NlpProblem prob;
  prob.dim = 10;
  prob.lower_bounds = RVector::Zero(10);
  prob.objective = [&](const RVector& x, RVector* g) {
    const double v = rate_sum_with_gradient(scale * x, c, g);
    if (g) *g *= scale;
    return v;
  };
  prob.eq_constraint = [&](const RVector& x, RVector* g) {
    const double v = power_constraint_with_gradient(scale * x, c, g);
    if (g) *g *= scale / (3.0 * budget);
    return v / (3.0 * budget) - 1.0;
  };

  const double ctol_abs = 1e-6 * 3.0 * budget;
  auto feasible = [&](const PowerAllocation& p) {
    return std::abs(power_constraint(p, c) - 3.0 * budget) <= ctol_abs;
  };

  const std::size_t n_starts = starts.size();
  std::vector<SolveResult> runs(n_starts);
  parallel_for(static_cast<std::int64_t>(n_starts), [&](std::int64_t i) {
    const RVector x0 = starts[static_cast<std::size_t>(i)].as_vector() / scale;
    runs[static_cast<std::size_t>(i)] = solve(prob, x0, opts.sqp);
  });

  PowerSolution best;
  best.objective = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_starts; ++i) {
    best.reports.push_back(runs[i].report);
    PowerAllocation p = PowerAllocation::from_vector(runs[i].x * scale);
    for (double& v : p.p)
      if (v < 1e-12) v = 0.0;
    if (!feasible(p)) p = scale_to_budget(p, c, budget);

    const double value = rate_approx_samat(p, c).sum;
    if (value > best.objective) {
      best.power = p;
      best.objective = value;
      best.report = runs[i].report;
      best.best_start = static_cast<int>(i);
      best.from_start_point = false;
    }
    const double start_value = rate_approx_samat(starts[i], c).sum;
    if (start_value > best.objective) {
      best.power = starts[i];
      best.objective = start_value;
      best.report = runs[i].report;
      best.best_start = static_cast<int>(i);
      best.from_start_point = true;
    }
  }
  return best;
}

double samat_rate_sample(const ChannelTriple& ch, const SamatPrecoders& pre, const PowerAllocation& p) {
  const auto& h = ch.h;
  const auto& g = ch.g;
  const double P1 = p.P(1), P2 = p.P(2), P3 = p.P(3), P4 = p.P(4), P5 = p.P(5);
  const double P6 = p.P(6), P7 = p.P(7), P8 = p.P(8), P9 = p.P(9), P10 = p.P(10);
  const CVector q1 = pre.Q.col(0), q2 = pre.Q.col(1), w1 = pre.W.col(0), w2 = pre.W.col(1);

  // User A.
  const cplx h21 = h[1](0), h31 = h[2](0);
  const Eigen::RowVector2cd h1w = h[0].adjoint() * pre.W;
  const Eigen::RowVector2cd g1w = g[0].adjoint() * pre.W;
  const std::array<Eigen::RowVector2cd, 3> rows_a = {
      h1w, -std::sqrt(P5) * std::conj(h21) * h1w, std::sqrt(P8) * std::conj(h31) * g1w};
  const double h2w3 = std::norm(h[1].dot(pre.w3)), h2q3 = std::norm(h[1].dot(pre.q3));
  const double h3w3 = std::norm(h[2].dot(pre.w3)), h3q3 = std::norm(h[2].dot(pre.q3));
  const std::array<double, 3> k_a = {
      1.0 + P3 * std::norm(h[0].dot(q1)) + P4 * std::norm(h[0].dot(q2)),
      1.0 + P5 * std::norm(h21) + P6 * h2w3 + P7 * h2q3,
      1.0 + P9 * h3w3 + P10 * h3q3};
  const double rs_a = sic_rate(rows_a, k_a, P1, P2);
  const double rsp_a = std::log2(1.0 + P6 * h2w3 / (1.0 + P5 * std::norm(h21) + P7 * h2q3)) +
                       std::log2(1.0 + P9 * h3w3 / (1.0 + P10 * h3q3));

  // User B.
  const cplx g21 = g[1](0), g31 = g[2](0);
  const Eigen::RowVector2cd g1q = g[0].adjoint() * pre.Q;
  const Eigen::RowVector2cd h1q = h[0].adjoint() * pre.Q;
  const std::array<Eigen::RowVector2cd, 3> rows_b = {
      g1q, std::sqrt(P5) * std::conj(g21) * h1q, -std::sqrt(P8) * std::conj(g31) * g1q};
  const double g2w3 = std::norm(g[1].dot(pre.w3)), g2q3 = std::norm(g[1].dot(pre.q3));
  const double g3w3 = std::norm(g[2].dot(pre.w3)), g3q3 = std::norm(g[2].dot(pre.q3));
  const std::array<double, 3> k_b = {
      1.0 + P1 * std::norm(g[0].dot(w1)) + P2 * std::norm(g[0].dot(w2)),
      1.0 + P6 * g2w3 + P7 * g2q3,
      1.0 + P8 * std::norm(g31) + P9 * g3w3 + P10 * g3q3};
  const double rs_b = sic_rate(rows_b, k_b, P3, P4);
  const double rsp_b = std::log2(1.0 + P7 * g2q3 / (1.0 + P6 * g2w3)) +
                       std::log2(1.0 + P10 * g3q3 / (1.0 + P8 * std::norm(g31) + P9 * g3w3));

  return (rs_a + rsp_a + rs_b + rsp_b) / 3.0;
}

RateEstimate mc_rate_samat(const CorrelationMatrix& ra, const CorrelationMatrix& rb,
                           const SamatPrecoders& pre, const PowerAllocation& p,
                           std::int64_t trials, std::uint64_t seed) {
  coefficients(pre, ra, rb);  // shape checks
  check_nonnegative(p);
  const CMatrix sqrt_a = hermitian_sqrt(ra);
  const CMatrix sqrt_b = hermitian_sqrt(rb);
  return monte_carlo(trials, seed, [&](const SeedSpec& s) {
    return samat_rate_sample(sample_triple(sqrt_a, sqrt_b, s), pre, p);
  });
}

}  // namespace samat
