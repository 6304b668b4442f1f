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

#include "samat/amat.hpp"

#include "samat/special.hpp"

#include <cmath>

namespace samat {

namespace {

void check_pair(const CorrelationMatrix& ra, const CorrelationMatrix& rb) {
  if (ra.dim() != rb.dim()) throw Error(ErrorCode::DimMismatch, "covariances differ in size");
}

double rayleigh(const CVector& w, const CMatrix& m) { return quad_form<double>(w, m); }

CMatrix two_columns(const CVector& a, const CVector& b) {
  CMatrix out(a.size(), 2);
  out.col(0) = a;
  out.col(1) = b;
  return out;
}

CVector random_unit(int dim, std::uint64_t seed, std::uint64_t restart, std::uint64_t column) {
  CVector v = sample_cn01(dim, SeedSpec{seed, restart}, stream::auxiliary + column);
  return v.normalized();
}

// log2 det(I + X) for a 2x2 Hermitian PSD X.
double log2_det_2x2(const Eigen::Matrix2cd& x) {
  const double det = (1.0 + x(0, 0).real()) * (1.0 + x(1, 1).real()) - std::norm(x(0, 1));
  return std::log2(det);
}

// Two-observation MMSE-SIC term: rows r0, r1 with noise variances (k0, 1).
double two_row_rate(const Eigen::RowVector2cd& r0, const Eigen::RowVector2cd& r1, double k0,
                    double rho) {
  Eigen::Matrix2cd x = rho * (r0.adjoint() * r0 / k0 + r1.adjoint() * r1);
  return log2_det_2x2(x);
}

}  // namespace

double rate_approx_amat(double rho, double theta_value) {
  static const double ea = std::exp(amat_rate_constant());
  return (2.0 / 3.0) * std::log2(1.0 + rho * std::sqrt(ea * theta_value));
}

double equal_power(double power, int dim) {
  if (!(power > 0.0)) throw Error(ErrorCode::InvalidArgument, "power must be positive");
  if (dim < 2) throw Error(ErrorCode::BadDim, "M must be >= 2");
  return 3.0 * power / (4.0 + 2.0 * dim);
}

CMatrix theta_quadratic(const CVector& w_fixed, const CorrelationMatrix& ra,
                        const CorrelationMatrix& rb) {
  check_pair(ra, rb);
  if (w_fixed.size() != ra.dim()) throw Error(ErrorCode::DimMismatch, "vector length != M");
  const CMatrix& a = ra.matrix();
  const CMatrix& b = rb.matrix();
  const CVector aw = a * w_fixed;
  const CVector bw = b * w_fixed;
  CMatrix m = rayleigh(w_fixed, b) * a + rayleigh(w_fixed, a) * b - aw * bw.adjoint() -
              bw * aw.adjoint();
  return detail::hermitian_part(m);
}

CVector max_eig_update(const CVector& w_fixed, const CorrelationMatrix& ra,
                       const CorrelationMatrix& rb) {
  return eig_hermitian<double>(theta_quadratic(w_fixed, ra, rb)).max_vector();
}

CVector grad_ascent_update(const CVector& w_current, const CVector& w_fixed,
                           const CorrelationMatrix& ra, const CorrelationMatrix& rb,
                           const StepOptions& opts) {
  const CMatrix m = theta_quadratic(w_fixed, ra, rb);
  if (w_current.size() != m.rows()) throw Error(ErrorCode::DimMismatch, "vector length != M");

  CVector w = w_current.normalized();
  double value = rayleigh(w, m);
  double mu = opts.initial_step;
  for (int step = 0; step < opts.steps; ++step) {
    // Riemannian gradient of w'Mw on the unit sphere.
    const CVector grad = 2.0 * (m * w - value * w);
    const double grad_sq = grad.squaredNorm();
    if (grad_sq <= 1e-28 * (1.0 + value * value)) break;

    bool accepted = false;
    for (int bt = 0; bt < opts.max_backtracks; ++bt) {
      const CVector trial = (w + mu * grad).normalized();
      const double trial_value = rayleigh(trial, m);
      if (trial_value >= value + opts.armijo * mu * grad_sq) {
        w = trial;
        value = trial_value;
        accepted = true;
        break;
      }
      mu *= opts.backtrack;
    }
    if (!accepted) break;
    mu /= opts.backtrack;
  }
  return w;
}

PrecoderSolution optimize_precoders(const CorrelationMatrix& ra, const CorrelationMatrix& rb,
                                    const OptimizeOptions& opts) {
  check_pair(ra, rb);
  if (!(opts.eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  if (opts.restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be >= 1");
  const int dim = static_cast<int>(ra.dim());

  auto update = [&](const CVector& current, const CVector& fixed) {
    if (opts.method == UpdateMethod::MaxEig) return max_eig_update(fixed, ra, rb);
    return grad_ascent_update(current, fixed, ra, rb, opts.grad);
  };

  PrecoderSolution best;
  best.theta = -1.0;
  for (int r = 0; r < opts.restarts; ++r) {
    CVector w1 = random_unit(dim, opts.seed, static_cast<std::uint64_t>(r), 0);
    CVector w2 = random_unit(dim, opts.seed, static_cast<std::uint64_t>(r), 1);

    ConvergenceTrace trace;
    double prev = theta<double>(two_columns(w1, w2), ra, rb);
    trace.theta_values.push_back(prev);
    trace.step_values.push_back(prev);
    for (int it = 1; it <= opts.max_iter; ++it) {
      w1 = update(w1, w2);
      trace.step_values.push_back(theta<double>(two_columns(w1, w2), ra, rb));
      w2 = update(w2, w1);
      const double now = theta<double>(two_columns(w1, w2), ra, rb);
      trace.step_values.push_back(now);
      trace.theta_values.push_back(now);
      trace.iterations = it;
      if (std::abs(now - prev) <= opts.eps) {
        trace.converged = true;
        break;
      }
      prev = now;
    }

    const double value = trace.theta_values.back();
    if (value > best.theta) {
      best.columns = two_columns(w1, w2);
      best.theta = value;
      best.trace = std::move(trace);
    }
  }
  return best;
}

AmatDesign optimize_amat_precoders(const CorrelationMatrix& ra, const CorrelationMatrix& rb,
                                   const OptimizeOptions& opts) {
  // Theta_A(W) and Theta_B(Q) share one functional form; the two users only
  // differ in their random starts.
  OptimizeOptions for_q = opts;
  for_q.seed = opts.seed ^ 0xB0B0B0B0ULL;
  PrecoderSolution w = optimize_precoders(ra, rb, opts);
  PrecoderSolution q = optimize_precoders(ra, rb, for_q);
  return {{std::move(w.columns), std::move(q.columns)}, std::move(w.trace), std::move(q.trace)};
}

AmatPrecoders org_precoders(int dim) {
  if (dim < 2) throw Error(ErrorCode::BadDim, "M must be >= 2");
  const CMatrix eye = CMatrix::Identity(dim, 2);
  return {eye, eye};
}

AmatPrecoders we_amat_precoders(const CorrelationMatrix& ra, const CorrelationMatrix& rb) {
  check_pair(ra, rb);
  const auto eb = eig_hermitian(rb);
  const auto ea = eig_hermitian(ra);
  const Eigen::Index last = ra.dim() - 1;
  return {two_columns(eb.vectors.col(last), eb.vectors.col(last - 1)),
          two_columns(ea.vectors.col(last), ea.vectors.col(last - 1))};
}

AmatPrecoders ge_amat_precoders(const CorrelationMatrix& ra, const CorrelationMatrix& rb) {
  check_pair(ra, rb);
  const auto gw = generalized_eig(ra, rb);
  const auto gq = generalized_eig(rb, ra);
  return {gw.vectors.leftCols(2), gq.vectors.leftCols(2)};
}

double amat_rate_sample(const ChannelTriple& ch, const AmatPrecoders& pre, double rho) {
  const auto& h = ch.h;
  const auto& g = ch.g;

  // User A aligns slot 2 (overheard eta_A) against slot 1, keeps slot 3.
  const Eigen::RowVector2cd h1w = h[0].adjoint() * pre.W;
  const Eigen::RowVector2cd g1w = g[0].adjoint() * pre.W;
  const double rate_a =
      two_row_rate(std::conj(h[1](0)) * h1w, std::conj(h[2](0)) * g1w, 1.0 + std::norm(h[1](0)), rho);

  // User B aligns slot 3 (overheard eta_B) against slot 1, keeps slot 2.
  const Eigen::RowVector2cd g1q = g[0].adjoint() * pre.Q;
  const Eigen::RowVector2cd h1q = h[0].adjoint() * pre.Q;
  const double rate_b =
      two_row_rate(std::conj(g[2](0)) * g1q, std::conj(g[1](0)) * h1q, 1.0 + std::norm(g[2](0)), rho);

  return (rate_a + rate_b) / 3.0;
}

RateEstimate mc_rate_amat(const CorrelationMatrix& ra, const CorrelationMatrix& rb,
                          const AmatPrecoders& pre, double rho, std::int64_t trials,
                          std::uint64_t seed) {
  check_pair(ra, rb);
  if (pre.W.rows() != ra.dim() || pre.Q.rows() != ra.dim() || pre.W.cols() != 2 || pre.Q.cols() != 2)
    throw Error(ErrorCode::DimMismatch, "AMAT precoders must be M x 2");
  if (!(rho > 0.0)) throw Error(ErrorCode::InvalidArgument, "rho must be positive");

  const CMatrix sqrt_a = hermitian_sqrt(ra);
  const CMatrix sqrt_b = hermitian_sqrt(rb);
  return monte_carlo(trials, seed, [&](const SeedSpec& s) {
    return amat_rate_sample(sample_triple(sqrt_a, sqrt_b, s), pre, rho);
  });
}

}  // namespace samat
