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

#include "samat/harness/oracles.hpp"

#include "samat/special.hpp"

#include <cmath>

namespace samat::harness {

namespace {

// Hermitian PSD square root of a covariance that need not be trace-normalized.
CMatrix psd_sqrt(const CMatrix& r) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(detail::hermitian_part(r));
  if (es.info() != Eigen::Success) throw Error(ErrorCode::ConvergenceFailure, "eigensolver failed");
  const RVector s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Lemma1Result lemma1_oracle(const CorrelationMatrix& r, const CVector& w, std::int64_t trials,
                           std::uint64_t seed) {
  if (trials < 100000) throw Error(ErrorCode::InvalidArgument, "lemma1_oracle needs >= 1e5 trials");
  if (w.size() != r.dim()) throw Error(ErrorCode::DimMismatch, "vector length != M");
  const CMatrix root = hermitian_sqrt(r);
  const int dim = static_cast<int>(r.dim());
  const RateEstimate est = monte_carlo(trials, seed, [&](const SeedSpec& s) {
    const CVector h = root * sample_cn01(dim, s, stream::user_a_slot1);
    return std::log(std::norm(h.dot(w)));
  });
  Lemma1Result out;
  out.mc_mean = est.mean_bits;
  out.mc_stderr = est.stderr_bits;
  out.closed_form = std::log(quad_form(w, r)) - euler_gamma;
  out.gap = std::abs(out.mc_mean - out.closed_form);
  return out;
}

Lemma2Result lemma2_oracle(const RatioSpec& spec, std::int64_t trials, std::uint64_t seed) {
  const Eigen::Index m = spec.r.rows();
  if (spec.r.cols() != m || spec.u.size() != m)
    throw Error(ErrorCode::DimMismatch, "RatioSpec shapes disagree");
  for (const auto& term : spec.y_terms)
    if (term.first.size() != m) throw Error(ErrorCode::DimMismatch, "RatioSpec shapes disagree");

  const double mu_x = spec.x_scale * quad_form<double>(spec.u, spec.r);
  double mu_y = spec.offset + (spec.y_includes_x ? mu_x : 0.0);
  for (const auto& [v, c] : spec.y_terms) mu_y += c * quad_form<double>(v, spec.r);
  if (!(std::abs(mu_y) > 1e-12)) throw Error(ErrorCode::DivisionByZero, "E[y] is zero");

  const CMatrix root = psd_sqrt(spec.r);
  const int dim = static_cast<int>(m);
  const RateEstimate est = monte_carlo(trials, seed, [&](const SeedSpec& s) {
    const CVector h = root * sample_cn01(dim, s, stream::user_a_slot1);
    const CVector g = spec.independent ? CVector(root * sample_cn01(dim, s, stream::user_a_slot1 + 1)) : h;
    const double x = spec.x_scale * std::norm(h.dot(spec.u));
    double y = spec.offset + (spec.y_includes_x ? x : 0.0);
    for (const auto& [v, c] : spec.y_terms) y += c * std::norm(g.dot(v));
    return x / y;
  });

  Lemma2Result out;
  out.mc_ratio_mean = est.mean_bits;
  out.mc_stderr = est.stderr_bits;
  out.first_order = mu_x / mu_y;
  out.gap = out.mc_ratio_mean - out.first_order;
  return out;
}

}  // namespace samat::harness
