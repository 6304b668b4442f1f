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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "samat/amat.hpp"
#include "samat/special.hpp"
#include "support.hpp"

#include <numbers>

using namespace samat;
using samat::test::Gen;

namespace {

// E1(1) = int_0^inf exp(-1-s)/(1+s) ds, composite Simpson on [0, 60].
double e1_at_one_quadrature() {
  const int n = 600000;
  const double top = 60.0, h = top / n;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double s = i * h;
    acc += std::exp(-1.0 - s) / (1.0 + s) * (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0));
  }
  return acc * h / 3.0;
}

double trace_closed_form(const CorrelationMatrix& ra, const CorrelationMatrix& rb) {
  return (ra.matrix().trace() * rb.matrix().trace() - (ra.matrix() * rb.matrix()).trace()).real();
}

CMatrix columns(const CVector& a, const CVector& b) {
  CMatrix m(a.size(), 2);
  m << a, b;
  return m;
}

// Independent log2 det(I + rho H^H K^{-1} H) with a general 2x2 determinant.
double two_obs_rate(const Eigen::RowVector2cd& r0, const Eigen::RowVector2cd& r1, double k0, double rho) {
  Eigen::Matrix2cd h;
  h.row(0) = r0;
  h.row(1) = r1;
  Eigen::Matrix2cd kinv = Eigen::Matrix2cd::Zero();
  kinv(0, 0) = 1.0 / k0;
  kinv(1, 1) = 1.0;
  const Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity() + rho * h.adjoint() * kinv * h;
  return std::log2(m.determinant().real());
}

}  // namespace

TEST_CASE("theta: any unitary W in two dimensions gives the trace expression") {
  Gen gen(31);
  for (int i = 0; i < 20; ++i) {
    const auto ra = gen.pd(2);
    const auto rb = gen.pd(2);
    const double expected = trace_closed_form(ra, rb);
    for (int k = 0; k < 5; ++k) CHECK(std::abs(theta<double>(gen.unitary(2), ra, rb) - expected) < 1e-10);
  }
}

TEST_CASE("theta: exponential model closed form") {
  for (double t : {0.0, 0.3, 0.6, 0.9, 0.99}) {
    for (double dphi : {0.0, 0.7, 1.5, 2.5, 3.1}) {
      const auto ra = exp_correlation(t, 0.4 + dphi, 2);
      const auto rb = exp_correlation(t, 0.4, 2);
      const double expected = 2.0 * (1.0 - t * t * std::cos(dphi));
      CHECK(std::abs(theta<double>(org_precoders(2).W, ra, rb) - expected) < 1e-10);
    }
  }
}

TEST_CASE("theta: identity covariances with orthonormal columns give 2") {
  Gen gen(32);
  const auto id = exp_correlation(0.0, 0.0, 5);
  const CMatrix u = gen.unitary(5);
  CHECK(theta<double>(CMatrix(u.leftCols(2)), id, id) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(theta<double>(CMatrix::Identity(3, 2), id.matrix(), id.matrix()), Error);
}

TEST_CASE("exponential integral and rate constant") {
  const double quad = e1_at_one_quadrature();
  CHECK(std::abs(exp_integral_Ei_minus1() + quad) < 1e-10);
  CHECK(std::abs(exp_integral_Ei_minus1() - (-0.21938393439552029)) < 1e-12);
  CHECK(-exp_integral_Ei_minus1() > 0.219);
  CHECK(-exp_integral_Ei_minus1() < 0.220);
  const double a = std::numbers::e * (-quad) - 2.0 * std::numbers::egamma;
  CHECK(std::abs(amat_rate_constant() - a) < 1e-10);
  CHECK(amat_rate_constant() == doctest::Approx(-1.750778).epsilon(1e-6));
  CHECK(std::exp(amat_rate_constant()) == doctest::Approx(0.17362).epsilon(1e-4));
}

TEST_CASE("rate_approx_amat") {
  CHECK(rate_approx_amat(100.0, 0.0) == 0.0);
  const double a = std::numbers::e * (-e1_at_one_quadrature()) - 2.0 * std::numbers::egamma;
  const double expected = (2.0 / 3.0) * std::log2(1.0 + 100.0 * std::sqrt(std::exp(a) * 2.0));
  CHECK(rate_approx_amat(100.0, 2.0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("equal_power") {
  CHECK(equal_power(5.0, 2) == 3.0 * 5.0 / 8.0);
  CHECK(equal_power(8.0, 2) == 3.0);
  CHECK(equal_power(7.0, 4) == doctest::Approx(7.0 / 4.0));
  CHECK_THROWS_AS(equal_power(0.0, 2), Error);
  CHECK_THROWS_AS(equal_power(1.0, 1), Error);
}

TEST_CASE("theta_quadratic reproduces theta and annihilates the fixed vector") {
  Gen gen(33);
  for (int i = 0; i < 20; ++i) {
    const auto ra = gen.pd(4);
    const auto rb = gen.pd(4);
    const CVector w1 = gen.unit(4), w2 = gen.unit(4);
    const CMatrix m = theta_quadratic(w2, ra, rb);
    CHECK(std::abs(quad_form(w1, m) - theta<double>(columns(w1, w2), ra, rb)) < 1e-12);
    CHECK((m * w2).norm() < 1e-12);
  }
}

TEST_CASE("max_eig_update: null-space property, orthogonality and optimality") {
  Gen gen(34);
  for (int i = 0; i < 5; ++i) {
    const auto ra = gen.pd(4);
    const auto rb = gen.pd(4);
    const CVector w2 = gen.unit(4);
    const CMatrix m = theta_quadratic(w2, ra, rb);
    const CVector x = max_eig_update(w2, ra, rb);
    CHECK(std::abs(x.norm() - 1.0) < 1e-12);
    CHECK(std::abs(w2.dot(m * x)) < 1e-10);
    const double best = quad_form(x, m);
    for (int k = 0; k < 10000; ++k) REQUIRE(quad_form(gen.unit(4), m) <= best + 1e-12);
  }
  for (int i = 0; i < 20; ++i) {
    const auto ra = gen.pd(2);
    const auto rb = gen.pd(2);
    const CVector w2 = gen.unit(2);
    CHECK(std::abs(w2.dot(max_eig_update(w2, ra, rb))) < 1e-8);
  }
}

TEST_CASE("grad_ascent_update: fixpoint, monotone steps, agreement with Max-Eig") {
  Gen gen(35);
  for (int i = 0; i < 10; ++i) {
    const auto ra = gen.pd(4);
    const auto rb = gen.pd(4);
    const CVector w2 = gen.unit(4);
    const CMatrix m = theta_quadratic(w2, ra, rb);
    const CVector star = max_eig_update(w2, ra, rb);
    const double top = quad_form(star, m);
    CHECK(std::abs(quad_form(grad_ascent_update(star, w2, ra, rb), m) - top) < 1e-12);

    CVector w = gen.unit(4);
    double prev = quad_form(w, m);
    for (int s = 0; s < 50; ++s) {
      w = grad_ascent_update(w, w2, ra, rb);
      const double now = quad_form(w, m);
      CHECK(now >= prev - 1e-12);
      prev = now;
    }
    CHECK(std::abs(prev - top) < 1e-6);
  }
}

TEST_CASE("optimize_precoders: two antennas reach the trace expression") {
  Gen gen(36);
  for (int i = 0; i < 10; ++i) {
    const auto ra = gen.exp_model(2);
    const auto rb = gen.exp_model(2);
    for (auto method : {UpdateMethod::MaxEig, UpdateMethod::GradAct}) {
      OptimizeOptions opts;
      opts.method = method;
      const PrecoderSolution sol = optimize_precoders(ra, rb, opts);
      CHECK(std::abs(sol.theta - trace_closed_form(ra, rb)) < 1e-8);
      const CMatrix gram = sol.columns.adjoint() * sol.columns;
      // Gradient steps settle orthogonality only to the square root of the
      // objective tolerance since theta is flat to second order there.
      const double tol = method == UpdateMethod::MaxEig ? 1e-8 : 1e-4;
      CHECK((gram - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < tol);
    }
  }
}

TEST_CASE("optimize_precoders: monotone fast convergence, orthogonal columns, beats WE and ORG") {
  Gen gen(37);
  int slowest = 0;
  for (int dim : {4, 8}) {
    for (int i = 0; i < 25; ++i) {
      const auto ra = gen.exp_model(dim);
      const auto rb = gen.exp_model(dim);
      const AmatDesign d = optimize_amat_precoders(ra, rb);
      for (const ConvergenceTrace* tr : {&d.trace_w, &d.trace_q}) {
        CHECK(tr->converged);
        slowest = std::max(slowest, tr->iterations);
        for (std::size_t k = 1; k < tr->step_values.size(); ++k)
          CHECK(tr->step_values[k] >= tr->step_values[k - 1] - 1e-12);
      }
      const CMatrix& w = d.precoders.W;
      CHECK(std::abs(w.col(0).dot(w.col(1))) < 1e-6);
      const double opt_w = theta<double>(w, ra, rb);
      const double opt_q = theta<double>(d.precoders.Q, ra, rb);
      const AmatPrecoders we = we_amat_precoders(ra, rb);
      const AmatPrecoders org = org_precoders(dim);
      CHECK(opt_w >= theta<double>(we.W, ra, rb) - 1e-9);
      CHECK(opt_w >= theta<double>(org.W, ra, rb) - 1e-9);
      CHECK(opt_q >= theta<double>(we.Q, ra, rb) - 1e-9);
      CHECK(opt_q >= theta<double>(org.Q, ra, rb) - 1e-9);
    }
  }
  CHECK(slowest <= 30);
}

TEST_CASE("optimize_precoders: GradAct trace is monotone") {
  Gen gen(38);
  const auto ra = gen.exp_model(4);
  const auto rb = gen.exp_model(4);
  OptimizeOptions opts;
  opts.method = UpdateMethod::GradAct;
  const PrecoderSolution sol = optimize_precoders(ra, rb, opts);
  for (std::size_t k = 1; k < sol.trace.step_values.size(); ++k)
    CHECK(sol.trace.step_values[k] >= sol.trace.step_values[k - 1] - 1e-12);
  CHECK_THROWS_AS(optimize_precoders(ra, rb, OptimizeOptions{.eps = 0.0}), Error);
}

TEST_CASE("preset precoders have the documented shape") {
  const auto ra = exp_correlation(0.9, 0.0, 4);
  const auto rb = exp_correlation(0.8, 2.0, 4);
  const AmatPrecoders org = org_precoders(4);
  CHECK(org.W == CMatrix::Identity(4, 2));
  const AmatPrecoders we = we_amat_precoders(ra, rb);
  const auto eb = eig_hermitian(rb);
  CHECK(std::abs(quad_form<double>(we.W.col(0), rb) - eb.values(3)) < 1e-12);
  CHECK(std::abs(quad_form<double>(we.W.col(1), rb) - eb.values(2)) < 1e-12);
  const AmatPrecoders ge = ge_amat_precoders(ra, rb);
  CHECK(std::abs(ge.W.col(0).norm() - 1.0) < 1e-12);
}

TEST_CASE("amat_rate_sample agrees with an explicit determinant") {
  Gen gen(39);
  for (int i = 0; i < 20; ++i) {
    ChannelTriple ch;
    for (int s = 0; s < 3; ++s) {
      ch.h[s] = gen.cn_vector(3);
      ch.g[s] = gen.cn_vector(3);
    }
    const AmatPrecoders pre{gen.unitary(3).leftCols(2), gen.unitary(3).leftCols(2)};
    const double rho = 7.0;
    const cplx h21 = ch.h[1](0), h31 = ch.h[2](0), g21 = ch.g[1](0), g31 = ch.g[2](0);
    const Eigen::RowVector2cd h1w = ch.h[0].adjoint() * pre.W, g1w = ch.g[0].adjoint() * pre.W;
    const Eigen::RowVector2cd g1q = ch.g[0].adjoint() * pre.Q, h1q = ch.h[0].adjoint() * pre.Q;
    const double a = two_obs_rate(std::conj(h21) * h1w, std::conj(h31) * g1w, 1.0 + std::norm(h21), rho);
    const double b = two_obs_rate(std::conj(g31) * g1q, std::conj(g21) * h1q, 1.0 + std::norm(g31), rho);
    CHECK(amat_rate_sample(ch, pre, rho) == doctest::Approx((a + b) / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("mc_rate_amat: vanishing power, pre-log slope, unitary invariance") {
  const auto ra = exp_correlation(0.95, 0.0, 2);
  const auto rb = exp_correlation(0.9, 2.0, 2);
  CHECK(mc_rate_amat(ra, rb, org_precoders(2), 1e-8, 2000, 1).mean_bits < 1e-6);

  const RateEstimate lo = mc_rate_amat(ra, rb, org_precoders(2), 1e3, 10000, 2);
  const RateEstimate hi = mc_rate_amat(ra, rb, org_precoders(2), 1e4, 10000, 2);
  const double slope = (hi.mean_bits - lo.mean_bits) / std::log2(10.0);
  CHECK(slope >= 1.25);
  CHECK(slope <= 1.42);

  Gen gen(40);
  const AmatPrecoders rnd{gen.unitary(2), gen.unitary(2)};
  const RateEstimate x = mc_rate_amat(ra, rb, org_precoders(2), 37.5, 10000, 3);
  const RateEstimate y = mc_rate_amat(ra, rb, rnd, 37.5, 10000, 3);
  CHECK(std::abs(x.mean_bits - y.mean_bits) <= 2.0 * combined_stderr(x, y));
  CHECK(std::abs(x.mean_bits - y.mean_bits) < 1e-9);  // identical per realization

  CHECK_THROWS_AS(mc_rate_amat(ra, rb, org_precoders(2), 0.0, 10, 1), Error);
  CHECK_THROWS_AS(mc_rate_amat(ra, rb, AmatPrecoders{CMatrix::Identity(2, 1), CMatrix::Identity(2, 1)}, 1.0, 10, 1), Error);
}
