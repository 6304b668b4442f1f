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

#include "samat/sqp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace samat {

namespace {

using Eigen::MatrixXd;

struct Eval {
  double f = 0.0;  // objective of the minimization, -objective
  RVector gf;
  double c = 0.0;
  RVector gc;
};

Eval evaluate(const NlpProblem& p, const RVector& x) {
  Eval e;
  e.gf.resize(p.dim);
  e.gc.resize(p.dim);
  e.f = -p.objective(x, &e.gf);
  e.gf = -e.gf;
  e.c = p.eq_constraint(x, &e.gc);
  if (!std::isfinite(e.f) || !std::isfinite(e.c) || !e.gf.allFinite() || !e.gc.allFinite())
    throw Error(ErrorCode::InvalidArgument, "non-finite function value or gradient");
  return e;
}

double bound_tol(const RVector& x) { return 1e-10 * std::max(1.0, x.cwiseAbs().maxCoeff()); }

// First-order KKT residual of min f s.t. c = 0, x >= l, with the equality
// multiplier estimated by least squares on the inactive components.
double kkt_residual(const Eval& e, const RVector& x, const RVector& lower, double* mu_out) {
  const Eigen::Index n = x.size();
  const double tol = bound_tol(x);
  double num = 0.0, den = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (x(i) - lower(i) > tol) {
      num += e.gc(i) * e.gf(i);
      den += e.gc(i) * e.gc(i);
    }
  }
  double mu = 0.0;
  if (den > 0.0) {
    mu = num / den;
  } else {
    // Everything at its bound: choose mu so that bound multipliers are as
    // nonnegative as possible.
    mu = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i)
      if (e.gc(i) > 0.0) mu = std::min(mu, e.gf(i) / e.gc(i));
    if (!std::isfinite(mu)) mu = 0.0;
  }
  double res = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = e.gf(i) - mu * e.gc(i);
    if (x(i) - lower(i) > tol) {
      res = std::max(res, std::abs(r));
    } else {
      res = std::max(res, std::max(0.0, -r));
    }
  }
  if (mu_out) *mu_out = mu;
  return res;
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::Stalled: return "Stalled";
    case SolveStatus::MaxIter: return "MaxIter";
  }
  return "Unknown";
}

double check_gradient(const SmoothFunction& f, const RVector& x) {
  RVector g(x.size());
  f(x, &g);
  double worst = 0.0;
  RVector xp = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * (1.0 + std::abs(x(i)));
    // Divide by the steps actually taken in floating point.
    xp(i) = x(i) + h;
    const double up = xp(i) - x(i);
    const double fp = f(xp, nullptr);
    xp(i) = x(i) - h;
    const double down = x(i) - xp(i);
    const double fm = f(xp, nullptr);
    xp(i) = x(i);
    const double fd = (fp - fm) / (up + down);
    const double scale = std::max({std::abs(g(i)), std::abs(fd), 1e-6});
    worst = std::max(worst, std::abs(g(i) - fd) / scale);
  }
  return worst;
}

QpResult solve_equality_bound_qp(const MatrixXd& hessian, const RVector& g, const RVector& a,
                                 double b, const RVector& lower) {
  const Eigen::Index n = g.size();
  if (hessian.rows() != n || hessian.cols() != n || a.size() != n || lower.size() != n)
    throw Error(ErrorCode::DimMismatch, "QP data sizes disagree");

  QpResult out;
  out.active.assign(static_cast<std::size_t>(n), false);
  out.bound_multipliers = RVector::Zero(n);

  // Phase 1: a feasible point near d = max(lower, 0).
  RVector d = lower.cwiseMax(0.0);
  double r = b - a.dot(d);
  if (r != 0.0) {
    // Prefer an unbounded move: the component whose coefficient has the
    // sign of r with the largest magnitude can absorb r by increasing.
    Eigen::Index best = -1;
    for (Eigen::Index i = 0; i < n; ++i)
      if (a(i) * r > 0.0 && (best < 0 || std::abs(a(i)) > std::abs(a(best)))) best = i;
    if (best >= 0) {
      d(best) += r / a(best);
      r = 0.0;
    } else {
      // Only decreasing moves remain; walk components down to their bounds.
      for (Eigen::Index i = 0; i < n && r != 0.0; ++i) {
        if (a(i) == 0.0) continue;
        const double want = r / a(i);  // negative
        const double room = lower(i) - d(i);
        const double step = std::max(want, room);
        d(i) += step;
        r -= a(i) * step;
        if (std::abs(r) <= 1e-15 * (1.0 + std::abs(b))) r = 0.0;
      }
      out.feasible = (r == 0.0);
    }
  }

  std::vector<bool>& active = out.active;
  for (Eigen::Index i = 0; i < n; ++i) active[static_cast<std::size_t>(i)] = (d(i) <= lower(i));
  const double a_norm = a.norm();
  double mu = 0.0;

  const int max_iter = 50 * static_cast<int>(n) + 50;
  for (int it = 0; it < max_iter; ++it) {
    std::vector<Eigen::Index> free;
    for (Eigen::Index i = 0; i < n; ++i)
      if (!active[static_cast<std::size_t>(i)]) free.push_back(i);
    const Eigen::Index nf = static_cast<Eigen::Index>(free.size());

    const RVector grad = g + hessian * d;
    RVector p = RVector::Zero(n);
    if (nf > 0) {
      RVector af(nf), qf(nf);
      MatrixXd hf(nf, nf);
      for (Eigen::Index i = 0; i < nf; ++i) {
        af(i) = a(free[i]);
        qf(i) = grad(free[i]);
        for (Eigen::Index j = 0; j < nf; ++j) hf(i, j) = hessian(free[i], free[j]);
      }
      const bool with_eq = af.norm() > 1e-14 * std::max(1.0, a_norm);
      RVector sol;
      if (with_eq) {
        MatrixXd kkt = MatrixXd::Zero(nf + 1, nf + 1);
        kkt.topLeftCorner(nf, nf) = hf;
        kkt.block(0, nf, nf, 1) = -af;
        kkt.block(nf, 0, 1, nf) = af.transpose();
        RVector rhs = RVector::Zero(nf + 1);
        rhs.head(nf) = -qf;
        sol = kkt.colPivHouseholderQr().solve(rhs);
        mu = sol(nf);
      } else {
        sol = hf.ldlt().solve(-qf);
      }
      for (Eigen::Index i = 0; i < nf; ++i) p(free[i]) = sol(i);
    } else {
      mu = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < n; ++i)
        if (a(i) > 0.0) mu = std::min(mu, grad(i) / a(i));
      if (!std::isfinite(mu)) mu = 0.0;
    }

    const double scale = 1.0 + d.cwiseAbs().maxCoeff();
    if (p.cwiseAbs().maxCoeff() <= 1e-13 * scale) {
      const RVector grad_now = g + hessian * d;
      Eigen::Index release = -1;
      double most_negative = -1e-12 * (1.0 + grad_now.cwiseAbs().maxCoeff());
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!active[static_cast<std::size_t>(i)]) continue;
        const double nu = grad_now(i) - mu * a(i);
        out.bound_multipliers(i) = nu;
        if (nu < most_negative) {
          most_negative = nu;
          release = i;
        }
      }
      if (release < 0) break;
      active[static_cast<std::size_t>(release)] = false;
      continue;
    }

    // Ratio test against the inactive bounds.
    double alpha = 1.0;
    Eigen::Index blocking = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (active[static_cast<std::size_t>(i)] || p(i) >= 0.0) continue;
      const double ai = (lower(i) - d(i)) / p(i);
      if (ai < alpha) {
        alpha = std::max(0.0, ai);
        blocking = i;
      }
    }
    d += alpha * p;
    if (blocking >= 0) {
      d(blocking) = lower(blocking);
      active[static_cast<std::size_t>(blocking)] = true;
    }
  }

  for (Eigen::Index i = 0; i < n; ++i)
    if (active[static_cast<std::size_t>(i)]) d(i) = lower(i);
  const RVector grad_final = g + hessian * d;
  for (Eigen::Index i = 0; i < n; ++i)
    out.bound_multipliers(i) = active[static_cast<std::size_t>(i)] ? grad_final(i) - mu * a(i) : 0.0;
  out.d = d;
  out.eq_multiplier = mu;
  return out;
}

SolveResult solve(const NlpProblem& problem, const RVector& x0, const SqpOptions& opts) {
  const int n = problem.dim;
  if (n < 1 || x0.size() != n || problem.lower_bounds.size() != n)
    throw Error(ErrorCode::DimMismatch, "problem dimension does not match x0 / bounds");
  if (!problem.objective || !problem.eq_constraint)
    throw Error(ErrorCode::InvalidArgument, "objective and constraint are required");

  const RVector& lower = problem.lower_bounds;
  RVector x = x0.cwiseMax(lower);

  if (opts.validate_gradients) {
    const double ef = check_gradient(problem.objective, x);
    const double ec = check_gradient(problem.eq_constraint, x);
    if (ef > opts.gradient_tol || ec > opts.gradient_tol)
      throw Error(ErrorCode::InvalidArgument, "analytic gradient disagrees with finite differences");
  }

  SolveResult result;
  SolveReport& rep = result.report;
  Eval e = evaluate(problem, x);
  MatrixXd hess = MatrixXd::Identity(n, n);
  double penalty = 0.0;
  int stall = 0;
  bool scaled = false;

  auto finish = [&](SolveStatus status, int iterations) {
    double mu = 0.0;
    rep.kkt_residual = kkt_residual(e, x, lower, &mu);
    rep.constraint_residual = std::abs(e.c);
    rep.status = status;
    rep.iterations = iterations;
    rep.objective_value = -e.f;
    rep.multiplier = -mu;
    result.x = x;
    return result;
  };

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    const double kkt_tol = opts.kkt_tol_rel * (1.0 + std::abs(e.f));
    if (kkt_residual(e, x, lower, nullptr) <= kkt_tol && std::abs(e.c) <= opts.ctol)
      return finish(SolveStatus::Converged, iter);

    const QpResult qp = solve_equality_bound_qp(hess, e.gf, e.gc, -e.c, lower - x);
    const RVector& d = qp.d;
    penalty = std::max(penalty, opts.penalty_factor * std::abs(qp.eq_multiplier) + 1e-8);

    const double merit0 = e.f + penalty * std::abs(e.c);
    const double slope = e.gf.dot(d) - penalty * std::abs(e.c);

    auto snap = [&](RVector xt) -> RVector {
      for (int i = 0; i < n; ++i)
        if (qp.active[static_cast<std::size_t>(i)] || xt(i) < lower(i)) xt(i) = std::max(xt(i), lower(i));
      return xt;
    };
    auto full_step = [&]() -> RVector {
      RVector xt = x + d;
      for (int i = 0; i < n; ++i)
        if (qp.active[static_cast<std::size_t>(i)]) xt(i) = lower(i);
      return xt.cwiseMax(lower);
    };

    bool accepted = false;
    RVector x_new;
    Eval e_new;
    if (d.cwiseAbs().maxCoeff() > 0.0) {
      // Full step, then a second-order correction, then backtracking.
      x_new = full_step();
      e_new = evaluate(problem, x_new);
      const double armijo_term = std::min(slope, 0.0);
      if (e_new.f + penalty * std::abs(e_new.c) <= merit0 + opts.armijo * armijo_term) {
        accepted = true;
      } else if (e_new.gc.squaredNorm() > 0.0) {
        RVector xs = snap(x_new - (e_new.c / e_new.gc.squaredNorm()) * e_new.gc);
        Eval es = evaluate(problem, xs);
        if (es.f + penalty * std::abs(es.c) <= merit0 + opts.armijo * armijo_term) {
          x_new = xs;
          e_new = es;
          accepted = true;
        }
      }
      double alpha = 0.5;
      while (!accepted && alpha > 1e-12) {
        x_new = snap(x + alpha * d);
        e_new = evaluate(problem, x_new);
        if (e_new.f + penalty * std::abs(e_new.c) <= merit0 + opts.armijo * alpha * armijo_term)
          accepted = true;
        else
          alpha *= 0.5;
      }
    }

    if (!accepted) {
      hess.setIdentity();
      scaled = false;
      if (++stall >= opts.stall_limit) return finish(SolveStatus::Stalled, iter + 1);
      continue;
    }

    const double merit1 = e_new.f + penalty * std::abs(e_new.c);
    rep.merit_steps.emplace_back(merit0, merit1);
    if (merit1 < merit0 - 1e-15 * (1.0 + std::abs(merit0)))
      stall = 0;
    else if (++stall >= opts.stall_limit) {
      x = x_new;
      e = e_new;
      return finish(SolveStatus::Stalled, iter + 1);
    }

    // Damped BFGS on the Lagrangian gradient with the QP multiplier.
    const RVector s = x_new - x;
    const RVector y = (e_new.gf - qp.eq_multiplier * e_new.gc) - (e.gf - qp.eq_multiplier * e.gc);
    x = x_new;
    e = e_new;
    const double sy0 = s.dot(y);
    if (!scaled && sy0 > 0.0 && y.squaredNorm() > 0.0) {
      hess = (y.squaredNorm() / sy0) * MatrixXd::Identity(n, n);
      scaled = true;
    }
    const RVector bs = hess * s;
    const double sbs = s.dot(bs);
    if (sbs > 1e-300) {
      double theta = 1.0;
      if (sy0 < opts.powell_threshold * sbs) theta = (1.0 - opts.powell_threshold) * sbs / (sbs - sy0);
      const RVector r = theta * y + (1.0 - theta) * bs;
      const double sr = s.dot(r);
      if (sr > 1e-300) {
        hess += r * r.transpose() / sr - bs * bs.transpose() / sbs;
        hess = 0.5 * (hess + hess.transpose()).eval();
      }
    }
  }

  const double kkt_tol = opts.kkt_tol_rel * (1.0 + std::abs(e.f));
  if (kkt_residual(e, x, lower, nullptr) <= kkt_tol && std::abs(e.c) <= opts.ctol)
    return finish(SolveStatus::Converged, opts.max_iter);
  return finish(SolveStatus::MaxIter, opts.max_iter);
}

}  // namespace samat
