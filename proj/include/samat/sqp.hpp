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

#ifndef SAMAT_SQP_HPP
#define SAMAT_SQP_HPP

// Small dense SQP for
//
//   maximize f(x)  s.t.  c(x) = 0,  x >= lower
//
// with a damped-BFGS Lagrangian Hessian, an active-set QP subproblem and an
// l1 merit line search. Sized for a handful of variables.

#include "samat/types.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace samat {

/// Returns the value at x and, when `grad` is non-null, writes the gradient.
using SmoothFunction = std::function<double(const RVector& x, RVector* grad)>;

struct NlpProblem {
  int dim = 0;
  SmoothFunction objective;    // maximized
  SmoothFunction eq_constraint;
  RVector lower_bounds;
};

enum class SolveStatus { Converged, Stalled, MaxIter };

const char* to_string(SolveStatus status);

struct SolveReport {
  int iterations = 0;
  double kkt_residual = 0.0;
  double constraint_residual = 0.0;
  SolveStatus status = SolveStatus::MaxIter;
  double objective_value = 0.0;
  double multiplier = 0.0;  // equality multiplier of the maximization problem
  // (merit before, merit after) for every accepted step, same penalty.
  std::vector<std::pair<double, double>> merit_steps;
};

struct SqpOptions {
  double kkt_tol_rel = 1e-7;   // kkt_tol = kkt_tol_rel * (1 + |f|)
  double ctol = 1e-6;          // absolute equality tolerance
  int max_iter = 200;
  int stall_limit = 10;
  double armijo = 1e-4;
  double powell_threshold = 0.2;
  double penalty_factor = 1.5;
  bool validate_gradients = true;
  double gradient_tol = 1e-4;
};

struct SolveResult {
  RVector x;
  SolveReport report;
};

/// Solves the problem from x0 (projected onto the bounds first).
/// Throws Error(InvalidArgument) when a supplied gradient disagrees with
/// central differences at the projected start.
SolveResult solve(const NlpProblem& problem, const RVector& x0, const SqpOptions& opts = {});

/// Worst componentwise relative error between the analytic gradient and
/// central differences with step 1e-6 * (1 + |x_i|).
double check_gradient(const SmoothFunction& f, const RVector& x);

/// Dense convex QP used as the SQP subproblem:
///   minimize g'd + d'Hd/2  s.t.  a'd = b,  d >= lower.
struct QpResult {
  RVector d;
  double eq_multiplier = 0.0;  // grad q(d) = mu * a + nu at the solution
  RVector bound_multipliers;
  std::vector<bool> active;
  bool feasible = true;
};

QpResult solve_equality_bound_qp(const Eigen::MatrixXd& hessian, const RVector& g,
                                 const RVector& a, double b, const RVector& lower);

}  // namespace samat

#endif  // SAMAT_SQP_HPP
