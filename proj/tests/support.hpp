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

#ifndef SAMAT_TESTS_SUPPORT_HPP
#define SAMAT_TESTS_SUPPORT_HPP

// Random test inputs drawn from std::mt19937_64, independent of the
// library's own generator.

#include "samat/linalg.hpp"

#include <Eigen/QR>

#include <random>

namespace samat::test {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  cplx cn() {
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    return {n(rng_), n(rng_)};
  }

  CVector cn_vector(int dim) {
    CVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = cn();
    return v;
  }

  CVector unit(int dim) { return cn_vector(dim).normalized(); }

  CMatrix unitary(int dim) {
    CMatrix x(dim, dim);
    for (int i = 0; i < dim; ++i) x.col(i) = cn_vector(dim);
    Eigen::HouseholderQR<CMatrix> qr(x);
    return qr.householderQ() * CMatrix::Identity(dim, dim);
  }

  /// Well-conditioned random PD covariance: X X^H / dim + 0.05 I, trace M.
  CorrelationMatrix pd(int dim) {
    CMatrix x(dim, 2 * dim);
    for (int j = 0; j < 2 * dim; ++j) x.col(j) = cn_vector(dim);
    CMatrix r = x * x.adjoint() / double(2 * dim) + 0.05 * CMatrix::Identity(dim, dim);
    return CorrelationMatrix::from_matrix(r);
  }

  /// Exponential-model covariance with random |t| in [0, tmax) and phase.
  CorrelationMatrix exp_model(int dim, double tmax = 0.99) {
    return exp_correlation(uniform(0.0, tmax), uniform(0.0, 2.0 * 3.141592653589793), dim);
  }

 private:
  std::mt19937_64 rng_;
};

inline double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace samat::test

#endif  // SAMAT_TESTS_SUPPORT_HPP
