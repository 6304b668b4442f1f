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

#ifndef SAMAT_LINALG_HPP
#define SAMAT_LINALG_HPP

// Transmit correlation matrices and the small dense Hermitian eigen-utilities
// the rest of the library is built on. Everything is templated on the real
// scalar type; the library itself instantiates double.

#include "samat/types.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <utility>

namespace samat {

/// Smallest eigenvalue must exceed pd_tol * largest eigenvalue.
inline constexpr double pd_tol = 1e-10;
/// exp_correlation rejects |t| >= 1 - pd_guard.
inline constexpr double pd_guard = 1e-6;
/// Relative tolerance accepted when validating Hermitian input.
inline constexpr double hermitian_tol = 1e-12;

namespace detail {

template <typename Derived>
auto hermitian_part(const Eigen::MatrixBase<Derived>& a) {
  using Mat = typename Derived::PlainObject;
  Mat h = a;
  Mat sym = (h + h.adjoint()) / typename Derived::RealScalar(2);
  for (Eigen::Index i = 0; i < sym.rows(); ++i)
    sym(i, i) = std::real(sym(i, i));
  return sym;
}

template <typename Real>
bool is_hermitian(const CMat<Real>& a, Real tol) {
  if (a.rows() != a.cols()) return false;
  const Real scale = std::max<Real>(Real(1), a.cwiseAbs().maxCoeff());
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

// Makes the largest-magnitude component real and positive. Near-ties resolve
// to the lowest index so that round-off cannot flip the choice.
template <typename Real>
void normalize_phase(Eigen::Ref<CVec<Real>> v) {
  if (v.size() == 0) return;
  const Real top = v.cwiseAbs().maxCoeff();
  if (top == Real(0)) return;
  Eigen::Index pivot = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= top * (Real(1) - Real(1e-9))) {
      pivot = i;
      break;
    }
  }
  const std::complex<Real> phase = v(pivot) / std::abs(v(pivot));
  v /= phase;
  v(pivot) = std::complex<Real>(std::abs(v(pivot)), Real(0));
}

}  // namespace detail

/// Hermitian positive-definite M x M transmit covariance, trace normalized to M.
template <typename Real>
class CorrelationMatrixT {
 public:
  using Matrix = CMat<Real>;

  /// Validates and stores `entries`. With `renormalize` the trace is scaled to
  /// M; without it a trace off by more than 1e-12 is rejected.
  static CorrelationMatrixT from_matrix(const Matrix& entries, bool renormalize = true) {
    if (entries.rows() != entries.cols())
      throw Error(ErrorCode::DimMismatch, "correlation matrix must be square");
    if (entries.rows() < 2) throw Error(ErrorCode::BadDim, "correlation matrix needs M >= 2");
    if (!detail::is_hermitian<Real>(entries, Real(hermitian_tol)))
      throw Error(ErrorCode::InvalidArgument, "correlation matrix is not Hermitian");

    Matrix h = detail::hermitian_part(entries);
    const Real dim = static_cast<Real>(h.rows());
    const Real trace = h.trace().real();
    if (!(trace > Real(0)))
      throw Error(ErrorCode::NotPositiveDefinite, "non-positive trace");
    if (renormalize) {
      h *= dim / trace;
      h = detail::hermitian_part(h);
    } else if (std::abs(trace - dim) > Real(1e-12) * dim) {
      throw Error(ErrorCode::InvalidArgument, "trace differs from M");
    }

    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw Error(ErrorCode::ConvergenceFailure, "eigenvalue check did not converge");
    const Real lmin = es.eigenvalues()(0);
    const Real lmax = es.eigenvalues()(h.rows() - 1);
    if (!(lmin > Real(pd_tol) * lmax))
      throw Error(ErrorCode::NotPositiveDefinite, "smallest eigenvalue below pd_tol * largest");
    return CorrelationMatrixT(std::move(h));
  }

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }
  std::complex<Real> operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

 private:
  explicit CorrelationMatrixT(Matrix entries) : entries_(std::move(entries)) {}
  Matrix entries_;
};

using CorrelationMatrix = CorrelationMatrixT<double>;

/// Eigenvalues sorted descending with matching unit-norm eigenvector columns.
template <typename Real>
struct EigPairT {
  RVec<Real> values;
  CMat<Real> vectors;

  CVec<Real> max_vector() const { return vectors.col(0); }
  CVec<Real> min_vector() const { return vectors.col(vectors.cols() - 1); }
  Real max_value() const { return values(0); }
  Real min_value() const { return values(values.size() - 1); }
};

using EigPair = EigPairT<double>;

/// Single-parameter exponential correlation model with t = t_mag * exp(i*phase).
template <typename Real = double>
CorrelationMatrixT<Real> exp_correlation(Real t_mag, Real phase, int dim) {
  if (dim < 2) throw Error(ErrorCode::BadDim, "exp_correlation needs M >= 2");
  if (!(t_mag >= Real(0)))
    throw Error(ErrorCode::InvalidArgument, "correlation magnitude must be nonnegative");
  if (t_mag >= Real(1) - Real(pd_guard))
    throw Error(ErrorCode::NotPositiveDefinite, "correlation magnitude too close to 1");

  CMat<Real> r(dim, dim);
  for (int i = 0; i < dim; ++i) {
    r(i, i) = Real(1);
    for (int j = i + 1; j < dim; ++j) {
      const int k = j - i;
      r(i, j) = std::polar(std::pow(t_mag, Real(k)), Real(k) * phase);
      r(j, i) = std::conj(r(i, j));
    }
  }
  return CorrelationMatrixT<Real>::from_matrix(r, false);
}

/// Eigendecomposition of a Hermitian matrix, values descending, vectors
/// phase-normalized.
template <typename Real>
EigPairT<Real> eig_hermitian(const CMat<Real>& a) {
  if (!detail::is_hermitian<Real>(a, Real(hermitian_tol)))
    throw Error(ErrorCode::InvalidArgument, "eig_hermitian input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat<Real>> es(detail::hermitian_part(a));
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");

  const Eigen::Index n = a.rows();
  EigPairT<Real> out{RVec<Real>(n), CMat<Real>(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = es.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = es.eigenvectors().col(n - 1 - k).normalized();
    detail::normalize_phase<Real>(out.vectors.col(k));
  }
  return out;
}

template <typename Real>
EigPairT<Real> eig_hermitian(const CorrelationMatrixT<Real>& r) {
  return eig_hermitian<Real>(r.matrix());
}

/// Hermitian PSD square root S with S * S = R.
template <typename Real>
CMat<Real> hermitian_sqrt(const CorrelationMatrixT<Real>& r) {
  const auto eig = eig_hermitian(r);
  if (!(eig.min_value() > Real(0)))
    throw Error(ErrorCode::NotPositiveDefinite, "negative eigenvalue in square root");
  const RVec<Real> root = eig.values.cwiseSqrt();
  CMat<Real> s = eig.vectors * root.asDiagonal() * eig.vectors.adjoint();
  return detail::hermitian_part(s);
}

/// Generalized eigenpairs of the pencil (A, B): A x = lambda B x, values
/// descending. Eigenvectors are scaled to unit Euclidean norm.
///
/// Solved by Cholesky reduction B = L L^H, a Hermitian eigensolve of
/// L^{-1} A L^{-H}, and back-substitution x = L^{-H} y.
template <typename Real>
EigPairT<Real> generalized_eig(const CorrelationMatrixT<Real>& a, const CorrelationMatrixT<Real>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "pencil dimensions differ");
  Eigen::LLT<CMat<Real>> llt(b.matrix());
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::NotPositiveDefinite, "Cholesky factorization of B failed");

  const CMat<Real> l = llt.matrixL();
  CMat<Real> c = l.template triangularView<Eigen::Lower>().solve(a.matrix());
  c = l.template triangularView<Eigen::Lower>().solve(CMat<Real>(c.adjoint())).adjoint();
  EigPairT<Real> reduced = eig_hermitian<Real>(detail::hermitian_part(c));

  CMat<Real> x = l.adjoint().template triangularView<Eigen::Upper>().solve(reduced.vectors);
  for (Eigen::Index k = 0; k < x.cols(); ++k) {
    x.col(k).normalize();
    detail::normalize_phase<Real>(x.col(k));
  }
  reduced.vectors = std::move(x);
  return reduced;
}

/// Unit vector maximizing (x^H A x) / (x^H B x), i.e. u_max(B^{-1} A).
template <typename Real>
CVec<Real> generalized_max_eigvec(const CorrelationMatrixT<Real>& a, const CorrelationMatrixT<Real>& b) {
  return generalized_eig(a, b).max_vector();
}

/// Unit vector minimizing (x^H A x) / (x^H B x), i.e. u_min(B^{-1} A).
template <typename Real>
CVec<Real> generalized_min_eigvec(const CorrelationMatrixT<Real>& a, const CorrelationMatrixT<Real>& b) {
  return generalized_eig(a, b).min_vector();
}

/// lambda_max / lambda_min of a PD correlation matrix.
template <typename Real>
Real condition_number(const CorrelationMatrixT<Real>& r) {
  const auto eig = eig_hermitian(r);
  return eig.max_value() / eig.min_value();
}

/// Condition number of B^{-1} A, from the extreme generalized eigenvalues.
template <typename Real>
Real generalized_condition_number(const CorrelationMatrixT<Real>& a, const CorrelationMatrixT<Real>& b) {
  const auto eig = generalized_eig(a, b);
  return eig.max_value() / eig.min_value();
}

/// x^H R x for Hermitian R; the imaginary round-off is dropped.
template <typename Real>
Real quad_form(const CVec<Real>& x, const CMat<Real>& r) {
  return std::real(x.dot(r * x));
}

template <typename Real>
Real quad_form(const CVec<Real>& x, const CorrelationMatrixT<Real>& r) {
  return quad_form<Real>(x, r.matrix());
}

}  // namespace samat

#endif  // SAMAT_LINALG_HPP
