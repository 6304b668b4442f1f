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

#ifndef SAMAT_TYPES_HPP
#define SAMAT_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace samat {

template <typename Real>
using CMat = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVec = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using cplx = std::complex<double>;
using CMatrix = CMat<double>;
using CVector = CVec<double>;
using RVector = RVec<double>;

enum class ErrorCode {
  NotPositiveDefinite,
  BadDim,
  DimMismatch,
  ConvergenceFailure,
  DivisionByZero,
  InvalidArgument,
  IoError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::BadDim: return "BadDim";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

// All library failures surface as this exception; code() tells them apart.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace samat

#endif  // SAMAT_TYPES_HPP
