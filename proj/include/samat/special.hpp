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

#ifndef SAMAT_SPECIAL_HPP
#define SAMAT_SPECIAL_HPP

#include <numbers>

namespace samat {

inline constexpr double euler_gamma = std::numbers::egamma;

/// Ei(-1) = -E1(1), summed from the convergent power series of Ei.
double exp_integral_Ei_minus1();

/// a = e * Ei(-1) - 2 * gamma, the constant of the AMAT rate approximation.
double amat_rate_constant();

}  // namespace samat

#endif  // SAMAT_SPECIAL_HPP
