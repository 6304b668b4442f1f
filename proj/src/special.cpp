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

#include "samat/special.hpp"

#include <cmath>

namespace samat {

// Ei(x) = gamma + ln|x| + sum_{k>=1} x^k / (k * k!). At x = -1 the log term
// vanishes and the alternating tail is below 1e-17 after 20 terms.
double exp_integral_Ei_minus1() {
  double sum = 0.0;
  double power_over_factorial = 1.0;
  for (int k = 1; k <= 30; ++k) {
    power_over_factorial *= -1.0 / k;
    sum += power_over_factorial / k;
  }
  return euler_gamma + sum;
}

double amat_rate_constant() {
  return std::numbers::e * exp_integral_Ei_minus1() - 2.0 * euler_gamma;
}

}  // namespace samat
