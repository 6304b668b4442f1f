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

#ifndef SAMAT_HARNESS_EMIT_HPP
#define SAMAT_HARNESS_EMIT_HPP

#include "samat/harness/scenario.hpp"

#include <string>
#include <vector>

namespace samat::harness {

/// scheme,M,t_mag_A,t_mag_B,phase_A,phase_B,snr_db,mean_bits,stderr,trials,seed,P1,...,P10
std::string csv_header();

/// Header plus one line per row; numbers printed with %.12g.
std::string to_csv(const ResultTable& table);

/// Column names the plot script reads.
std::vector<std::string> plot_columns();

/// Python/matplotlib script that plots mean_bits against `x_column`
/// ("snr_db" or "t_mag_A") with one curve per scheme from `csv_name`.
std::string plot_script(const std::string& csv_name, const std::string& x_column);

/// theta trace per (M, instance, user): M,instance,user,iteration,theta.
std::string convergence_csv(const std::vector<ConvergenceRecord>& records);

/// Writes `content` to `path`; throws Error(IoError) on failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace samat::harness

#endif  // SAMAT_HARNESS_EMIT_HPP
