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

#ifndef SAMAT_HARNESS_CONFIG_HPP
#define SAMAT_HARNESS_CONFIG_HPP

// Flat "key = value" scenario files. '#' starts a comment, lists are comma
// separated, angles in radians, SNR in dB.
//
//   M            = 2
//   t_mag_A      = 0.95
//   t_mag_B      = 0.9
//   phase_policy = random_min_gap     # fixed | random_uniform | random_min_gap
//   phase_A      = 0.0                # fixed only
//   phase_B      = 1.5707963267948966 # fixed only
//   min_gap      = 1.5707963267948966 # random_min_gap only
//   snr_grid_db  = 0, 10, 20, 30
//   t_grid       = 0, 0.5, 0.9, 0.99
//   schemes      = SBF-WE, AMAT-ORG, SAMAT-case1
//   trials       = 10000
//   master_seed  = 1

#include "samat/harness/scenario.hpp"

#include <string>

namespace samat::harness {

/// Parses config text; unknown keys and malformed values throw
/// Error(InvalidArgument). Missing keys keep the Scenario defaults.
Scenario parse_config(const std::string& text);

/// Reads and parses a config file; throws Error(IoError) if unreadable.
Scenario load_config(const std::string& path);

/// Inverse of parse_config (round-trips through parse_config).
std::string format_config(const Scenario& s);

}  // namespace samat::harness

#endif  // SAMAT_HARNESS_CONFIG_HPP
