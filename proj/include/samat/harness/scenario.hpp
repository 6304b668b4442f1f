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

#ifndef SAMAT_HARNESS_SCENARIO_HPP
#define SAMAT_HARNESS_SCENARIO_HPP

#include "samat/amat.hpp"
#include "samat/samat.hpp"
#include "samat/sbf.hpp"

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace samat::harness {

enum class Scheme { SbfWe, SbfGe, AmatOrg, AmatWe, AmatGe, AmatOpt, SamatCase1, SamatCase2 };

const char* to_string(Scheme scheme);

/// Parses the names printed by to_string, e.g. "SAMAT-case1".
Scheme scheme_from_string(std::string_view name);

std::vector<Scheme> all_schemes();

struct PhasePolicy {
  enum class Kind { Fixed, RandomUniform, RandomMinGap };
  Kind kind = Kind::Fixed;
  double phase_a = 0.0;
  double phase_b = 0.0;
  double min_gap = std::numbers::pi / 2.0;  // RandomMinGap only
};

const char* to_string(PhasePolicy::Kind kind);
PhasePolicy::Kind phase_kind_from_string(std::string_view name);

struct Scenario {
  int M = 2;
  double t_mag_A = 0.95;
  double t_mag_B = 0.9;
  PhasePolicy phase_policy{};
  std::vector<double> snr_grid_db{0.0, 10.0, 20.0, 30.0};
  std::vector<double> t_grid{0.0, 0.5, 0.9, 0.99};
  std::vector<Scheme> schemes{};
  std::int64_t trials = 10000;
  std::uint64_t master_seed = 1;

  /// Throws Error(InvalidArgument) on empty grids, trials < 1 or M < 2.
  void validate() const;
};

/// Which grid a sweep walks. Snr: fixed (t_mag_A, t_mag_B) across snr_grid_db.
/// T: t_mag_A = t_mag_B = t for every t in t_grid, across snr_grid_db.
enum class SweepAxis { Snr, T };

struct ResultRow {
  Scheme scheme = Scheme::SbfWe;
  int M = 2;
  double t_mag_A = 0.0;
  double t_mag_B = 0.0;
  double phase_A = 0.0;
  double phase_B = 0.0;
  double snr_db = 0.0;
  RateEstimate rate{};
  std::optional<PowerAllocation> power;  // SAMAT rows only
  double approx_bits = 0.0;              // closed-form approximation, NaN when none
  std::string status = "ok";             // "ok" or the error message of a failed cell
};

struct ResultTable {
  std::vector<ResultRow> rows;
};

/// One grid point shared by every scheme: covariances, budget and the
/// common-random-number seed.
struct Cell {
  int M = 2;
  double t_mag_A = 0.0;
  double t_mag_B = 0.0;
  double phase_A = 0.0;
  double phase_B = 0.0;
  double snr_db = 0.0;
  std::uint64_t seed = 0;
};

/// P = 10^(snr_db / 10).
double snr_to_power(double snr_db);

/// Cells in table order (t outer, SNR inner). Phases are drawn once per cell.
std::vector<Cell> make_cells(const Scenario& s, SweepAxis axis);

/// Evaluates one scheme on one cell. Errors are recorded in `status`.
ResultRow evaluate_cell(const Cell& cell, Scheme scheme, std::int64_t trials);

/// Rows ordered by (cell, scheme list order); deterministic given master_seed.
ResultTable run_scenario(const Scenario& s, SweepAxis axis = SweepAxis::Snr);

/// Traces of the alternating AMAT optimizer on one covariance pair.
struct ConvergenceRecord {
  int M = 2;
  int instance = 0;
  char user = 'A';
  std::vector<double> theta_values;
};

/// `instances` random pairs per M, exponential model with random |t| in
/// [0, 0.99) and random phases, Max-Eig updates.
std::vector<ConvergenceRecord> run_convergence(const std::vector<int>& dims, int instances,
                                               std::uint64_t seed);

}  // namespace samat::harness

#endif  // SAMAT_HARNESS_SCENARIO_HPP
