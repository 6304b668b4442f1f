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

#include "samat/harness/scenario.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <utility>

namespace samat::harness {

namespace {

constexpr std::array<std::pair<Scheme, const char*>, 8> scheme_names{{
    {Scheme::SbfWe, "SBF-WE"},
    {Scheme::SbfGe, "SBF-GE"},
    {Scheme::AmatOrg, "AMAT-ORG"},
    {Scheme::AmatWe, "AMAT-WE"},
    {Scheme::AmatGe, "AMAT-GE"},
    {Scheme::AmatOpt, "AMAT-OPT"},
    {Scheme::SamatCase1, "SAMAT-case1"},
    {Scheme::SamatCase2, "SAMAT-case2"},
}};

constexpr std::uint64_t phase_stream = stream::auxiliary + 32;
constexpr std::uint64_t seed_stream = stream::auxiliary + 33;

double circular_gap(double a, double b) {
  const double two_pi = 2.0 * std::numbers::pi;
  double d = std::fmod(std::abs(a - b), two_pi);
  return std::min(d, two_pi - d);
}

std::pair<double, double> draw_phases(const PhasePolicy& policy, std::uint64_t master,
                                      std::uint64_t cell) {
  if (policy.kind == PhasePolicy::Kind::Fixed) return {policy.phase_a, policy.phase_b};
  StreamRng rng(SeedSpec{master, cell}, phase_stream);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const double a = two_pi * (1.0 - rng.uniform());
    const double b = two_pi * (1.0 - rng.uniform());
    if (policy.kind == PhasePolicy::Kind::RandomUniform) return {a, b};
    if (circular_gap(a, b) >= policy.min_gap) return {a, b};
  }
  throw Error(ErrorCode::InvalidArgument, "min_gap cannot be met by rejection sampling");
}

AmatPrecoders amat_precoders_for(Scheme scheme, const CorrelationMatrix& ra,
                                 const CorrelationMatrix& rb, std::uint64_t seed) {
  switch (scheme) {
    case Scheme::AmatOrg: return org_precoders(static_cast<int>(ra.dim()));
    case Scheme::AmatWe: return we_amat_precoders(ra, rb);
    case Scheme::AmatGe: return ge_amat_precoders(ra, rb);
    default: {
      OptimizeOptions opts;
      opts.seed = seed;
      return optimize_amat_precoders(ra, rb, opts).precoders;
    }
  }
}

}  // namespace

const char* to_string(Scheme scheme) {
  for (const auto& [s, name] : scheme_names)
    if (s == scheme) return name;
  return "unknown";
}

Scheme scheme_from_string(std::string_view name) {
  for (const auto& [s, n] : scheme_names)
    if (name == n) return s;
  throw Error(ErrorCode::InvalidArgument, "unknown scheme '" + std::string(name) + "'");
}

std::vector<Scheme> all_schemes() {
  std::vector<Scheme> out;
  for (const auto& entry : scheme_names) out.push_back(entry.first);
  return out;
}

const char* to_string(PhasePolicy::Kind kind) {
  switch (kind) {
    case PhasePolicy::Kind::Fixed: return "fixed";
    case PhasePolicy::Kind::RandomUniform: return "random_uniform";
    case PhasePolicy::Kind::RandomMinGap: return "random_min_gap";
  }
  return "unknown";
}

PhasePolicy::Kind phase_kind_from_string(std::string_view name) {
  for (auto k : {PhasePolicy::Kind::Fixed, PhasePolicy::Kind::RandomUniform,
                 PhasePolicy::Kind::RandomMinGap})
    if (name == to_string(k)) return k;
  throw Error(ErrorCode::InvalidArgument, "unknown phase policy '" + std::string(name) + "'");
}

void Scenario::validate() const {
  if (M < 2) throw Error(ErrorCode::BadDim, "M must be >= 2");
  if (snr_grid_db.empty()) throw Error(ErrorCode::InvalidArgument, "snr_grid_db is empty");
  if (t_grid.empty()) throw Error(ErrorCode::InvalidArgument, "t_grid is empty");
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (phase_policy.kind == PhasePolicy::Kind::RandomMinGap &&
      !(phase_policy.min_gap >= 0.0 && phase_policy.min_gap < std::numbers::pi))
    throw Error(ErrorCode::InvalidArgument, "min_gap must lie in [0, pi)");
}

double snr_to_power(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

std::vector<Cell> make_cells(const Scenario& s, SweepAxis axis) {
  s.validate();
  std::vector<std::pair<double, double>> mags;
  if (axis == SweepAxis::T) {
    for (double t : s.t_grid) mags.emplace_back(t, t);
  } else {
    mags.emplace_back(s.t_mag_A, s.t_mag_B);
  }

  std::vector<Cell> cells;
  std::uint64_t index = 0;
  for (const auto& [ta, tb] : mags) {
    for (double snr : s.snr_grid_db) {
      Cell c;
      c.M = s.M;
      c.t_mag_A = ta;
      c.t_mag_B = tb;
      std::tie(c.phase_A, c.phase_B) = draw_phases(s.phase_policy, s.master_seed, index);
      c.snr_db = snr;
      c.seed = StreamRng(SeedSpec{s.master_seed, index}, seed_stream)();
      cells.push_back(c);
      ++index;
    }
  }
  return cells;
}

ResultRow evaluate_cell(const Cell& cell, Scheme scheme, std::int64_t trials) {
  ResultRow row;
  row.scheme = scheme;
  row.M = cell.M;
  row.t_mag_A = cell.t_mag_A;
  row.t_mag_B = cell.t_mag_B;
  row.phase_A = cell.phase_A;
  row.phase_B = cell.phase_B;
  row.snr_db = cell.snr_db;
  row.approx_bits = std::numeric_limits<double>::quiet_NaN();
  row.rate.trials = trials;
  row.rate.seed = cell.seed;

  try {
    const auto ra = exp_correlation(cell.t_mag_A, cell.phase_A, cell.M);
    const auto rb = exp_correlation(cell.t_mag_B, cell.phase_B, cell.M);
    const double power = snr_to_power(cell.snr_db);

    switch (scheme) {
      case Scheme::SbfWe:
      case Scheme::SbfGe: {
        const SbfPrecoders pre = scheme == Scheme::SbfWe ? we_precoders(ra, rb) : ge_precoders(ra, rb);
        row.rate = mc_rate_sbf(ra, rb, pre, power, trials, cell.seed);
        break;
      }
      case Scheme::AmatOrg:
      case Scheme::AmatWe:
      case Scheme::AmatGe:
      case Scheme::AmatOpt: {
        const AmatPrecoders pre = amat_precoders_for(scheme, ra, rb, cell.seed);
        const double rho = equal_power(power, cell.M);
        row.rate = mc_rate_amat(ra, rb, pre, rho, trials, cell.seed);
        row.approx_bits = rate_approx_amat(rho, theta<double>(pre.W, ra, rb)) +
                          rate_approx_amat(rho, theta<double>(pre.Q, ra, rb));
        break;
      }
      case Scheme::SamatCase1:
      case Scheme::SamatCase2: {
        const auto kind = scheme == Scheme::SamatCase1 ? PrecoderCase::Case1 : PrecoderCase::Case2;
        const SamatPrecoders pre = case_precoders(kind, ra, rb);
        const RateCoefficients coef = coefficients(pre, ra, rb);
        PowerOptions opts;
        opts.seed = cell.seed;
        const PowerSolution sol = optimize_power(coef, power, opts);
        row.power = sol.power;
        row.approx_bits = sol.objective;
        row.rate = mc_rate_samat(ra, rb, pre, sol.power, trials, cell.seed);
        break;
      }
    }
  } catch (const std::exception& e) {
    row.status = e.what();
    row.rate.mean_bits = std::numeric_limits<double>::quiet_NaN();
    row.rate.stderr_bits = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

ResultTable run_scenario(const Scenario& s, SweepAxis axis) {
  const std::vector<Cell> cells = make_cells(s, axis);
  ResultTable table;
  if (s.schemes.empty()) return table;
  table.rows.resize(cells.size() * s.schemes.size());
  // Monte Carlo inside each cell is already parallel; cells run in order.
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (std::size_t k = 0; k < s.schemes.size(); ++k)
      table.rows[c * s.schemes.size() + k] = evaluate_cell(cells[c], s.schemes[k], s.trials);
  return table;
}

std::vector<ConvergenceRecord> run_convergence(const std::vector<int>& dims, int instances,
                                               std::uint64_t seed) {
  std::vector<ConvergenceRecord> out;
  std::uint64_t index = 0;
  for (int m : dims) {
    for (int i = 0; i < instances; ++i, ++index) {
      StreamRng rng(SeedSpec{seed, index}, stream::auxiliary + 40);
      const double two_pi = 2.0 * std::numbers::pi;
      const double ta = 0.99 * (1.0 - rng.uniform());
      const double tb = 0.99 * (1.0 - rng.uniform());
      const double pa = two_pi * rng.uniform();
      const double pb = two_pi * rng.uniform();
      const auto ra = exp_correlation(ta, pa, m);
      const auto rb = exp_correlation(tb, pb, m);
      OptimizeOptions opts;
      opts.seed = rng();
      const AmatDesign design = optimize_amat_precoders(ra, rb, opts);
      out.push_back({m, i, 'A', design.trace_w.theta_values});
      out.push_back({m, i, 'B', design.trace_q.theta_values});
    }
  }
  return out;
}

}  // namespace samat::harness
