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

// samat_cli: validate | sweep-t | sweep-snr | converge

#include "samat/harness/config.hpp"
#include "samat/harness/emit.hpp"
#include "samat/harness/oracles.hpp"
#include "samat/harness/scenario.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

using namespace samat;
using namespace samat::harness;

namespace {

struct CommonArgs {
  std::string config;
  std::uint64_t seed = 1;
  std::string out = ".";
  std::int64_t trials = 10000;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config, "Scenario config file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", args.seed, "Master seed (overrides master_seed)")->required();
  cmd->add_option("--out", args.out, "Output directory")->required();
  cmd->add_option("--trials", args.trials, "Monte Carlo trials per cell")->required()->check(CLI::PositiveNumber);
}

Scenario load(const CommonArgs& args) {
  Scenario s = load_config(args.config);
  s.master_seed = args.seed;
  s.trials = args.trials;
  s.validate();
  std::filesystem::create_directories(args.out);
  return s;
}

std::string path_in(const CommonArgs& args, const std::string& name) {
  return (std::filesystem::path(args.out) / name).string();
}

int run_sweep(const CommonArgs& args, SweepAxis axis) {
  const Scenario s = load(args);
  const ResultTable table = run_scenario(s, axis);
  const std::string stem = axis == SweepAxis::T ? "sweep_t" : "sweep_snr";
  write_file(path_in(args, stem + ".csv"), to_csv(table));
  write_file(path_in(args, stem + ".py"), plot_script(stem + ".csv", axis == SweepAxis::T ? "t_mag_A" : "snr_db"));
  int failed = 0;
  for (const auto& r : table.rows) {
    if (r.status != "ok") {
      std::cerr << to_string(r.scheme) << " at snr " << r.snr_db << " dB: " << r.status << "\n";
      ++failed;
    }
  }
  std::cout << "wrote " << table.rows.size() << " rows to " << path_in(args, stem + ".csv") << "\n";
  return failed ? 1 : 0;
}

int run_converge(const CommonArgs& args, const std::vector<int>& dims) {
  const Scenario s = load(args);
  const auto records = run_convergence(dims, static_cast<int>(s.trials), s.master_seed);
  write_file(path_in(args, "converge.csv"), convergence_csv(records));
  int slow = 0;
  for (const auto& r : records)
    if (r.theta_values.size() > 31) ++slow;
  std::cout << "wrote " << records.size() << " traces to " << path_in(args, "converge.csv")
            << " (" << slow << " longer than 30 iterations)\n";
  return 0;
}

struct Check {
  std::string name;
  double value;
  double threshold;
  bool pass;
};

int run_validate(const CommonArgs& args) {
  const Scenario s = load(args);
  const std::int64_t oracle_trials = std::max<std::int64_t>(s.trials, 100000);
  std::vector<Check> checks;

  // Lemma oracles on the scenario covariances.
  const auto ra = exp_correlation(s.t_mag_A, s.phase_policy.phase_a, s.M);
  const auto rb = exp_correlation(s.t_mag_B, s.phase_policy.phase_b, s.M);
  for (int i = 0; i < 3; ++i) {
    const CVector w = sample_cn01(s.M, SeedSpec{s.master_seed, static_cast<std::uint64_t>(i)}, stream::auxiliary).normalized();
    const auto l1 = lemma1_oracle(i % 2 ? rb : ra, w, oracle_trials, s.master_seed + static_cast<std::uint64_t>(i));
    checks.push_back({"lemma1_gap_" + std::to_string(i), l1.gap, 0.01, l1.gap < 0.01});
  }
  {
    RatioSpec spec{ra.matrix(), CVector::Unit(s.M, 0), 1.0, 1.0, false,
                   {{we_precoders(ra, rb).w, 1.0}}, true};
    const auto l2 = lemma2_oracle(spec, oracle_trials, s.master_seed);
    checks.push_back({"lemma2_independent_lower_bound", l2.gap, -2.0 * l2.mc_stderr, l2.gap >= -2.0 * l2.mc_stderr});
  }

  // Closed-form identities.
  const SbfPrecoders ge = ge_precoders(ra, rb);
  const double bound = sum_rate_lower_bound(ra, rb, ge);
  const double chi = generalized_condition_number(ra, rb);
  checks.push_back({"ge_bound_vs_log2_chi", std::abs(bound - std::log2(chi)), 1e-9, std::abs(bound - std::log2(chi)) < 1e-9});
  const double chi_swap = generalized_condition_number(rb, ra);
  checks.push_back({"chi_symmetry", std::abs(chi - chi_swap), 1e-9 * chi, std::abs(chi - chi_swap) < 1e-9 * chi});
  if (s.M == 2) {
    const double closed = (ra.matrix().trace() * rb.matrix().trace() - (ra.matrix() * rb.matrix()).trace()).real();
    const double th = theta<double>(org_precoders(2).W, ra, rb);
    checks.push_back({"theta_unitary_closed_form", std::abs(th - closed), 1e-10, std::abs(th - closed) < 1e-10});
  }
  const double ep = equal_power(8.0, 2);
  checks.push_back({"equal_power_M2", std::abs(ep - 3.0), 0.0, ep == 3.0});

  std::string csv = "check,value,threshold,pass\n";
  int failed = 0;
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof line, "%s,%.12g,%.12g,%d\n", c.name.c_str(), c.value, c.threshold, c.pass ? 1 : 0);
    csv += line;
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << c.value << "\n";
    failed += c.pass ? 0 : 1;
  }
  write_file(path_in(args, "validate.csv"), csv);
  return failed ? 1 : 0;
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) out.push_back(std::stoi(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SAMAT / AMAT / SBF simulation toolkit"};
  app.require_subcommand(1);

  CommonArgs validate_args, sweep_t_args, sweep_snr_args, converge_args;
  std::string dims_text = "4,8";
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* validate = app.add_subcommand("validate", "Run lemma oracles and closed-form property checks");
  add_common(validate, validate_args);
  auto* sweep_t = app.add_subcommand("sweep-t", "Rate vs |t| (t_A = t_B) for every SNR in the grid");
  add_common(sweep_t, sweep_t_args);
  auto* sweep_snr = app.add_subcommand("sweep-snr", "Rate vs SNR at the configured |t_A|, |t_B|");
  add_common(sweep_snr, sweep_snr_args);
  auto* converge = app.add_subcommand("converge", "AMAT precoder optimizer traces (--trials = instances per M)");
  add_common(converge, converge_args);
  converge->add_option("--dims", dims_text, "Comma-separated antenna counts");

  CLI11_PARSE(app, argc, argv);
  worker_count() = threads;

  try {
    if (*validate) return run_validate(validate_args);
    if (*sweep_t) return run_sweep(sweep_t_args, SweepAxis::T);
    if (*sweep_snr) return run_sweep(sweep_snr_args, SweepAxis::Snr);
    if (*converge) return run_converge(converge_args, parse_dims(dims_text));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
