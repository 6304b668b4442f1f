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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "samat/harness/config.hpp"
#include "samat/harness/emit.hpp"
#include "samat/harness/oracles.hpp"
#include "samat/harness/scenario.hpp"
#include "samat/special.hpp"
#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

using namespace samat;
using namespace samat::harness;
using samat::test::Gen;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Scenario small_scenario() {
  Scenario s;
  s.snr_grid_db = {10.0, 20.0};
  s.t_grid = {0.5, 0.9};
  s.schemes = {Scheme::SbfWe, Scheme::AmatOrg, Scheme::SamatCase1};
  s.trials = 400;
  s.master_seed = 11;
  s.phase_policy.kind = PhasePolicy::Kind::RandomMinGap;
  return s;
}

double circular_gap(double a, double b) {
  const double d = std::fmod(std::abs(a - b), 2.0 * std::numbers::pi);
  return std::min(d, 2.0 * std::numbers::pi - d);
}

}  // namespace

TEST_CASE("lemma1_oracle: closed forms") {
  const auto id = exp_correlation(0.0, 0.0, 2);
  const Lemma1Result a = lemma1_oracle(id, CVector::Unit(2, 0), 100000, 1);
  CHECK(a.closed_form == doctest::Approx(-euler_gamma).epsilon(1e-15));
  CHECK(a.closed_form == doctest::Approx(-0.5772156649).epsilon(1e-9));

  const auto r = exp_correlation(0.9, 0.0, 2);
  const CVector w = CVector::Ones(2).normalized();
  const Lemma1Result b = lemma1_oracle(r, w, 1000000, 2);
  CHECK(b.closed_form == doctest::Approx(std::log(1.9) - euler_gamma).epsilon(1e-12));
  CHECK(b.gap < 0.01);
  CHECK(b.gap == doctest::Approx(std::abs(b.mc_mean - b.closed_form)));
  // Var[ln Exp(1)] = pi^2 / 6.
  CHECK(b.mc_stderr == doctest::Approx(std::numbers::pi / std::sqrt(6.0e6)).epsilon(0.05));

  CHECK_THROWS_AS(lemma1_oracle(id, CVector::Unit(2, 0), 1000, 1), Error);
}

TEST_CASE("lemma1_oracle: random covariances and directions") {
  Gen gen(81);
  for (int dim : {2, 4}) {
    const auto r = gen.pd(dim);
    const Lemma1Result res = lemma1_oracle(r, gen.unit(dim), 1000000, 3);
    CHECK(res.gap < 0.01);
  }
}

TEST_CASE("lemma2_oracle: constant denominator is unbiased") {
  RatioSpec spec;
  spec.r = exp_correlation(0.5, 0.2, 2).matrix();
  spec.u = CVector::Unit(2, 1);
  spec.x_scale = 3.0;
  spec.offset = 2.0;
  const Lemma2Result r = lemma2_oracle(spec, 100000, 4);
  CHECK(r.first_order == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(std::abs(r.gap) <= 3.0 * r.mc_stderr);

  spec.u = CVector::Zero(2);
  const Lemma2Result zero = lemma2_oracle(spec, 1000, 4);
  CHECK(zero.mc_ratio_mean == 0.0);
  CHECK(zero.first_order == 0.0);
}

TEST_CASE("lemma2_oracle: independent random denominator gives a lower bound") {
  Gen gen(82);
  for (int i = 0; i < 5; ++i) {
    RatioSpec spec;
    spec.r = gen.pd(2).matrix();
    spec.u = gen.unit(2);
    spec.x_scale = gen.uniform(1.0, 10.0);
    spec.y_terms = {{gen.unit(2), gen.uniform(0.5, 5.0)}, {gen.unit(2), gen.uniform(0.5, 5.0)}};
    const Lemma2Result r = lemma2_oracle(spec, 200000, 5 + i);
    CHECK(r.gap >= -2.0 * r.mc_stderr);
  }
}

TEST_CASE("lemma2_oracle: retransmission term of the combined weight") {
  const auto ra = exp_correlation(0.9, 0.0, 2);
  const auto rb = exp_correlation(0.9, 2.0, 2);
  const SamatPrecoders pre = case_precoders(PrecoderCase::Case1, ra, rb);
  const RateCoefficients c = coefficients(pre, ra, rb);
  const double p5 = 4.0, p6 = 2.0, p7 = 3.0;
  RatioSpec spec;
  spec.r = ra.matrix();
  spec.u = CVector::Unit(2, 0);
  spec.x_scale = p5;
  spec.y_includes_x = true;
  spec.y_terms = {{pre.w3, p6}, {pre.q3, p7}};
  spec.independent = false;
  const Lemma2Result r = lemma2_oracle(spec, 200000, 9);
  CHECK(r.first_order == doctest::Approx(p5 / (1.0 + p5 + c.tauA3 * p6 + c.lamA3 * p7)).epsilon(1e-12));
  CHECK(std::isfinite(r.gap));
  CHECK(std::abs(r.gap) < 0.25);
  MESSAGE("retransmission-term bias: " << r.gap << " (first order " << r.first_order << ")");

  spec.u = CVector::Unit(3, 0);
  CHECK_THROWS_AS(lemma2_oracle(spec, 10, 1), Error);
}

TEST_CASE("scheme and phase-policy names round trip") {
  const std::vector<std::string> names{"SBF-WE", "SBF-GE", "AMAT-ORG", "AMAT-WE",
                                       "AMAT-GE", "AMAT-OPT", "SAMAT-case1", "SAMAT-case2"};
  const auto all = all_schemes();
  REQUIRE(all.size() == names.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(std::string(to_string(all[i])) == names[i]);
    CHECK(scheme_from_string(names[i]) == all[i]);
  }
  CHECK_THROWS_AS(scheme_from_string("SAMAT"), Error);
  for (auto k : {PhasePolicy::Kind::Fixed, PhasePolicy::Kind::RandomUniform, PhasePolicy::Kind::RandomMinGap})
    CHECK(phase_kind_from_string(to_string(k)) == k);
}

TEST_CASE("Scenario validation") {
  Scenario s;
  CHECK_NOTHROW(s.validate());
  s.trials = 0;
  CHECK_THROWS_AS(s.validate(), Error);
  s = Scenario{};
  s.snr_grid_db.clear();
  CHECK_THROWS_AS(s.validate(), Error);
  s = Scenario{};
  s.M = 1;
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("make_cells: ordering, seeds and phase policies") {
  Scenario s;
  s.snr_grid_db.assign(50, 0.0);
  for (std::size_t i = 0; i < s.snr_grid_db.size(); ++i) s.snr_grid_db[i] = double(i);
  s.phase_policy = PhasePolicy{PhasePolicy::Kind::Fixed, 0.25, 2.5};
  for (const Cell& c : make_cells(s, SweepAxis::Snr)) {
    CHECK(c.phase_A == 0.25);
    CHECK(c.phase_B == 2.5);
    CHECK(c.t_mag_A == s.t_mag_A);
  }

  s.phase_policy.kind = PhasePolicy::Kind::RandomMinGap;
  std::set<std::uint64_t> seeds;
  for (const Cell& c : make_cells(s, SweepAxis::Snr)) {
    CHECK(circular_gap(c.phase_A, c.phase_B) >= std::numbers::pi / 2.0);
    CHECK(c.phase_A >= 0.0);
    CHECK(c.phase_A < 2.0 * std::numbers::pi);
    seeds.insert(c.seed);
  }
  CHECK(seeds.size() == s.snr_grid_db.size());

  s.snr_grid_db = {0.0, 10.0};
  s.t_grid = {0.0, 0.5, 0.9};
  const auto cells = make_cells(s, SweepAxis::T);
  REQUIRE(cells.size() == 6);
  CHECK(cells[0].t_mag_A == 0.0);
  CHECK(cells[1].t_mag_A == 0.0);
  CHECK(cells[1].snr_db == 10.0);
  CHECK(cells[4].t_mag_B == 0.9);
  CHECK(snr_to_power(20.0) == doctest::Approx(100.0));
}

TEST_CASE("run_scenario: empty scheme list gives an empty table") {
  Scenario s;
  s.trials = 10;
  CHECK(run_scenario(s).rows.empty());
  CHECK(to_csv(run_scenario(s)) == csv_header() + "\n");
}

TEST_CASE("run_scenario: rows, CSV layout and determinism") {
  const Scenario s = small_scenario();
  const ResultTable t = run_scenario(s, SweepAxis::T);
  REQUIRE(t.rows.size() == 2 * 2 * 3);
  for (const ResultRow& r : t.rows) {
    CHECK(r.status == "ok");
    CHECK(r.rate.trials == s.trials);
    CHECK(std::isfinite(r.rate.mean_bits));
    CHECK(r.power.has_value() == (r.scheme == Scheme::SamatCase1));
  }
  // Schemes in one cell share the cell seed.
  CHECK(t.rows[0].rate.seed == t.rows[1].rate.seed);
  CHECK(t.rows[0].rate.seed != t.rows[3].rate.seed);

  const std::string csv = to_csv(t);
  const auto lines = split_lines(csv);
  REQUIRE(lines.size() == t.rows.size() + 1);
  CHECK(lines[0] ==
        "scheme,M,t_mag_A,t_mag_B,phase_A,phase_B,snr_db,mean_bits,stderr,trials,seed,P1,P2,P3,P4,P5,P6,P7,P8,P9,P10");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_commas(lines[i]);
    REQUIRE(fields.size() == 21);
    const bool samat = fields[0].rfind("SAMAT", 0) == 0;
    for (int k = 11; k < 21; ++k) CHECK(fields[static_cast<std::size_t>(k)].empty() == !samat);
  }

  CHECK(to_csv(run_scenario(s, SweepAxis::T)) == csv);
  Scenario other = s;
  other.master_seed = 12;
  CHECK(to_csv(run_scenario(other, SweepAxis::T)) != csv);
}

TEST_CASE("run_scenario: every scheme evaluates") {
  Scenario s;
  s.M = 4;
  s.snr_grid_db = {20.0};
  s.schemes = all_schemes();
  s.trials = 200;
  const ResultTable t = run_scenario(s);
  REQUIRE(t.rows.size() == all_schemes().size());
  for (const ResultRow& r : t.rows) {
    CHECK(r.status == "ok");
    CHECK(r.rate.mean_bits > 0.0);
  }
}

TEST_CASE("evaluate_cell: a failing cell is recorded, not thrown") {
  Cell c;
  c.t_mag_A = 1.0;
  c.t_mag_B = 0.5;
  c.snr_db = 10.0;
  ResultRow row;
  CHECK_NOTHROW(row = evaluate_cell(c, Scheme::SbfWe, 10));
  CHECK(row.status != "ok");
  CHECK(row.status.size() > 0);
}

TEST_CASE("plot_script references only emitted columns") {
  const auto header = split_commas(csv_header());
  const std::set<std::string> columns(header.begin(), header.end());
  for (const std::string& c : plot_columns()) CHECK(columns.count(c) == 1);

  for (const std::string x : {"snr_db", "t_mag_A"}) {
    const std::string script = plot_script("sweep.csv", x);
    const std::regex key(R"re(row\["([^"]+)"\])re");
    const std::regex var(R"re((?:^|\n)(?:X|GROUP) = "([^"]+)")re");
    int found = 0;
    for (const std::regex& re : {key, var}) {
      for (auto it = std::sregex_iterator(script.begin(), script.end(), re); it != std::sregex_iterator(); ++it) {
        CHECK(columns.count((*it)[1].str()) == 1);
        ++found;
      }
    }
    CHECK(found >= 4);
    CHECK(script.find("sweep.csv") != std::string::npos);
  }
  CHECK_THROWS_AS(plot_script("a.csv", "mean_bits"), Error);
}

TEST_CASE("convergence records and CSV") {
  const auto recs = run_convergence({4}, 3, 5);
  REQUIRE(recs.size() == 6);
  for (const auto& r : recs) {
    CHECK(r.M == 4);
    CHECK(r.theta_values.size() >= 2);
    for (std::size_t k = 1; k < r.theta_values.size(); ++k) CHECK(r.theta_values[k] >= r.theta_values[k - 1] - 1e-12);
  }
  const auto lines = split_lines(convergence_csv(recs));
  CHECK(lines[0] == "M,instance,user,iteration,theta");
  std::size_t points = 0;
  for (const auto& r : recs) points += r.theta_values.size();
  CHECK(lines.size() == points + 1);
  CHECK(convergence_csv(run_convergence({4}, 3, 5)) == convergence_csv(recs));
}

TEST_CASE("config: parse, comments and round trip") {
  const std::string text =
      "# comment line\n"
      "M = 4\n"
      "t_mag_A = 0.8   # trailing comment\n"
      "t_mag_B=0.7\n"
      "phase_policy = fixed\n"
      "phase_A = 0.5\n"
      "phase_B = 2\n"
      "snr_grid_db = 0, 15,30\n"
      "t_grid = 0.1\n"
      "schemes = SBF-GE, SAMAT-case2\n"
      "trials = 123\n"
      "master_seed = 18446744073709551615\n";
  const Scenario s = parse_config(text);
  CHECK(s.M == 4);
  CHECK(s.t_mag_A == 0.8);
  CHECK(s.t_mag_B == 0.7);
  CHECK(s.phase_policy.kind == PhasePolicy::Kind::Fixed);
  CHECK(s.phase_policy.phase_b == 2.0);
  CHECK(s.snr_grid_db == std::vector<double>{0.0, 15.0, 30.0});
  CHECK(s.schemes == std::vector<Scheme>{Scheme::SbfGe, Scheme::SamatCase2});
  CHECK(s.trials == 123);
  CHECK(s.master_seed == 18446744073709551615ULL);

  const Scenario back = parse_config(format_config(s));
  CHECK(format_config(back) == format_config(s));
  CHECK(back.snr_grid_db == s.snr_grid_db);
  CHECK(back.t_mag_A == s.t_mag_A);
  CHECK(back.master_seed == s.master_seed);
}

TEST_CASE("config: errors") {
  CHECK_THROWS_AS(parse_config("colour = red\n"), Error);
  CHECK_THROWS_AS(parse_config("M = two\n"), Error);
  CHECK_THROWS_AS(parse_config("trials = 0\n"), Error);
  CHECK_THROWS_AS(parse_config("schemes = SBF-WE, MAT\n"), Error);
  CHECK_THROWS_AS(parse_config("just a line\n"), Error);
  CHECK_THROWS_AS(load_config("/nonexistent/dir/x.cfg"), Error);
  CHECK_THROWS_AS(write_file("/nonexistent/dir/x.csv", "x"), Error);
}

TEST_CASE("config: the shipped example parses") {
  const std::filesystem::path path = std::filesystem::path(SAMAT_SOURCE_DIR) / "configs" / "rate_vs_t.cfg";
  const Scenario s = load_config(path.string());
  CHECK(s.M == 2);
  CHECK(s.phase_policy.kind == PhasePolicy::Kind::RandomMinGap);
  CHECK(!s.schemes.empty());
}

TEST_CASE("write_file writes the exact bytes") {
  const auto path = std::filesystem::temp_directory_path() / "samat_write_file_test.csv";
  write_file(path.string(), "a,b\n1,2\n");
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "a,b\n1,2\n");
  std::filesystem::remove(path);
}
