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

#include "samat/harness/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace samat::harness {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad(const std::string& key, const std::string& value) {
  throw Error(ErrorCode::InvalidArgument, "bad value for '" + key + "': '" + value + "'");
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) bad(key, value);
  return out;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(parse_number<double>(key, item));
  if (out.empty()) bad(key, value);
  return out;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Scenario parse_config(const std::string& text) {
  Scenario s;
  std::stringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::InvalidArgument, "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));

    if (key == "M") {
      s.M = parse_number<int>(key, value);
    } else if (key == "t_mag_A") {
      s.t_mag_A = parse_number<double>(key, value);
    } else if (key == "t_mag_B") {
      s.t_mag_B = parse_number<double>(key, value);
    } else if (key == "phase_policy") {
      s.phase_policy.kind = phase_kind_from_string(value);
    } else if (key == "phase_A") {
      s.phase_policy.phase_a = parse_number<double>(key, value);
    } else if (key == "phase_B") {
      s.phase_policy.phase_b = parse_number<double>(key, value);
    } else if (key == "min_gap") {
      s.phase_policy.min_gap = parse_number<double>(key, value);
    } else if (key == "snr_grid_db") {
      s.snr_grid_db = parse_doubles(key, value);
    } else if (key == "t_grid") {
      s.t_grid = parse_doubles(key, value);
    } else if (key == "schemes") {
      s.schemes.clear();
      for (const auto& name : split_list(value)) s.schemes.push_back(scheme_from_string(name));
    } else if (key == "trials") {
      s.trials = parse_number<std::int64_t>(key, value);
    } else if (key == "master_seed") {
      s.master_seed = parse_number<std::uint64_t>(key, value);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown key '" + key + "'");
    }
  }
  s.validate();
  return s;
}

Scenario load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const Scenario& s) {
  auto list = [](const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + num(v[i]);
    return out;
  };
  std::string out;
  out += "M = " + std::to_string(s.M) + "\n";
  out += "t_mag_A = " + num(s.t_mag_A) + "\n";
  out += "t_mag_B = " + num(s.t_mag_B) + "\n";
  out += std::string("phase_policy = ") + to_string(s.phase_policy.kind) + "\n";
  out += "phase_A = " + num(s.phase_policy.phase_a) + "\n";
  out += "phase_B = " + num(s.phase_policy.phase_b) + "\n";
  out += "min_gap = " + num(s.phase_policy.min_gap) + "\n";
  out += "snr_grid_db = " + list(s.snr_grid_db) + "\n";
  out += "t_grid = " + list(s.t_grid) + "\n";
  out += "schemes = ";
  for (std::size_t i = 0; i < s.schemes.size(); ++i) out += std::string(i ? ", " : "") + to_string(s.schemes[i]);
  out += "\n";
  out += "trials = " + std::to_string(s.trials) + "\n";
  out += "master_seed = " + std::to_string(s.master_seed) + "\n";
  return out;
}

}  // namespace samat::harness
