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

#include "samat/harness/emit.hpp"

#include <cstdio>
#include <fstream>

namespace samat::harness {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string csv_header() {
  std::string h = "scheme,M,t_mag_A,t_mag_B,phase_A,phase_B,snr_db,mean_bits,stderr,trials,seed";
  for (int k = 1; k <= 10; ++k) h += ",P" + std::to_string(k);
  return h;
}

std::string to_csv(const ResultTable& table) {
  std::string out = csv_header() + "\n";
  for (const ResultRow& r : table.rows) {
    out += to_string(r.scheme);
    out += "," + std::to_string(r.M);
    out += "," + num(r.t_mag_A) + "," + num(r.t_mag_B);
    out += "," + num(r.phase_A) + "," + num(r.phase_B);
    out += "," + num(r.snr_db);
    out += "," + num(r.rate.mean_bits) + "," + num(r.rate.stderr_bits);
    out += "," + std::to_string(r.rate.trials) + "," + std::to_string(r.rate.seed);
    for (int k = 1; k <= 10; ++k) {
      out += ",";
      if (r.power) out += num(r.power->P(k));
    }
    out += "\n";
  }
  return out;
}

std::vector<std::string> plot_columns() { return {"scheme", "snr_db", "t_mag_A", "mean_bits", "stderr"}; }

std::string plot_script(const std::string& csv_name, const std::string& x_column) {
  if (x_column != "snr_db" && x_column != "t_mag_A")
    throw Error(ErrorCode::InvalidArgument, "x_column must be snr_db or t_mag_A");
  const std::string other = x_column == "snr_db" ? "t_mag_A" : "snr_db";
  std::string s;
  s += "#!/usr/bin/env python3\n";
  s += "# Plots mean_bits against " + x_column + " from " + csv_name + ".\n";
  s += "import csv\n";
  s += "import os\n";
  s += "from collections import defaultdict\n\n";
  s += "import matplotlib\n";
  s += "matplotlib.use(\"Agg\")\n";
  s += "import matplotlib.pyplot as plt\n\n";
  s += "HERE = os.path.dirname(os.path.abspath(__file__))\n";
  s += "CSV = os.path.join(HERE, \"" + csv_name + "\")\n";
  s += "X = \"" + x_column + "\"\n";
  s += "GROUP = \"" + other + "\"\n\n";
  s += "curves = defaultdict(list)\n";
  s += "with open(CSV, newline=\"\") as f:\n";
  s += "    for row in csv.DictReader(f):\n";
  s += "        key = (row[GROUP], row[\"scheme\"])\n";
  s += "        curves[key].append((float(row[X]), float(row[\"mean_bits\"]), float(row[\"stderr\"])))\n\n";
  s += "groups = sorted({g for g, _ in curves}, key=float)\n";
  s += "fig, axes = plt.subplots(1, len(groups), figsize=(5 * len(groups), 4), squeeze=False)\n";
  s += "for ax, group in zip(axes[0], groups):\n";
  s += "    for (g, scheme), pts in sorted(curves.items()):\n";
  s += "        if g != group:\n";
  s += "            continue\n";
  s += "        pts.sort()\n";
  s += "        xs = [p[0] for p in pts]\n";
  s += "        ys = [p[1] for p in pts]\n";
  s += "        es = [2 * p[2] for p in pts]\n";
  s += "        ax.errorbar(xs, ys, yerr=es, marker=\"o\", capsize=2, label=scheme)\n";
  s += "    ax.set_xlabel(X)\n";
  s += "    ax.set_ylabel(\"sum rate per slot [bits/s/Hz]\")\n";
  s += "    ax.set_title(GROUP + \" = \" + group)\n";
  s += "    ax.grid(True, alpha=0.3)\n";
  s += "    ax.legend(fontsize=8)\n";
  s += "fig.tight_layout()\n";
  s += "fig.savefig(os.path.splitext(CSV)[0] + \".png\", dpi=120)\n";
  return s;
}

std::string convergence_csv(const std::vector<ConvergenceRecord>& records) {
  std::string out = "M,instance,user,iteration,theta\n";
  for (const auto& r : records)
    for (std::size_t i = 0; i < r.theta_values.size(); ++i)
      out += std::to_string(r.M) + "," + std::to_string(r.instance) + "," + std::string(1, r.user) +
             "," + std::to_string(i) + "," + num(r.theta_values[i]) + "\n";
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + path);
  f << content;
  if (!f) throw Error(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace samat::harness
