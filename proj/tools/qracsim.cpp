// Copyright 2026 The QRAC-Box Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// qracsim: runs QRAC-box experiments and prints JSON reports.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qrac/harness/experiment.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 2;
constexpr int kExitConfigError = 3;

using qrac::harness::ConfigError;
using qrac::harness::ExperimentConfig;

struct Flags {
  std::string experiment;
  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> random_pairs;
  std::string mode;
  std::string out;
  std::string csv;
  std::string psi;
  std::string phi;
  std::string omega;
  std::optional<double> alpha2;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--seed", f.seed, "Root seed (mandatory here or in --config)");
  cmd->add_option("--trials", f.trials, "Number of sampled trials");
  cmd->add_option("--mode", f.mode, "sampled | branch-exact");
  cmd->add_option("--out", f.out, "Write the JSON report here instead of stdout");
  cmd->add_option("--csv", f.csv, "Write per-trial rows as CSV");
  cmd->add_option("--config", f.config_file, "JSON config file; flags override it");
  cmd->add_option("--psi", f.psi, "First input: bloch:theta,phi or amp:re0,im0,re1,im1");
  cmd->add_option("--phi", f.phi, "Second input, same format");
  cmd->add_option("--omega", f.omega, "Bob's choice qubit (alpha, beta), same format");
}

ExperimentConfig build_config(const Flags& f, const std::string& experiment) {
  ExperimentConfig c;
  if (!f.config_file.empty()) {
    std::ifstream in(f.config_file);
    if (!in) throw ConfigError("cannot read config file '" + f.config_file + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    c = qrac::harness::config_from_json(j);
  }
  if (!experiment.empty()) c.experiment = qrac::harness::parse_experiment(experiment);
  if (f.seed) c.seed = f.seed;
  if (f.trials) c.trials = f.trials;
  if (f.random_pairs) c.random_pairs = *f.random_pairs;
  if (!f.mode.empty()) c.mode = qrac::harness::parse_mode(f.mode);
  if (!f.out.empty()) c.out = f.out;
  if (!f.csv.empty()) c.csv = f.csv;
  if (!f.psi.empty()) c.psi = f.psi;
  if (!f.phi.empty()) c.phi = f.phi;
  if (!f.omega.empty()) c.omega = f.omega;
  if (f.alpha2) {
    if (*f.alpha2 < 0.0 || *f.alpha2 > 1.0) throw ConfigError("--alpha2 must lie in [0, 1]");
    std::ostringstream s;
    s.precision(17);
    s << "amp:" << std::sqrt(*f.alpha2) << ",0," << std::sqrt(1.0 - *f.alpha2) << ",0";
    c.omega = s.str();
  }
  return c;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QRAC-box simulator"};
  app.require_subcommand(1);
  Flags f;
  std::string experiment;

  auto* run = app.add_subcommand("run", "Run any experiment");
  run->add_option("--experiment", f.experiment,
                  "qrac | qrac-qubit-only | racbox | tomography | mixture | nonsignaling | dilation");
  add_common(run, f);
  run->add_option("--random-pairs", f.random_pairs, "Random input pairs for dilation");
  run->add_option("--alpha2", f.alpha2, "Shortcut for omega = sqrt(a)|0> + sqrt(1-a)|1>");

  auto* ns = app.add_subcommand("verify-nonsignaling", "Non-signaling checks");
  add_common(ns, f);
  auto* tomo = app.add_subcommand("tomography", "Choi matrix of the QRAC channel");
  add_common(tomo, f);
  auto* mix = app.add_subcommand("mixture", "Output versus the classical mixture");
  add_common(mix, f);
  mix->add_option("--alpha2", f.alpha2, "Shortcut for omega = sqrt(a)|0> + sqrt(1-a)|1>");
  auto* rac = app.add_subcommand("racbox", "Classical random access code box");
  add_common(rac, f);
  auto* dil = app.add_subcommand("dilation", "Isometric extension and environment overlaps");
  add_common(dil, f);
  dil->add_option("--random-pairs", f.random_pairs, "Random input pairs to test");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfigError;
  }

  if (run->parsed()) experiment = f.experiment;
  if (ns->parsed()) experiment = "nonsignaling";
  if (tomo->parsed()) experiment = "tomography";
  if (mix->parsed()) experiment = "mixture";
  if (rac->parsed()) experiment = "racbox";
  if (dil->parsed()) experiment = "dilation";

  ExperimentConfig config;
  qrac::harness::Report report;
  try {
    config = build_config(f, experiment);
    report = qrac::harness::run_experiment(config);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailure;
  }

  for (const auto& w : report.metrics["warnings"]) {
    std::cerr << "warning: " << w.get<std::string>() << '\n';
  }
  try {
    const std::string text = report.serialize();
    if (config.out.empty()) {
      std::cout << text;
    } else {
      write_file(config.out, text);
    }
    if (!config.csv.empty()) write_file(config.csv, report.csv());
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  for (const auto& c : report.checks) {
    if (!c.pass) {
      std::cerr << "check failed: " << c.name << " = " << qrac::harness::format_double(c.value)
                << " > " << qrac::harness::format_double(c.tolerance) << '\n';
    }
  }
  return report.all_pass() ? kExitPass : kExitCheckFailure;
}
