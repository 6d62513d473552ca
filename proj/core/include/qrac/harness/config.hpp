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
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qrac/channel.hpp"
#include "qrac/quantum.hpp"

namespace qrac::harness {

/// Invalid or incomplete experiment configuration (CLI exit code 3).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Experiment {
  kQrac,
  kQracQubitOnly,
  kRacbox,
  kTomography,
  kMixture,
  kNonsignaling,
  kDilation,
};

std::string_view to_string(Experiment e) noexcept;
Experiment parse_experiment(std::string_view name);

std::string_view to_string(TomographyMode m) noexcept;
TomographyMode parse_mode(std::string_view name);

struct ParsedState {
  StateVector state;
  /// Set when an amplitude spec was off by more than 1e-6 and got renormalized.
  std::optional<std::string> warning;
};

/// Parses "bloch:theta,phi" (radians; "pi", "pi/2", "3pi/4" accepted) or
/// "amp:re0,im0,re1,im1" (renormalized).
ParsedState parse_state(std::string_view spec);

struct ExperimentConfig {
  Experiment experiment = Experiment::kQrac;
  std::string psi = "amp:1,0,0,0";
  std::string phi = "amp:0,0,1,0";
  /// Bob's input alpha|0> + beta|1>; an amplitude spec carries (alpha, beta).
  std::string omega = "amp:1,0,0,0";
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  TomographyMode mode = TomographyMode::kBranchExact;
  /// Extra seeded random (psi, phi) pairs for the dilation experiment.
  int random_pairs = 50;
  std::string out;
  std::string csv;
};

/// Trials used when the config leaves them unset.
int default_trials(const ExperimentConfig& config) noexcept;

/// Throws ConfigError if the seed is missing or a field is out of range.
void validate(const ExperimentConfig& config);

ExperimentConfig config_from_json(const nlohmann::json& j);
/// Complete echo of the config, with defaults resolved; feeding it back
/// through config_from_json reproduces the run.
nlohmann::json to_json(const ExperimentConfig& config);

}  // namespace qrac::harness
