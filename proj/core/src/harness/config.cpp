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
#include "qrac/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qrac::harness {
namespace {

constexpr double kDriftWarning = 1e-6;
constexpr double kOmegaNormTolerance = 1e-10;

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\t') out.push_back(c);
  }
  return out;
}

double parse_number(const std::string& s) {
  if (s.empty()) throw ConfigError("empty number");
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return value;
}

// Accepts plain numbers and [coef][*]pi[/den] forms.
double parse_angle(const std::string& raw) {
  const std::string s = strip(raw);
  const auto pos = s.find("pi");
  if (pos == std::string::npos) return parse_number(s);
  std::string coef = s.substr(0, pos);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double value = std::numbers::pi;
  if (coef == "-") {
    value = -value;
  } else if (!coef.empty() && coef != "+") {
    value *= parse_number(coef);
  }
  const std::string rest = s.substr(pos + 2);
  if (!rest.empty()) {
    if (rest.front() != '/') throw ConfigError("bad angle: '" + raw + "'");
    const double den = parse_number(rest.substr(1));
    if (den == 0.0) throw ConfigError("bad angle: '" + raw + "'");
    value /= den;
  }
  return value;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

CVector parse_amplitudes(std::string_view body) {
  const auto parts = split(body, ',');
  if (parts.size() != 4) {
    throw ConfigError("amplitude spec needs re0,im0,re1,im1");
  }
  CVector v(2);
  v << Complex(parse_number(strip(parts[0])), parse_number(strip(parts[1]))),
      Complex(parse_number(strip(parts[2])), parse_number(strip(parts[3])));
  return v;
}

}  // namespace

std::string_view to_string(Experiment e) noexcept {
  switch (e) {
    case Experiment::kQrac: return "qrac";
    case Experiment::kQracQubitOnly: return "qrac-qubit-only";
    case Experiment::kRacbox: return "racbox";
    case Experiment::kTomography: return "tomography";
    case Experiment::kMixture: return "mixture";
    case Experiment::kNonsignaling: return "nonsignaling";
    case Experiment::kDilation: return "dilation";
  }
  return "unknown";
}

Experiment parse_experiment(std::string_view name) {
  for (auto e : {Experiment::kQrac, Experiment::kQracQubitOnly, Experiment::kRacbox,
                 Experiment::kTomography, Experiment::kMixture,
                 Experiment::kNonsignaling, Experiment::kDilation}) {
    if (to_string(e) == name) return e;
  }
  throw ConfigError("unknown experiment: '" + std::string(name) + "'");
}

std::string_view to_string(TomographyMode m) noexcept {
  return m == TomographyMode::kSampled ? "sampled" : "branch-exact";
}

TomographyMode parse_mode(std::string_view name) {
  if (name == "sampled") return TomographyMode::kSampled;
  if (name == "branch-exact") return TomographyMode::kBranchExact;
  throw ConfigError("unknown mode: '" + std::string(name) + "'");
}

ParsedState parse_state(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("state spec must start with 'bloch:' or 'amp:'");
  }
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view body = spec.substr(colon + 1);
  if (kind == "bloch") {
    const auto parts = split(body, ',');
    if (parts.size() != 2) throw ConfigError("bloch spec needs theta,phi");
    return {make_pure_qubit(parse_angle(parts[0]), parse_angle(parts[1])), std::nullopt};
  }
  if (kind != "amp") throw ConfigError("unknown state spec kind: '" + std::string(kind) + "'");
  const CVector v = parse_amplitudes(body);
  const double norm = v.norm();
  if (norm == 0.0 || !std::isfinite(norm)) throw ConfigError("zero amplitude vector");
  ParsedState out{StateVector(1, v / norm), std::nullopt};
  if (std::abs(norm - 1.0) > kDriftWarning) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "state '" << spec << "' had norm " << norm << "; renormalized";
    out.warning = msg.str();
  }
  return out;
}

int default_trials(const ExperimentConfig& config) noexcept {
  if (config.trials) return *config.trials;
  switch (config.experiment) {
    case Experiment::kNonsignaling:
    case Experiment::kRacbox:
      return 100000;
    case Experiment::kTomography:
      return 20000;
    default:
      return 10000;
  }
}

void validate(const ExperimentConfig& config) {
  if (!config.seed) throw ConfigError("seed is mandatory");
  if (config.trials && *config.trials < 1) throw ConfigError("trials must be positive");
  if (config.random_pairs < 0) throw ConfigError("random_pairs must be non-negative");
  parse_state(config.psi);
  parse_state(config.phi);
  // Omega carries (alpha, beta) and is not silently renormalized.
  if (config.omega.rfind("amp:", 0) == 0) {
    const CVector v = parse_amplitudes(std::string_view(config.omega).substr(4));
    if (std::abs(v.squaredNorm() - 1.0) > kOmegaNormTolerance) {
      throw ConfigError("|alpha|^2 + |beta|^2 must equal 1 within 1e-10");
    }
  } else {
    parse_state(config.omega);
  }
  if (config.experiment == Experiment::kNonsignaling &&
      config.mode == TomographyMode::kSampled && default_trials(config) < 10000) {
    throw ConfigError("sampled non-signaling needs at least 10000 trials");
  }
  if (config.experiment == Experiment::kRacbox && default_trials(config) < 1000) {
    throw ConfigError("racbox privacy needs at least 1000 trials");
  }
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const char* kKnown[] = {"experiment", "psi", "phi", "omega", "trials", "seed",
                                 "mode", "random_pairs", "out", "csv"};
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : kKnown) known = known || key == k;
    if (!known) throw ConfigError("unknown config field: '" + key + "'");
  }
  ExperimentConfig c;
  try {
    if (j.contains("experiment")) c.experiment = parse_experiment(j.at("experiment").get<std::string>());
    if (j.contains("psi")) c.psi = j.at("psi").get<std::string>();
    if (j.contains("phi")) c.phi = j.at("phi").get<std::string>();
    if (j.contains("omega")) c.omega = j.at("omega").get<std::string>();
    if (j.contains("trials") && !j.at("trials").is_null()) c.trials = j.at("trials").get<int>();
    if (j.contains("seed") && !j.at("seed").is_null()) {
      c.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("mode")) c.mode = parse_mode(j.at("mode").get<std::string>());
    if (j.contains("random_pairs")) c.random_pairs = j.at("random_pairs").get<int>();
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("csv")) c.csv = j.at("csv").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config field: ") + e.what());
  }
  return c;
}

nlohmann::json to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["experiment"] = std::string(to_string(config.experiment));
  j["psi"] = config.psi;
  j["phi"] = config.phi;
  j["omega"] = config.omega;
  j["trials"] = default_trials(config);
  if (config.seed) {
    j["seed"] = *config.seed;
  } else {
    j["seed"] = nullptr;
  }
  j["mode"] = std::string(to_string(config.mode));
  j["random_pairs"] = config.random_pairs;
  return j;
}

}  // namespace qrac::harness
