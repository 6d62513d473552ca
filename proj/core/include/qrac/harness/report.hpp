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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qrac/quantum.hpp"
#include "qrac/transcript.hpp"

namespace qrac::harness {

inline constexpr const char* kReportVersion = "qracbox-report/1";

/// One verified invariant. Every check passes iff value <= tolerance.
struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double tolerance = 0.0;
};

Check make_check(std::string name, double value, double tolerance);

struct Report {
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json metrics = nlohmann::json::object();
  /// Traffic of a single round; every round is metered against its budget.
  Tally tallies;
  std::vector<Check> checks;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;

  void add_check(std::string name, double value, double tolerance);
  bool all_pass() const noexcept;
  nlohmann::json to_json() const;
  /// JSON text with every float printed to 17 significant digits.
  std::string serialize() const;
  std::string csv() const;
};

/// Serializes with floats at 17 significant digits; non-finite floats become null.
std::string dump_json(const nlohmann::json& j, int indent = 2);

nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);

std::string format_double(double x);

}  // namespace qrac::harness
