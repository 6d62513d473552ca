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
#include "qrac/harness/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qrac::harness {
namespace {

void dump_string(std::string& out, const std::string& s) {
  // Reuse nlohmann's escaping for strings.
  out += nlohmann::json(s).dump();
}

void dump_value(std::string& out, const nlohmann::json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out.push_back('\n');
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        dump_string(out, it.key());
        out += indent < 0 ? ":" : ": ";
        dump_value(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out.push_back('}');
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out.push_back('[');
      bool first = true;
      for (const auto& v : j) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        dump_value(out, v, indent, depth + 1);
      }
      newline(depth);
      out.push_back(']');
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string dump_json(const nlohmann::json& j, int indent) {
  std::string out;
  dump_value(out, j, indent, 0);
  return out;
}

nlohmann::json matrix_to_json(const CMatrix& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json rr = nlohmann::json::array();
    nlohmann::json ri = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return nlohmann::json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

CMatrix matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = Complex(j.at("re").at(r).at(c).get<double>(),
                        j.at("im").at(r).at(c).get<double>());
    }
  }
  return m;
}

Check make_check(std::string name, double value, double tolerance) {
  return Check{std::move(name), std::isfinite(value) && value <= tolerance, value, tolerance};
}

void Report::add_check(std::string name, double value, double tolerance) {
  checks.push_back(make_check(std::move(name), value, tolerance));
}

bool Report::all_pass() const noexcept {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["version"] = kReportVersion;
  j["config"] = config;
  j["metrics"] = metrics;
  j["tallies"] = {{"bits_A_to_B", tallies.bits_a_to_b},
                  {"bits_B_to_A", tallies.bits_b_to_a},
                  {"qubits_A_to_B", tallies.qubits_a_to_b},
                  {"qubits_B_to_A", tallies.qubits_b_to_a}};
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : checks) {
    cs.push_back({{"name", c.name},
                  {"pass", c.pass},
                  {"value", c.value},
                  {"tolerance", c.tolerance}});
  }
  j["checks"] = std::move(cs);
  j["pass"] = all_pass();
  return j;
}

std::string Report::serialize() const { return dump_json(to_json(), 2) + "\n"; }

std::string Report::csv() const {
  std::ostringstream out;
  const auto row = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  row(csv_header);
  for (const auto& r : csv_rows) row(r);
  return out.str();
}

}  // namespace qrac::harness
