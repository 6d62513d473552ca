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

#include "qrac/transcript.hpp"

namespace qrac::harness {

/// Exact per-round traffic a protocol is allowed.
struct Budget {
  Tally expected;

  /// Two classical bits Alice -> Bob, nothing else.
  static Budget qrac() { return Budget{Tally{2, 0, 0, 0}}; }
  /// One qubit Alice -> Bob, nothing else.
  static Budget qubit_only() { return Budget{Tally{0, 0, 1, 0}}; }
  /// One classical bit Alice -> Bob, nothing else.
  static Budget racbox() { return Budget{Tally{1, 0, 0, 0}}; }
};

struct MeterResult {
  bool pass = false;
  std::string diff;  // empty on success
};

/// Hard equality of the transcript's tallies against the budget; also
/// requires the tallies to agree with the message log.
MeterResult meter_assert(const RoundTranscript& transcript, const Budget& budget);

/// Raised by the harness when a round exceeds its budget.
class BudgetViolation : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

/// Short human-readable dump of a transcript for error messages.
std::string transcript_excerpt(const RoundTranscript& transcript, std::size_t max_messages = 8);

}  // namespace qrac::harness
