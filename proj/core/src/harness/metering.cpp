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
#include "qrac/harness/metering.hpp"

#include <sstream>

namespace qrac::harness {

MeterResult meter_assert(const RoundTranscript& transcript, const Budget& budget) {
  std::ostringstream diff;
  if (!transcript.consistent()) {
    diff << "tallies " << to_string(transcript.totals) << " disagree with log "
         << to_string(transcript.aggregate()) << "; ";
  }
  const Tally& got = transcript.totals;
  const Tally& want = budget.expected;
  const auto field = [&](const char* name, int g, int w) {
    if (g != w) diff << name << ": expected " << w << ", got " << g << "; ";
  };
  field("bits_A_to_B", got.bits_a_to_b, want.bits_a_to_b);
  field("bits_B_to_A", got.bits_b_to_a, want.bits_b_to_a);
  field("qubits_A_to_B", got.qubits_a_to_b, want.qubits_a_to_b);
  field("qubits_B_to_A", got.qubits_b_to_a, want.qubits_b_to_a);
  std::string d = diff.str();
  if (!d.empty()) d.resize(d.size() - 2);
  return MeterResult{d.empty(), d};
}

std::string transcript_excerpt(const RoundTranscript& transcript, std::size_t max_messages) {
  std::ostringstream out;
  out << "tallies " << to_string(transcript.totals) << ", log:";
  std::size_t shown = 0;
  for (const auto& m : transcript.messages) {
    if (shown++ == max_messages) {
      out << " ... (" << transcript.messages.size() - max_messages << " more)";
      break;
    }
    out << " [" << to_string(m.direction) << ' ' << to_string(m.kind);
    if (m.kind == MessageKind::kClassicalBit) {
      out << '=' << int{m.value};
    } else {
      out << " #" << m.payload_id;
    }
    out << ']';
  }
  return out.str();
}

}  // namespace qrac::harness
