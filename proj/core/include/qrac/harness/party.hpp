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

#include <functional>
#include <string>
#include <vector>

#include "qrac/transcript.hpp"

namespace qrac::harness {

/**
 * @brief One side of a two-party protocol, as an ordered list of steps.
 *
 * A step may wait for a number of incoming messages and may emit messages.
 * Steps run strictly in order. A party may only emit in its own direction, and
 * a party constructed with `may_send = false` may not emit at all.
 */
class PartyStateMachine {
 public:
  struct Step {
    std::string name;
    std::size_t awaits = 0;
    std::function<std::vector<Message>(const std::vector<Message>& inbox)> action;
  };

  PartyStateMachine(Role role, bool may_send, std::vector<Step> steps);

  Role role() const noexcept { return role_; }
  bool done() const noexcept { return next_ == steps_.size(); }
  bool ready(const MeteredChannel& channel) const;
  std::string_view next_step() const;

  /// Runs the next step; throws ProtocolError if it is not ready or emits
  /// out of turn.
  void step(MeteredChannel& channel);

 private:
  Role role_;
  bool may_send_;
  std::vector<Step> steps_;
  std::size_t next_ = 0;
};

/// Steps both parties to completion, Bob first whenever both are ready.
/// Throws ProtocolError on deadlock.
void run_protocol(PartyStateMachine& alice, PartyStateMachine& bob,
                  MeteredChannel& channel);

}  // namespace qrac::harness
