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
#include "qrac/harness/party.hpp"

namespace qrac::harness {

PartyStateMachine::PartyStateMachine(Role role, bool may_send, std::vector<Step> steps)
    : role_(role), may_send_(may_send), steps_(std::move(steps)) {}

bool PartyStateMachine::ready(const MeteredChannel& channel) const {
  return !done() && channel.pending(role_) >= steps_[next_].awaits;
}

std::string_view PartyStateMachine::next_step() const {
  return done() ? std::string_view("done") : std::string_view(steps_[next_].name);
}

void PartyStateMachine::step(MeteredChannel& channel) {
  if (done()) throw ProtocolError(std::string(to_string(role_)) + " has no steps left");
  Step& s = steps_[next_];
  if (channel.pending(role_) < s.awaits) {
    throw ProtocolError(std::string(to_string(role_)) + " step '" + s.name +
                        "' is waiting for input");
  }
  std::vector<Message> inbox;
  inbox.reserve(s.awaits);
  for (std::size_t i = 0; i < s.awaits; ++i) inbox.push_back(*channel.receive(role_));
  std::vector<Message> out = s.action ? s.action(inbox) : std::vector<Message>{};
  for (const auto& m : out) {
    if (!may_send_) {
      throw ProtocolError(std::string(to_string(role_)) + " may not send in this protocol");
    }
    if (sender_of(m.direction) != role_) {
      throw ProtocolError(std::string(to_string(role_)) + " emitted a message in the wrong direction");
    }
    channel.send(m);
  }
  ++next_;
}

void run_protocol(PartyStateMachine& alice, PartyStateMachine& bob,
                  MeteredChannel& channel) {
  if (alice.role() != Role::kAlice || bob.role() != Role::kBob) {
    throw ProtocolError("run_protocol needs an Alice and a Bob");
  }
  while (!alice.done() || !bob.done()) {
    if (bob.ready(channel)) {
      bob.step(channel);
    } else if (alice.ready(channel)) {
      alice.step(channel);
    } else {
      throw ProtocolError("deadlock: Alice at '" + std::string(alice.next_step()) +
                          "', Bob at '" + std::string(bob.next_step()) + "'");
    }
  }
  if (channel.pending(Role::kAlice) + channel.pending(Role::kBob) != 0) {
    throw ProtocolError("protocol ended with undelivered messages");
  }
}

}  // namespace qrac::harness
