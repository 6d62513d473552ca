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

#include "qrac/transcript.hpp"

namespace qrac {

std::string_view to_string(Role role) noexcept {
  return role == Role::kAlice ? "alice" : "bob";
}

std::string_view to_string(Direction direction) noexcept {
  return direction == Direction::kAliceToBob ? "A->B" : "B->A";
}

std::string_view to_string(MessageKind kind) noexcept {
  return kind == MessageKind::kClassicalBit ? "bit" : "qubit";
}

void Tally::add(const Message& m) noexcept {
  const bool forward = m.direction == Direction::kAliceToBob;
  if (m.kind == MessageKind::kClassicalBit) {
    ++(forward ? bits_a_to_b : bits_b_to_a);
  } else {
    ++(forward ? qubits_a_to_b : qubits_b_to_a);
  }
}

Tally& Tally::operator+=(const Tally& rhs) noexcept {
  bits_a_to_b += rhs.bits_a_to_b;
  bits_b_to_a += rhs.bits_b_to_a;
  qubits_a_to_b += rhs.qubits_a_to_b;
  qubits_b_to_a += rhs.qubits_b_to_a;
  return *this;
}

std::string to_string(const Tally& t) {
  return "(" + std::to_string(t.bits_a_to_b) + "," + std::to_string(t.bits_b_to_a) +
         "," + std::to_string(t.qubits_a_to_b) + "," +
         std::to_string(t.qubits_b_to_a) + ")";
}

Tally RoundTranscript::aggregate() const noexcept {
  Tally t;
  for (const auto& m : messages) t.add(m);
  return t;
}

void MeteredChannel::send(const Message& m) {
  if (m.kind == MessageKind::kClassicalBit && m.value > 1) {
    throw ProtocolError("classical message carries a non-bit value");
  }
  transcript_.messages.push_back(m);
  transcript_.totals.add(m);
  (receiver_of(m.direction) == Role::kAlice ? to_alice_ : to_bob_).push_back(m);
}

void MeteredChannel::send_bit(Direction d, std::uint8_t bit) {
  send(Message{d, MessageKind::kClassicalBit,
               static_cast<std::uint32_t>(transcript_.messages.size()), bit});
}

void MeteredChannel::send_qubit(Direction d, std::uint32_t payload_id) {
  send(Message{d, MessageKind::kQubit, payload_id, 0});
}

std::optional<Message> MeteredChannel::receive(Role receiver) {
  auto& queue = receiver == Role::kAlice ? to_alice_ : to_bob_;
  if (queue.empty()) return std::nullopt;
  Message m = queue.front();
  queue.pop_front();
  return m;
}

std::size_t MeteredChannel::pending(Role receiver) const noexcept {
  return (receiver == Role::kAlice ? to_alice_ : to_bob_).size();
}

}  // namespace qrac
