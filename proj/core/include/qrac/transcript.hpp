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
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qrac {

enum class Role { kAlice, kBob };
enum class Direction { kAliceToBob, kBobToAlice };
enum class MessageKind { kClassicalBit, kQubit };

std::string_view to_string(Role role) noexcept;
std::string_view to_string(Direction direction) noexcept;
std::string_view to_string(MessageKind kind) noexcept;

constexpr Role sender_of(Direction d) noexcept {
  return d == Direction::kAliceToBob ? Role::kAlice : Role::kBob;
}
constexpr Role receiver_of(Direction d) noexcept {
  return d == Direction::kAliceToBob ? Role::kBob : Role::kAlice;
}

/// Raised when a party breaks protocol order or a budget is exceeded.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// One metered unit of communication: a single classical bit or a single qubit.
/// For a classical bit `value` is the bit; for a qubit `payload_id` names the
/// register slot that travels and `value` is unused.
struct Message {
  Direction direction = Direction::kAliceToBob;
  MessageKind kind = MessageKind::kClassicalBit;
  std::uint32_t payload_id = 0;
  std::uint8_t value = 0;

  friend bool operator==(const Message&, const Message&) = default;
};

/// Per-direction totals, ordered (bits A->B, bits B->A, qubits A->B, qubits B->A).
struct Tally {
  int bits_a_to_b = 0;
  int bits_b_to_a = 0;
  int qubits_a_to_b = 0;
  int qubits_b_to_a = 0;

  void add(const Message& m) noexcept;
  int total() const noexcept {
    return bits_a_to_b + bits_b_to_a + qubits_a_to_b + qubits_b_to_a;
  }
  Tally& operator+=(const Tally& rhs) noexcept;
  friend bool operator==(const Tally&, const Tally&) = default;
};

std::string to_string(const Tally& t);

struct RoundTranscript {
  std::vector<Message> messages;
  Tally totals;

  /// Recomputes the totals from the message log.
  Tally aggregate() const noexcept;
  bool consistent() const noexcept { return aggregate() == totals; }
};

/// Ordered, metered link between the two parties of one round. Messages are
/// queued per receiver; every send is logged and tallied.
class MeteredChannel {
 public:
  void send(const Message& m);
  void send_bit(Direction d, std::uint8_t bit);
  void send_qubit(Direction d, std::uint32_t payload_id);

  /// Pops the oldest message queued for `receiver`, if any.
  std::optional<Message> receive(Role receiver);
  std::size_t pending(Role receiver) const noexcept;

  const RoundTranscript& transcript() const noexcept { return transcript_; }

 private:
  RoundTranscript transcript_;
  std::deque<Message> to_alice_;
  std::deque<Message> to_bob_;
};

}  // namespace qrac
