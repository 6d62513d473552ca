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

#include "qrac/qracbox.hpp"

#include <algorithm>
#include <numeric>

namespace qrac {

namespace {

StateVector two_epr_pairs() { return tensor({phi_plus(), phi_plus()}); }

// Qubit slot used as the payload id of the dense-coded qubit.
constexpr std::uint32_t kDensePayload = 0;

void check_single_qubit(const StateVector& s, const char* what) {
  if (s.num_qubits() != 1) {
    throw QuantumError(std::string(what) + " must be a single qubit");
  }
}

StateVector round_input(const StateVector& psi, const StateVector& phi,
                        const StateVector& omega) {
  check_single_qubit(psi, "psi");
  check_single_qubit(phi, "phi");
  check_single_qubit(omega, "omega");
  return tensor({psi, phi, omega});
}

// Delivers Alice's output to Bob over `channel` and returns what Bob reads.
TwoBits transmit(const AliceClassicalOutput& a, Transport transport,
                 MeteredChannel& channel, std::optional<CounterRng> decode_rng) {
  if (transport == Transport::kClassicalBits) {
    channel.send_bit(Direction::kAliceToBob, a.bit1);
    channel.send_bit(Direction::kAliceToBob, a.bit0);
    const auto m1 = channel.receive(Role::kBob);
    const auto m0 = channel.receive(Role::kBob);
    if (!m1 || !m0) throw ProtocolError("Bob is missing Alice's bits");
    return TwoBits{m1->value, m0->value};
  }
  DensePair pair;
  const StateVector encoded = dense_encode(a, pair, 0);
  channel.send_qubit(Direction::kAliceToBob, kDensePayload);
  const auto m = channel.receive(Role::kBob);
  if (!m || m->kind != MessageKind::kQubit) {
    throw ProtocolError("Bob is missing the dense-coded qubit");
  }
  if (decode_rng) return dense_decode(encoded, *decode_rng);
  return dense_decode_exact(encoded);
}

}  // namespace

// ---------------------------------------------------------------------------

QracResources::QracResources(RoundSeed seed)
    : bell_rng_(seed.rng(stream::kAliceBell)),
      boxes_{PRBox(seed.rng(stream::kPrBox0)), PRBox(seed.rng(stream::kPrBox1))},
      state_(two_epr_pairs()) {}

QracResources::QracResources(const QracBranch& branch)
    : forced_(branch),
      boxes_{PRBox(branch.coin0), PRBox(branch.coin1)},
      state_(two_epr_pairs()) {
  record_.weight = 0.25;  // the two coins
}

bool QracResources::alice_done() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return alice_done_;
}

bool QracResources::bob_done() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return bob_done_;
}

QracRecord QracResources::record() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return record_;
}

StateVector QracResources::state() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return state_;
}

AliceClassicalOutput qrac_alice(const StateVector& psi, const StateVector& phi,
                                QracResources& res) {
  check_single_qubit(psi, "psi");
  check_single_qubit(phi, "phi");
  return qrac_alice_joint(tensor({psi, phi}), 0, res);
}

AliceClassicalOutput qrac_alice_joint(const StateVector& input,
                                      int reference_qubits, QracResources& res) {
  if (reference_qubits < 0 || input.num_qubits() != reference_qubits + 2) {
    throw QuantumError("Alice's input must be [reference...][A'][A'']");
  }
  std::lock_guard<std::mutex> lock(res.mutex_);
  if (res.alice_done_) throw ProtocolError("QRAC resources already used by Alice");
  res.alice_done_ = true;

  const QracLayout layout{reference_qubits};
  res.layout_ = layout;
  StateVector state = tensor({input, res.state_});

  auto measure = [&](std::array<int, 2> pair, const BellOutcome* forced) {
    BellMeasurement m = forced ? bell_project(state, pair, *forced)
                               : bell_measure(state, pair, *res.bell_rng_);
    if (forced) res.record_.weight *= m.probability;
    state = std::move(m.state);
    return m.outcome;
  };
  const auto& forced = res.forced_;
  const BellOutcome first = measure({layout.first_input(), layout.alice_half(0)},
                                    forced ? &forced->first : nullptr);
  const BellOutcome second = measure({layout.second_input(), layout.alice_half(1)},
                                     forced ? &forced->second : nullptr);

  const Bit alice_box0 = res.boxes_[0].alice(first.bit0 ^ second.bit0);
  const Bit alice_box1 = res.boxes_[1].alice(first.bit1 ^ second.bit1);
  const AliceClassicalOutput a{static_cast<Bit>(first.bit1 ^ alice_box1),
                               static_cast<Bit>(first.bit0 ^ alice_box0)};

  res.state_ = std::move(state);
  res.record_.first = first;
  res.record_.second = second;
  res.record_.alice_box0 = alice_box0;
  res.record_.alice_box1 = alice_box1;
  res.record_.a = a;
  return a;
}

DensityMatrix qrac_bob(Bit w, TwoBits b, QracResources& res) {
  if (w > 1 || b.bit0 > 1 || b.bit1 > 1) throw std::invalid_argument("Bob's inputs must be bits");
  std::lock_guard<std::mutex> lock(res.mutex_);
  if (!res.alice_done_) throw ProtocolError("Bob ran before Alice");
  if (res.bob_done_) throw ProtocolError("QRAC resources already used by Bob");
  res.bob_done_ = true;

  const Bit bob_box0 = res.boxes_[0].bob(w);
  const Bit bob_box1 = res.boxes_[1].bob(w);
  const TwoBits correction{static_cast<Bit>(b.bit1 ^ bob_box1),
                           static_cast<Bit>(b.bit0 ^ bob_box0)};

  const QracLayout& layout = res.layout_;
  const int target = layout.bob_half(w);
  const StateVector corrected =
      apply_unitary(res.state_, UnitaryMatrix::pauli_correction(correction), {target});

  std::vector<int> keep(static_cast<std::size_t>(layout.reference_qubits));
  std::iota(keep.begin(), keep.end(), 0);
  keep.push_back(target);
  DensityMatrix output = reduced_state(corrected, keep);

  res.state_ = corrected;
  res.record_.w = w;
  res.record_.b_in = b;
  res.record_.bob_box0 = bob_box0;
  res.record_.bob_box1 = bob_box1;
  res.record_.correction = correction;
  return output;
}

// ---------------------------------------------------------------------------

DensePair::DensePair() : state_(phi_plus()) {}

StateVector dense_encode(TwoBits bits, DensePair& pair, int half) {
  if (pair.encoded_) throw ProtocolError("dense-coding pair already used");
  if (half != 0 && half != 1) throw QuantumError("dense-coding half must be 0 or 1");
  pair.encoded_ = true;
  pair.state_ = apply_unitary(pair.state_, UnitaryMatrix::pauli_correction(bits), {half});
  return pair.state_;
}

TwoBits dense_decode(const StateVector& pair_state, CounterRng& rng) {
  if (pair_state.num_qubits() != 2) throw QuantumError("dense decode needs a 2-qubit pair");
  return bell_measure(pair_state, {0, 1}, rng).outcome;
}

TwoBits dense_decode_exact(const StateVector& pair_state) {
  if (pair_state.num_qubits() != 2) throw QuantumError("dense decode needs a 2-qubit pair");
  const auto probs = bell_probabilities(pair_state, {0, 1});
  const auto best = std::max_element(probs.begin(), probs.end());
  if (*best < 1.0 - kAlgebraTolerance) {
    throw QuantumError("pair is not in a Bell basis state");
  }
  return TwoBits::from_index(static_cast<int>(best - probs.begin()));
}

// ---------------------------------------------------------------------------

QracRoundResult run_qrac_round(const StateVector& input, int reference_qubits,
                               RoundSeed seed, Transport transport,
                               BobClassicalInput bob_input) {
  if (reference_qubits < 0 || input.num_qubits() != reference_qubits + 3) {
    throw QuantumError("round input must be [reference...][A'][A''][R]");
  }
  const int r_qubit = reference_qubits + 2;
  CounterRng omega_rng = seed.rng(stream::kOmegaMeasurement);
  const ComputationalMeasurement r = measure_computational(input, r_qubit, omega_rng);
  const Bit w = r.bit;
  const StateVector alice_input = discard_collapsed(r.state, r_qubit, w);

  QracResources res(seed);
  MeteredChannel channel;
  const AliceClassicalOutput a = qrac_alice_joint(alice_input, reference_qubits, res);
  const TwoBits received = transmit(a, transport, channel, seed.rng(stream::kDenseDecode));
  const TwoBits b = bob_input.fixed.value_or(received);
  DensityMatrix output = qrac_bob(w, b, res);
  return QracRoundResult{std::move(output), channel.transcript(), res.record()};
}

QracRoundResult qrac_round(const StateVector& psi, const StateVector& phi,
                           const StateVector& omega, RoundSeed seed) {
  return run_qrac_round(round_input(psi, phi, omega), 0, seed,
                        Transport::kClassicalBits);
}

QracRoundResult qrac_round_qubit_only(const StateVector& psi,
                                      const StateVector& phi,
                                      const StateVector& omega, RoundSeed seed) {
  return run_qrac_round(round_input(psi, phi, omega), 0, seed,
                        Transport::kDenseCodedQubit);
}

std::vector<RoundBranch> enumerate_round(const StateVector& input,
                                         int reference_qubits,
                                         BobClassicalInput bob_input,
                                         Transport transport) {
  if (reference_qubits < 0 || input.num_qubits() != reference_qubits + 3) {
    throw QuantumError("round input must be [reference...][A'][A''][R]");
  }
  const int r_qubit = reference_qubits + 2;
  std::vector<RoundBranch> branches;
  branches.reserve(128);
  const auto w_probs = computational_probabilities(input, r_qubit);
  for (Bit w = 0; w < 2; ++w) {
    if (w_probs[w] < kZeroProbability) continue;
    const ComputationalMeasurement r = measure_project(input, r_qubit, w);
    const StateVector alice_input = discard_collapsed(r.state, r_qubit, w);
    for (int outcomes = 0; outcomes < 16; ++outcomes) {
      for (int coins = 0; coins < 4; ++coins) {
        const QracBranch branch{BellOutcome::from_index(outcomes >> 2),
                                BellOutcome::from_index(outcomes & 3),
                                static_cast<Bit>(coins & 1),
                                static_cast<Bit>(coins >> 1)};
        QracResources res(branch);
        MeteredChannel channel;
        const AliceClassicalOutput a =
            qrac_alice_joint(alice_input, reference_qubits, res);
        const TwoBits received = transmit(a, transport, channel, std::nullopt);
        DensityMatrix output = qrac_bob(w, bob_input.fixed.value_or(received), res);
        const QracRecord record = res.record();
        branches.push_back(RoundBranch{branch, record, r.probability * record.weight,
                                       std::move(output), channel.transcript()});
      }
    }
  }
  return branches;
}

std::vector<RoundBranch> enumerate_round(const StateVector& psi,
                                         const StateVector& phi,
                                         const StateVector& omega,
                                         BobClassicalInput bob_input,
                                         Transport transport) {
  return enumerate_round(round_input(psi, phi, omega), 0, bob_input, transport);
}

DensityMatrix branch_average(const std::vector<RoundBranch>& branches) {
  if (branches.empty()) throw QuantumError("no branches to average");
  CMatrix sum = CMatrix::Zero(branches.front().output.dim(), branches.front().output.dim());
  for (const auto& br : branches) sum += br.probability * br.output.matrix();
  return DensityMatrix(branches.front().output.num_qubits(), std::move(sum));
}

std::array<double, 4> alice_output_distribution(
    const std::vector<RoundBranch>& branches) {
  std::array<double, 4> dist{};
  for (const auto& br : branches) {
    dist[static_cast<std::size_t>(br.record.a.index())] += br.probability;
  }
  return dist;
}

}  // namespace qrac
