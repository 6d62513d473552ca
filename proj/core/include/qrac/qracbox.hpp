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

#include <array>
#include <mutex>
#include <optional>
#include <vector>

#include "qrac/boxes.hpp"
#include "qrac/quantum.hpp"
#include "qrac/rng.hpp"
#include "qrac/transcript.hpp"

/**
 * @file
 * Quantum random access code box built from two EPR pairs and two PR-boxes.
 *
 * Alice Bell-measures her first input with her half of pair 1 and her second
 * input with her half of pair 2, getting (a'1, a'0) and (a''1, a''0). She feeds
 * a'0^a''0 into PR-box 0 and a'1^a''1 into PR-box 1, receiving A0 and A1, and
 * outputs a = (a'1^A1, a'0^A0). Bob, wanting input w, feeds w into both boxes,
 * receives B0 and B1, forms b0 = b_in0^B0 and b1 = b_in1^B1, applies
 * Z^b1 X^b0 to his half of pair w+1 and discards his other half. With
 * b_in = a the result is Alice's w-th input qubit.
 */

namespace qrac {

using AliceClassicalOutput = TwoBits;

/// Register layout of a round: [reference...][A'][A''][A1][B1][A2][B2].
/// Reference qubits are spectators carried through to Bob's output; they are
/// how tomography feeds half of an entangled state into the box.
struct QracLayout {
  int reference_qubits = 0;

  constexpr int first_input() const noexcept { return reference_qubits; }
  constexpr int second_input() const noexcept { return reference_qubits + 1; }
  constexpr int alice_half(int pair) const noexcept {
    return reference_qubits + 2 + 2 * pair;
  }
  constexpr int bob_half(int pair) const noexcept {
    return reference_qubits + 3 + 2 * pair;
  }
  constexpr int total_qubits() const noexcept { return reference_qubits + 6; }
};

/// Every random choice of one round, fixed: both Bell outcomes and both PR
/// coins. Used for deterministic branch enumeration.
struct QracBranch {
  BellOutcome first;
  BellOutcome second;
  Bit coin0 = 0;
  Bit coin1 = 0;
};

/// What happened inside the box during one round.
struct QracRecord {
  BellOutcome first;
  BellOutcome second;
  Bit alice_box0 = 0;  // A0
  Bit alice_box1 = 0;  // A1
  AliceClassicalOutput a;
  Bit w = 0;
  TwoBits b_in;
  Bit bob_box0 = 0;  // B0
  Bit bob_box1 = 0;  // B1
  TwoBits correction;  // (b1, b0)
  /// Probability of the forced branch (Bell outcomes times coins); 1 when sampled.
  double weight = 1.0;
};

/**
 * @brief Shared resources of one round: two |Phi+> pairs and two fresh PR-boxes.
 *
 * Randomness is either sampled from the streams of a RoundSeed or forced to a
 * QracBranch. Confined to a single round: each side runs once. Alice-side and
 * Bob-side calls may come from different threads; the joint register sits
 * behind one mutex.
 */
class QracResources {
 public:
  explicit QracResources(RoundSeed seed);
  explicit QracResources(const QracBranch& branch);

  QracResources(const QracResources&) = delete;
  QracResources& operator=(const QracResources&) = delete;

  bool alice_done() const;
  bool bob_done() const;
  QracRecord record() const;
  /// Joint register; both EPR pairs only until Alice has run.
  StateVector state() const;
  const QracLayout& layout() const noexcept { return layout_; }

 private:
  friend AliceClassicalOutput qrac_alice_joint(const StateVector&, int,
                                               QracResources&);
  friend DensityMatrix qrac_bob(Bit, TwoBits, QracResources&);

  mutable std::mutex mutex_;
  std::optional<CounterRng> bell_rng_;
  std::optional<QracBranch> forced_;
  std::array<PRBox, 2> boxes_;
  StateVector state_;
  QracLayout layout_;
  QracRecord record_;
  bool alice_done_ = false;
  bool bob_done_ = false;
};

/// Alice's side on product inputs psi (A') and phi (A'').
AliceClassicalOutput qrac_alice(const StateVector& psi, const StateVector& phi,
                                QracResources& res);

/// Alice's side on a joint input laid out as [reference...][A'][A''].
AliceClassicalOutput qrac_alice_joint(const StateVector& input,
                                      int reference_qubits, QracResources& res);

/// Bob's side for choice w and classical input b. Returns his output qubit,
/// preceded by any reference qubits. Requires Alice to have run.
DensityMatrix qrac_bob(Bit w, TwoBits b, QracResources& res);

// ---------------------------------------------------------------------------
// Dense coding

/// The extra |Phi+> pair that carries Alice's two bits as one qubit.
class DensePair {
 public:
  DensePair();

  const StateVector& state() const noexcept { return state_; }
  bool encoded() const noexcept { return encoded_; }

 private:
  friend StateVector dense_encode(TwoBits, DensePair&, int);

  StateVector state_;
  bool encoded_ = false;
};

/// Applies Z^bit1 X^bit0 to qubit `half` of the pair and returns the encoded
/// pair state. Throws ProtocolError if the pair was already used.
StateVector dense_encode(TwoBits bits, DensePair& pair, int half = 0);

/// Bell-measures the pair with one draw from `rng`.
TwoBits dense_decode(const StateVector& pair_state, CounterRng& rng);

/// Deterministic decode; throws QuantumError unless one outcome is certain.
TwoBits dense_decode_exact(const StateVector& pair_state);

// ---------------------------------------------------------------------------
// Rounds

/// How Alice's two output bits reach Bob.
enum class Transport { kClassicalBits, kDenseCodedQubit };

/// Where Bob's classical input comes from: Alice's transmitted output, or a
/// fixed value that ignores it.
struct BobClassicalInput {
  std::optional<TwoBits> fixed;

  static BobClassicalInput feed() { return {}; }
  static BobClassicalInput constant(TwoBits b) { return {b}; }
};

struct QracRoundResult {
  DensityMatrix output;
  RoundTranscript transcript;
  QracRecord record;
};

/// One sampled round on a joint input laid out as [reference...][A'][A''][R].
/// Bob measures R in the computational basis to obtain w.
QracRoundResult run_qrac_round(const StateVector& input, int reference_qubits,
                               RoundSeed seed,
                               Transport transport = Transport::kClassicalBits,
                               BobClassicalInput bob_input = BobClassicalInput::feed());

/// Full round with Alice's bits sent over the metered classical channel.
QracRoundResult qrac_round(const StateVector& psi, const StateVector& phi,
                           const StateVector& omega, RoundSeed seed);

/// Same round with the bits dense-coded into a single transmitted qubit.
QracRoundResult qrac_round_qubit_only(const StateVector& psi,
                                      const StateVector& phi,
                                      const StateVector& omega, RoundSeed seed);

/// One branch of a round under exhaustive enumeration.
struct RoundBranch {
  QracBranch branch;
  QracRecord record;
  double probability = 0.0;
  DensityMatrix output;
  RoundTranscript transcript;
};

/// Every branch (w x Bell outcomes x PR coins) of a round on a joint input
/// [reference...][A'][A''][R], with exact probabilities. Zero-probability
/// values of w are skipped.
std::vector<RoundBranch> enumerate_round(
    const StateVector& input, int reference_qubits,
    BobClassicalInput bob_input = BobClassicalInput::feed(),
    Transport transport = Transport::kClassicalBits);

std::vector<RoundBranch> enumerate_round(
    const StateVector& psi, const StateVector& phi, const StateVector& omega,
    BobClassicalInput bob_input = BobClassicalInput::feed(),
    Transport transport = Transport::kClassicalBits);

/// Probability-weighted sum of branch outputs.
DensityMatrix branch_average(const std::vector<RoundBranch>& branches);

/// Exact distribution of Alice's output a, indexed by a.index().
std::array<double, 4> alice_output_distribution(
    const std::vector<RoundBranch>& branches);

}  // namespace qrac
