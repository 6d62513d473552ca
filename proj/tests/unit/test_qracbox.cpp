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

#include <gtest/gtest.h>

#include <map>
#include <numbers>
#include <tuple>

#include "oracles.hpp"
#include "qrac/qracbox.hpp"

using namespace qrac;

namespace {

StateVector plus() { return make_pure_qubit(std::numbers::pi / 2, 0.0); }

std::vector<std::pair<StateVector, StateVector>> random_pairs(int n, std::uint64_t seed) {
  std::vector<std::pair<StateVector, StateVector>> out;
  for (int i = 0; i < n; ++i) {
    CounterRng rng = RoundSeed{seed, static_cast<std::uint64_t>(i)}.rng(stream::kInputStates);
    StateVector psi = random_qubit(rng);
    StateVector phi = random_qubit(rng);
    out.emplace_back(std::move(psi), std::move(phi));
  }
  return out;
}

}  // namespace

TEST(QracBox, BranchExactRecoveryForRandomInputs) {
  for (const auto& [psi, phi] : random_pairs(200, 21)) {
    for (Bit w = 0; w < 2; ++w) {
      const auto branches = enumerate_round(psi, phi, StateVector::basis(1, w));
      ASSERT_EQ(branches.size(), 64U);
      double total = 0.0;
      for (const auto& br : branches) {
        total += br.probability;
        EXPECT_GE(fidelity(br.output, w == 0 ? psi : phi), 1.0 - 1e-10);
        EXPECT_EQ(br.transcript.totals, (Tally{2, 0, 0, 0}));
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(QracBox, SampledRoundsRecoverChosenInput) {
  const auto pairs = random_pairs(50, 22);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [psi, phi] = pairs[i];
    for (Bit w = 0; w < 2; ++w) {
      const QracRoundResult r = qrac_round(psi, phi, StateVector::basis(1, w), RoundSeed{1, i * 2 + w});
      EXPECT_EQ(r.record.w, w);
      EXPECT_EQ(r.record.b_in, r.record.a);
      EXPECT_GE(fidelity(r.output, w == 0 ? psi : phi), 1.0 - 1e-10);
      EXPECT_EQ(r.transcript.totals, (Tally{2, 0, 0, 0}));
    }
  }
}

TEST(QracBox, RecordFollowsBoxWiring) {
  const auto branches = enumerate_round(plus(), StateVector::basis(1, 1), StateVector::basis(1, 1));
  for (const auto& br : branches) {
    const QracRecord& r = br.record;
    // PR law on each box with x = a'_k ^ a''_k and y = w.
    EXPECT_EQ(r.alice_box0 ^ r.bob_box0, (r.first.bit0 ^ r.second.bit0) & r.w);
    EXPECT_EQ(r.alice_box1 ^ r.bob_box1, (r.first.bit1 ^ r.second.bit1) & r.w);
    EXPECT_EQ(r.a.bit1, r.first.bit1 ^ r.alice_box1);
    EXPECT_EQ(r.a.bit0, r.first.bit0 ^ r.alice_box0);
    // The correction equals the Bell outcome of the chosen pair.
    EXPECT_EQ(r.correction, r.w == 0 ? r.first : r.second);
  }
}

TEST(QracBox, AliceOutputIndependentOfChoice) {
  for (const auto& [psi, phi] : random_pairs(10, 23)) {
    std::array<std::array<double, 4>, 3> d{};
    const StateVector omegas[3] = {StateVector::basis(1, 0), StateVector::basis(1, 1), plus()};
    for (int o = 0; o < 3; ++o) d[o] = alice_output_distribution(enumerate_round(psi, phi, omegas[o]));
    for (int o = 0; o < 3; ++o) {
      for (double p : d[o]) EXPECT_NEAR(p, 0.25, 1e-12);
    }
    EXPECT_LE(oracle::tv(d[0], d[1]), 1e-12);
    EXPECT_LE(oracle::tv(d[0], d[2]), 1e-12);
  }
}

TEST(QracBox, FixedClassicalInputLeavesBobMaximallyMixed) {
  for (const auto& [psi, phi] : random_pairs(10, 24)) {
    for (Bit w = 0; w < 2; ++w) {
      for (int b = 0; b < 4; ++b) {
        const DensityMatrix avg = branch_average(enumerate_round(
            psi, phi, StateVector::basis(1, w), BobClassicalInput::constant(TwoBits::from_index(b))));
        EXPECT_LE(oracle::trace_distance_2x2(avg.matrix(), oracle::I2() / 2.0), 1e-10);
      }
    }
  }
}

TEST(QracBox, UnchosenInputStaysHiddenFromBob) {
  // Bob's full view for w = 0: classical (a, B0, B1) and both of his halves,
  // before he discards anything. It must not depend on phi.
  const auto view = [](const StateVector& psi, const StateVector& phi) {
    std::map<std::tuple<int, int, int>, CMatrix> v;
    for (int outcomes = 0; outcomes < 16; ++outcomes) {
      for (int coins = 0; coins < 4; ++coins) {
        QracResources res(QracBranch{BellOutcome::from_index(outcomes >> 2), BellOutcome::from_index(outcomes & 3),
                                     static_cast<Bit>(coins & 1), static_cast<Bit>(coins >> 1)});
        const AliceClassicalOutput a = qrac_alice(psi, phi, res);
        const CMatrix halves = reduced_state(res.state(), {res.layout().bob_half(0), res.layout().bob_half(1)}).matrix();
        qrac_bob(0, a, res);
        const QracRecord r = res.record();
        auto key = std::make_tuple(a.index(), int{r.bob_box0}, int{r.bob_box1});
        auto [it, inserted] = v.try_emplace(key, CMatrix::Zero(4, 4));
        it->second += r.weight * halves;
      }
    }
    return v;
  };
  const StateVector psi = make_pure_qubit(0.8, 1.9);
  const auto base = view(psi, StateVector::basis(1, 0));
  for (const StateVector& phi : {StateVector::basis(1, 1), plus(), make_pure_qubit(2.2, -0.4)}) {
    const auto other = view(psi, phi);
    ASSERT_EQ(other.size(), base.size());
    for (const auto& [key, m] : base) EXPECT_LT(oracle::max_abs(m, other.at(key)), 1e-12);
  }
}

TEST(QracBox, SuperposedChoiceGivesMixture) {
  const StateVector psi = make_pure_qubit(0.4, 0.1);
  const StateVector phi = make_pure_qubit(2.0, 2.5);
  for (double a2 : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const StateVector omega = StateVector::normalized(1, oracle::vec({std::sqrt(a2), std::sqrt(1 - a2)}));
    const DensityMatrix avg = branch_average(enumerate_round(psi, phi, omega));
    const oracle::Mat want = a2 * oracle::projector(psi.amplitudes()) + (1 - a2) * oracle::projector(phi.amplitudes());
    EXPECT_LE(oracle::trace_distance_2x2(avg.matrix(), want), 1e-10);
  }
}

TEST(QracBox, ReferenceQubitsStayEntangled) {
  // Half of |Phi+> goes in as A'; Bob's output together with the reference
  // must be |Phi+> again on every branch.
  const StateVector input = tensor({phi_plus(), make_pure_qubit(1.0, 0.5), StateVector::basis(1, 0)});
  for (const auto& br : enumerate_round(input, 1)) {
    EXPECT_EQ(br.output.num_qubits(), 2);
    EXPECT_GE(fidelity(br.output, phi_plus()), 1.0 - 1e-10);
  }
}

TEST(QracBox, ProtocolOrderEnforced) {
  QracResources res(RoundSeed{1, 0});
  EXPECT_THROW(qrac_bob(0, TwoBits{}, res), ProtocolError);
  qrac_alice(plus(), plus(), res);
  EXPECT_THROW(qrac_alice(plus(), plus(), res), ProtocolError);
  qrac_bob(1, TwoBits{}, res);
  EXPECT_TRUE(res.bob_done());
  EXPECT_THROW(qrac_bob(1, TwoBits{}, res), ProtocolError);
  EXPECT_THROW(qrac_round(tensor({plus(), plus()}), plus(), plus(), RoundSeed{}), QuantumError);
}

TEST(DenseCoding, DecodesAllFourMessages) {
  for (int b = 0; b < 4; ++b) {
    for (int half = 0; half < 2; ++half) {
      DensePair pair;
      const StateVector enc = dense_encode(TwoBits::from_index(b), pair, half);
      EXPECT_TRUE(pair.encoded());
      EXPECT_EQ(dense_decode_exact(enc).index(), b);
      for (int t = 0; t < 20; ++t) {
        CounterRng rng(t, 0, stream::kDenseDecode);
        EXPECT_EQ(dense_decode(enc, rng).index(), b);
      }
      EXPECT_THROW(dense_encode(TwoBits{}, pair, half), ProtocolError);
    }
  }
  EXPECT_THROW(dense_decode_exact(tensor({plus(), plus()})), QuantumError);
}

TEST(QubitOnlyRound, MatchesClassicalRoundAndBudget) {
  const auto pairs = random_pairs(30, 25);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [psi, phi] = pairs[i];
    const StateVector omega = make_pure_qubit(1.3, 0.0);
    const RoundSeed seed{8, i};
    const QracRoundResult classical = qrac_round(psi, phi, omega, seed);
    const QracRoundResult quantum = qrac_round_qubit_only(psi, phi, omega, seed);
    EXPECT_EQ(quantum.record.a, classical.record.a);
    EXPECT_EQ(quantum.record.w, classical.record.w);
    EXPECT_LT(oracle::max_abs(quantum.output.matrix(), classical.output.matrix()), 1e-12);
    EXPECT_EQ(quantum.transcript.totals, (Tally{0, 0, 1, 0}));
    EXPECT_EQ(classical.transcript.totals, (Tally{2, 0, 0, 0}));
  }
  for (const auto& br : enumerate_round(plus(), plus(), plus(), BobClassicalInput::feed(),
                                        Transport::kDenseCodedQubit)) {
    EXPECT_EQ(br.transcript.totals, (Tally{0, 0, 1, 0}));
    EXPECT_GE(fidelity(br.output, plus()), 1.0 - 1e-10);
  }
}

TEST(QracBox, SameSeedSameRound) {
  const StateVector psi = make_pure_qubit(0.3, 0.2);
  const StateVector phi = make_pure_qubit(1.3, 2.2);
  for (std::uint64_t t = 0; t < 20; ++t) {
    const QracRoundResult a = qrac_round(psi, phi, plus(), RoundSeed{77, t});
    const QracRoundResult b = qrac_round(psi, phi, plus(), RoundSeed{77, t});
    EXPECT_EQ(a.record.first, b.record.first);
    EXPECT_EQ(a.record.second, b.record.second);
    EXPECT_EQ(a.record.a, b.record.a);
    EXPECT_EQ(a.transcript.messages, b.transcript.messages);
    EXPECT_EQ(a.output.matrix(), b.output.matrix());
  }
}
