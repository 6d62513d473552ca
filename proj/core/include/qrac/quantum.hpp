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
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "qrac/rng.hpp"

/**
 * @file
 * Small dense state-vector / density-matrix machinery.
 *
 * Register convention: qubit 0 is the leftmost tensor factor, i.e. the most
 * significant bit of an amplitude index. Every module shares it.
 */

namespace qrac {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Bit = std::uint8_t;

inline constexpr int kMaxQubits = 12;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kAlgebraTolerance = 1e-10;

/// Raised when a quantum object violates its structural invariants.
class QuantumError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two classical bits written as `bit1 bit0`.
struct TwoBits {
  Bit bit1 = 0;
  Bit bit0 = 0;

  constexpr int index() const noexcept { return 2 * bit1 + bit0; }
  static constexpr TwoBits from_index(int i) noexcept {
    return TwoBits{static_cast<Bit>((i >> 1) & 1), static_cast<Bit>(i & 1)};
  }
  friend constexpr bool operator==(TwoBits, TwoBits) = default;
  friend constexpr TwoBits operator^(TwoBits x, TwoBits y) noexcept {
    return TwoBits{static_cast<Bit>(x.bit1 ^ y.bit1),
                   static_cast<Bit>(x.bit0 ^ y.bit0)};
  }
};

/// Outcome label of a Bell measurement: basis state (X^bit0 (x) Z^bit1)|Phi+>.
using BellOutcome = TwoBits;

class StateVector {
 public:
  /// Throws QuantumError unless the length is 2^num_qubits and the norm is 1.
  StateVector(int num_qubits, CVector amplitudes);

  /// Computational basis state |index> on `num_qubits` qubits.
  static StateVector basis(int num_qubits, std::uint64_t index);
  /// Normalizes first; throws on a zero vector.
  static StateVector normalized(int num_qubits, CVector amplitudes);

  int num_qubits() const noexcept { return num_qubits_; }
  Eigen::Index dim() const noexcept { return amplitudes_.size(); }
  const CVector& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](Eigen::Index i) const { return amplitudes_[i]; }

  double norm_squared() const { return amplitudes_.squaredNorm(); }

 private:
  int num_qubits_;
  CVector amplitudes_;
};

class DensityMatrix {
 public:
  enum class Normalization { kUnitTrace, kSubnormalized };

  /// Validates Hermiticity (1e-10 entrywise), positivity (eigenvalues >= -1e-10)
  /// and the trace (= 1, or <= 1 when subnormalized).
  DensityMatrix(int num_qubits, CMatrix matrix,
                Normalization normalization = Normalization::kUnitTrace);

  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int num_qubits);

  int num_qubits() const noexcept { return num_qubits_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }
  const CMatrix& matrix() const noexcept { return matrix_; }
  bool subnormalized() const noexcept {
    return normalization_ == Normalization::kSubnormalized;
  }
  double trace() const { return matrix_.trace().real(); }

 private:
  int num_qubits_;
  CMatrix matrix_;
  Normalization normalization_;
};

class UnitaryMatrix {
 public:
  /// Throws QuantumError unless U^dagger U = I within 1e-10.
  explicit UnitaryMatrix(CMatrix matrix);

  static UnitaryMatrix identity(Eigen::Index dim);
  static UnitaryMatrix pauli_x();
  static UnitaryMatrix pauli_y();
  static UnitaryMatrix pauli_z();
  static UnitaryMatrix hadamard();
  /// Z^bit1 X^bit0, the teleportation correction for outcome (bit1, bit0).
  static UnitaryMatrix pauli_correction(TwoBits bits);

  Eigen::Index dim() const noexcept { return matrix_.rows(); }
  const CMatrix& matrix() const noexcept { return matrix_; }

  UnitaryMatrix operator*(const UnitaryMatrix& rhs) const;

 private:
  CMatrix matrix_;
};

// ---------------------------------------------------------------------------
// Preparation

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
StateVector make_pure_qubit(double theta, double phi);

/// Uniformly distributed pure qubit (two draws from `rng`).
StateVector random_qubit(CounterRng& rng);

/// (|00> + |11>)/sqrt(2).
StateVector phi_plus();

/// The Bell basis state (X^bit0 (x) Z^bit1)|Phi+>.
StateVector bell_state(BellOutcome outcome);

/// Kronecker product in list order. Throws on an empty list.
StateVector tensor(std::span<const StateVector> states);
StateVector tensor(std::initializer_list<StateVector> states);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// ---------------------------------------------------------------------------
// Evolution

/// Applies `u` to `targets` (first target = most significant factor of u).
StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& u,
                          std::span<const int> targets);
StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& u,
                          std::initializer_list<int> targets);

/// Applies an arbitrary operator without renormalizing. Used for projectors
/// and Kraus operators; the result is a raw amplitude vector.
CVector apply_operator(const CVector& amplitudes, int num_qubits,
                       const CMatrix& op, std::span<const int> targets);

// ---------------------------------------------------------------------------
// Measurement

/// Outcomes whose Born probability falls below this are treated as impossible.
inline constexpr double kZeroProbability = 1e-14;

/// Post-measurement states are renormalized and the measured qubits stay in
/// the register, collapsed, so indices remain stable across a round.
struct BellMeasurement {
  BellOutcome outcome;
  double probability = 0.0;
  StateVector state;
};

struct ComputationalMeasurement {
  Bit bit = 0;
  double probability = 0.0;
  StateVector state;
};

/// Born probabilities of the four Bell outcomes on `pair`, indexed by
/// BellOutcome::index().
std::array<double, 4> bell_probabilities(const StateVector& state,
                                         std::array<int, 2> pair);

/// Forces a Bell outcome. Throws QuantumError if the outcome has zero
/// probability.
BellMeasurement bell_project(const StateVector& state, std::array<int, 2> pair,
                             BellOutcome outcome);

/// Samples a Bell outcome with one uniform draw from `rng`.
BellMeasurement bell_measure(const StateVector& state, std::array<int, 2> pair,
                             CounterRng& rng);

/// Born probabilities of reading 0 and 1 on `qubit`.
std::array<double, 2> computational_probabilities(const StateVector& state,
                                                  int qubit);

ComputationalMeasurement measure_project(const StateVector& state, int qubit,
                                         Bit bit);
ComputationalMeasurement measure_computational(const StateVector& state,
                                               int qubit, CounterRng& rng);

/// Removes a qubit that has already collapsed to |bit>. This is the exact
/// partial trace of a product factor; throws if the qubit is not collapsed.
StateVector discard_collapsed(const StateVector& state, int qubit, Bit bit);

/// Picks an index from a probability table with one uniform draw. Entries
/// below kZeroProbability are treated as impossible.
int sample_index(std::span<const double> probabilities, CounterRng& rng);

// ---------------------------------------------------------------------------
// Reduction and metrics

/// Reduced state on `keep` (kept qubits in ascending order). An empty `keep`
/// yields a 0-qubit 1x1 matrix holding the trace.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::initializer_list<int> keep);

/// Reduced state of a pure state, computed without forming the full matrix.
DensityMatrix reduced_state(const StateVector& psi, std::span<const int> keep);
DensityMatrix reduced_state(const StateVector& psi,
                            std::initializer_list<int> keep);

/// <psi|rho|psi>, clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const StateVector& psi);

/// Half the trace norm of (a - b); both arguments must be Hermitian.
double trace_distance(const CMatrix& a, const CMatrix& b);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const CMatrix& hermitian);

/// Largest entrywise modulus of (a - b).
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace qrac
