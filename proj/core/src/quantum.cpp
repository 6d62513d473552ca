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

#include "qrac/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

namespace qrac {

namespace {

constexpr double kStateTolerance = 1e-10;

void check_qubit_count(int num_qubits) {
  if (num_qubits < 0 || num_qubits > kMaxQubits) {
    throw QuantumError("qubit count " + std::to_string(num_qubits) +
                       " outside [0, " + std::to_string(kMaxQubits) + "]");
  }
}

Eigen::Index dim_of(int num_qubits) { return Eigen::Index{1} << num_qubits; }

// Bit position (from the least significant end) of qubit `q` in an index.
int shift_of(int num_qubits, int q) { return num_qubits - 1 - q; }

void check_targets(int num_qubits, std::span<const int> targets) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= num_qubits) {
      throw QuantumError("qubit index " + std::to_string(targets[i]) +
                         " out of range for " + std::to_string(num_qubits) +
                         " qubits");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) {
        throw QuantumError("coincident qubit indices");
      }
    }
  }
}

// Splits the register into `kept` (ascending) and the complement, and returns
// a function composing a full index from a kept index and a traced index.
struct IndexSplit {
  int num_qubits;
  std::vector<int> kept;
  std::vector<int> traced;

  IndexSplit(int n, std::span<const int> keep) : num_qubits(n), kept(keep.begin(), keep.end()) {
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
      throw QuantumError("duplicate qubit in keep set");
    }
    for (int q : kept) {
      if (q < 0 || q >= n) {
        throw QuantumError("keep index " + std::to_string(q) + " out of range");
      }
    }
    for (int q = 0; q < n; ++q) {
      if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);
    }
  }

  static std::uint64_t scatter(std::uint64_t sub, const std::vector<int>& qubits,
                               int n) {
    std::uint64_t full = 0;
    const int k = static_cast<int>(qubits.size());
    for (int m = 0; m < k; ++m) {
      if ((sub >> (k - 1 - m)) & 1U) {
        full |= std::uint64_t{1} << shift_of(n, qubits[m]);
      }
    }
    return full;
  }

  std::uint64_t compose(std::uint64_t kept_index, std::uint64_t traced_index) const {
    return scatter(kept_index, kept, num_qubits) |
           scatter(traced_index, traced, num_qubits);
  }
};

CMatrix bell_projector(BellOutcome outcome) {
  const CVector b = bell_state(outcome).amplitudes();
  return b * b.adjoint();
}

}  // namespace

// ---------------------------------------------------------------------------

StateVector::StateVector(int num_qubits, CVector amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(num_qubits);
  if (amplitudes_.size() != dim_of(num_qubits)) {
    throw QuantumError("amplitude vector length " +
                       std::to_string(amplitudes_.size()) + " != 2^" +
                       std::to_string(num_qubits));
  }
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kNormTolerance) {
    throw QuantumError("state vector is not normalized");
  }
}

StateVector StateVector::basis(int num_qubits, std::uint64_t index) {
  check_qubit_count(num_qubits);
  CVector v = CVector::Zero(dim_of(num_qubits));
  if (index >= static_cast<std::uint64_t>(v.size())) {
    throw QuantumError("basis index out of range");
  }
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(num_qubits, std::move(v));
}

StateVector StateVector::normalized(int num_qubits, CVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw QuantumError("cannot normalize a zero or non-finite vector");
  }
  amplitudes /= norm;
  return StateVector(num_qubits, std::move(amplitudes));
}

DensityMatrix::DensityMatrix(int num_qubits, CMatrix matrix,
                             Normalization normalization)
    : num_qubits_(num_qubits),
      matrix_(std::move(matrix)),
      normalization_(normalization) {
  check_qubit_count(num_qubits);
  if (matrix_.rows() != dim_of(num_qubits) || matrix_.cols() != matrix_.rows()) {
    throw QuantumError("density matrix has wrong shape");
  }
  if (max_abs_diff(matrix_, matrix_.adjoint()) > kStateTolerance) {
    throw QuantumError("density matrix is not Hermitian");
  }
  if (min_eigenvalue(matrix_) < -kStateTolerance) {
    throw QuantumError("density matrix is not positive semidefinite");
  }
  const double tr = trace();
  if (normalization_ == Normalization::kUnitTrace) {
    if (std::abs(tr - 1.0) > kStateTolerance) {
      throw QuantumError("density matrix trace " + std::to_string(tr) + " != 1");
    }
  } else if (tr > 1.0 + kStateTolerance) {
    throw QuantumError("subnormalized density matrix has trace > 1");
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  const CVector& v = psi.amplitudes();
  return DensityMatrix(psi.num_qubits(), v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  check_qubit_count(num_qubits);
  const Eigen::Index d = dim_of(num_qubits);
  return DensityMatrix(num_qubits,
                       CMatrix::Identity(d, d) / static_cast<double>(d));
}

UnitaryMatrix::UnitaryMatrix(CMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw QuantumError("unitary must be a non-empty square matrix");
  }
  const CMatrix gram = matrix_.adjoint() * matrix_;
  if (max_abs_diff(gram, CMatrix::Identity(gram.rows(), gram.cols())) >
      kAlgebraTolerance) {
    throw QuantumError("matrix is not unitary");
  }
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index dim) {
  return UnitaryMatrix(CMatrix::Identity(dim, dim));
}

UnitaryMatrix UnitaryMatrix::pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::pauli_y() {
  CMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::hadamard() {
  CMatrix m(2, 2);
  m << 1, 1, 1, -1;
  return UnitaryMatrix(m / std::numbers::sqrt2);
}

UnitaryMatrix UnitaryMatrix::pauli_correction(TwoBits bits) {
  CMatrix m = CMatrix::Identity(2, 2);
  if (bits.bit0) m = pauli_x().matrix() * m;
  if (bits.bit1) m = pauli_z().matrix() * m;
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& rhs) const {
  if (dim() != rhs.dim()) throw QuantumError("unitary dimension mismatch");
  return UnitaryMatrix(matrix_ * rhs.matrix_);
}

// ---------------------------------------------------------------------------

StateVector make_pure_qubit(double theta, double phi) {
  CVector v(2);
  v << std::cos(theta / 2.0), std::polar(1.0, phi) * std::sin(theta / 2.0);
  return StateVector::normalized(1, std::move(v));
}

StateVector random_qubit(CounterRng& rng) {
  const double theta = std::acos(1.0 - 2.0 * rng.uniform());
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  return make_pure_qubit(theta, phi);
}

StateVector phi_plus() {
  CVector v = CVector::Zero(4);
  v[0] = v[3] = 1.0 / std::numbers::sqrt2;
  return StateVector(2, std::move(v));
}

StateVector bell_state(BellOutcome outcome) {
  StateVector s = phi_plus();
  if (outcome.bit1) s = apply_unitary(s, UnitaryMatrix::pauli_z(), {1});
  if (outcome.bit0) s = apply_unitary(s, UnitaryMatrix::pauli_x(), {0});
  return s;
}

StateVector tensor(std::span<const StateVector> states) {
  if (states.empty()) throw QuantumError("tensor of an empty list");
  int qubits = 0;
  for (const auto& s : states) qubits += s.num_qubits();
  check_qubit_count(qubits);

  CVector acc = states.front().amplitudes();
  for (std::size_t k = 1; k < states.size(); ++k) {
    const CVector& next = states[k].amplitudes();
    CVector out(acc.size() * next.size());
    for (Eigen::Index i = 0; i < acc.size(); ++i) {
      out.segment(i * next.size(), next.size()) = acc[i] * next;
    }
    acc = std::move(out);
  }
  return StateVector::normalized(qubits, std::move(acc));
}

StateVector tensor(std::initializer_list<StateVector> states) {
  return tensor(std::span<const StateVector>(states.begin(), states.size()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  const CMatrix& x = a.matrix();
  const CMatrix& y = b.matrix();
  CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  const bool sub = a.subnormalized() || b.subnormalized();
  return DensityMatrix(a.num_qubits() + b.num_qubits(), std::move(out),
                       sub ? DensityMatrix::Normalization::kSubnormalized
                           : DensityMatrix::Normalization::kUnitTrace);
}

// ---------------------------------------------------------------------------

CVector apply_operator(const CVector& amplitudes, int num_qubits,
                       const CMatrix& op, std::span<const int> targets) {
  check_targets(num_qubits, targets);
  const int k = static_cast<int>(targets.size());
  const Eigen::Index sub_dim = dim_of(k);
  if (op.rows() != sub_dim || op.cols() != sub_dim) {
    throw QuantumError("operator dimension " + std::to_string(op.rows()) +
                       " does not match " + std::to_string(k) + " target(s)");
  }
  if (amplitudes.size() != dim_of(num_qubits)) {
    throw QuantumError("amplitude vector length mismatch");
  }

  std::vector<std::uint64_t> offsets(static_cast<std::size_t>(sub_dim));
  std::uint64_t target_mask = 0;
  for (Eigen::Index j = 0; j < sub_dim; ++j) {
    std::uint64_t off = 0;
    for (int m = 0; m < k; ++m) {
      if ((static_cast<std::uint64_t>(j) >> (k - 1 - m)) & 1U) {
        off |= std::uint64_t{1} << shift_of(num_qubits, targets[m]);
      }
    }
    offsets[static_cast<std::size_t>(j)] = off;
  }
  for (int t : targets) target_mask |= std::uint64_t{1} << shift_of(num_qubits, t);

  CVector out(amplitudes.size());
  CVector gathered(sub_dim);
  for (std::uint64_t base = 0; base < static_cast<std::uint64_t>(amplitudes.size());
       ++base) {
    if (base & target_mask) continue;
    for (Eigen::Index j = 0; j < sub_dim; ++j) {
      gathered[j] = amplitudes[static_cast<Eigen::Index>(base | offsets[j])];
    }
    const CVector mapped = op * gathered;
    for (Eigen::Index j = 0; j < sub_dim; ++j) {
      out[static_cast<Eigen::Index>(base | offsets[j])] = mapped[j];
    }
  }
  return out;
}

StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& u,
                          std::span<const int> targets) {
  CVector out = apply_operator(state.amplitudes(), state.num_qubits(), u.matrix(),
                               targets);
  return StateVector(state.num_qubits(), std::move(out));
}

StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& u,
                          std::initializer_list<int> targets) {
  return apply_unitary(state, u, std::span<const int>(targets.begin(), targets.size()));
}

// ---------------------------------------------------------------------------

int sample_index(std::span<const double> probabilities, CounterRng& rng) {
  double total = 0.0;
  int last_possible = -1;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] >= kZeroProbability) {
      total += probabilities[i];
      last_possible = static_cast<int>(i);
    }
  }
  if (last_possible < 0) throw QuantumError("no outcome has positive probability");

  const double target = rng.uniform() * total;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] < kZeroProbability) continue;
    cumulative += probabilities[i];
    if (target < cumulative) return static_cast<int>(i);
  }
  return last_possible;
}

std::array<double, 4> bell_probabilities(const StateVector& state,
                                         std::array<int, 2> pair) {
  if (state.num_qubits() < 2) throw QuantumError("Bell measurement needs 2 qubits");
  std::array<double, 4> probs{};
  for (int i = 0; i < 4; ++i) {
    const CVector projected =
        apply_operator(state.amplitudes(), state.num_qubits(),
                       bell_projector(BellOutcome::from_index(i)), pair);
    probs[static_cast<std::size_t>(i)] = projected.squaredNorm();
  }
  return probs;
}

BellMeasurement bell_project(const StateVector& state, std::array<int, 2> pair,
                             BellOutcome outcome) {
  if (state.num_qubits() < 2) throw QuantumError("Bell measurement needs 2 qubits");
  CVector projected = apply_operator(state.amplitudes(), state.num_qubits(),
                                     bell_projector(outcome), pair);
  const double p = projected.squaredNorm();
  if (p < kZeroProbability) {
    throw QuantumError("forced Bell outcome has zero probability");
  }
  return BellMeasurement{outcome, p,
                         StateVector::normalized(state.num_qubits(), std::move(projected))};
}

BellMeasurement bell_measure(const StateVector& state, std::array<int, 2> pair,
                             CounterRng& rng) {
  const auto probs = bell_probabilities(state, pair);
  const int pick = sample_index(probs, rng);
  return bell_project(state, pair, BellOutcome::from_index(pick));
}

ComputationalMeasurement measure_project(const StateVector& state, int qubit,
                                         Bit bit) {
  const int n = state.num_qubits();
  const std::array<int, 1> target{qubit};
  check_targets(n, target);
  const std::uint64_t mask = std::uint64_t{1} << shift_of(n, qubit);
  CVector projected = state.amplitudes();
  for (Eigen::Index i = 0; i < projected.size(); ++i) {
    const bool set = (static_cast<std::uint64_t>(i) & mask) != 0;
    if (set != (bit != 0)) projected[i] = 0.0;
  }
  const double p = projected.squaredNorm();
  if (p < kZeroProbability) {
    throw QuantumError("forced measurement outcome has zero probability");
  }
  return ComputationalMeasurement{bit, p, StateVector::normalized(n, std::move(projected))};
}

std::array<double, 2> computational_probabilities(const StateVector& state,
                                                  int qubit) {
  const int n = state.num_qubits();
  const std::array<int, 1> target{qubit};
  check_targets(n, target);
  const std::uint64_t mask = std::uint64_t{1} << shift_of(n, qubit);
  std::array<double, 2> probs{};
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    probs[(static_cast<std::uint64_t>(i) & mask) ? 1 : 0] += std::norm(state[i]);
  }
  return probs;
}

ComputationalMeasurement measure_computational(const StateVector& state,
                                               int qubit, CounterRng& rng) {
  const auto probs = computational_probabilities(state, qubit);
  const Bit bit = static_cast<Bit>(sample_index(probs, rng));
  return measure_project(state, qubit, bit);
}

StateVector discard_collapsed(const StateVector& state, int qubit, Bit bit) {
  const int n = state.num_qubits();
  const std::array<int, 1> target{qubit};
  check_targets(n, target);
  const std::uint64_t mask = std::uint64_t{1} << shift_of(n, qubit);
  const int low_bits = shift_of(n, qubit);
  CVector out(state.dim() / 2);
  double leaked = 0.0;
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    const bool set = (idx & mask) != 0;
    if (set != (bit != 0)) {
      leaked += std::norm(state[i]);
      continue;
    }
    const std::uint64_t low = idx & ((std::uint64_t{1} << low_bits) - 1);
    const std::uint64_t high = idx >> (low_bits + 1);
    out[static_cast<Eigen::Index>((high << low_bits) | low)] = state[i];
  }
  if (leaked > kNormTolerance) {
    throw QuantumError("qubit is not collapsed to the discarded value");
  }
  return StateVector::normalized(n - 1, std::move(out));
}

// ---------------------------------------------------------------------------

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const IndexSplit split(rho.num_qubits(), keep);
  const auto kept_dim = dim_of(static_cast<int>(split.kept.size()));
  const auto traced_dim = dim_of(static_cast<int>(split.traced.size()));
  CMatrix out = CMatrix::Zero(kept_dim, kept_dim);
  for (Eigen::Index r = 0; r < kept_dim; ++r) {
    for (Eigen::Index c = 0; c < kept_dim; ++c) {
      Complex sum = 0.0;
      for (Eigen::Index e = 0; e < traced_dim; ++e) {
        const auto row = split.compose(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(e));
        const auto col = split.compose(static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(e));
        sum += rho.matrix()(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
      }
      out(r, c) = sum;
    }
  }
  return DensityMatrix(static_cast<int>(split.kept.size()), std::move(out),
                       rho.subnormalized()
                           ? DensityMatrix::Normalization::kSubnormalized
                           : DensityMatrix::Normalization::kUnitTrace);
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

DensityMatrix reduced_state(const StateVector& psi, std::span<const int> keep) {
  const IndexSplit split(psi.num_qubits(), keep);
  const auto kept_dim = dim_of(static_cast<int>(split.kept.size()));
  const auto traced_dim = dim_of(static_cast<int>(split.traced.size()));
  CMatrix reshaped(kept_dim, traced_dim);
  for (Eigen::Index r = 0; r < kept_dim; ++r) {
    for (Eigen::Index e = 0; e < traced_dim; ++e) {
      reshaped(r, e) = psi[static_cast<Eigen::Index>(
          split.compose(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(e)))];
    }
  }
  return DensityMatrix(static_cast<int>(split.kept.size()),
                       reshaped * reshaped.adjoint());
}

DensityMatrix reduced_state(const StateVector& psi,
                            std::initializer_list<int> keep) {
  return reduced_state(psi, std::span<const int>(keep.begin(), keep.size()));
}

double fidelity(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.dim() != psi.dim()) throw QuantumError("fidelity dimension mismatch");
  const CVector& v = psi.amplitudes();
  const double f = (v.adjoint() * rho.matrix() * v)(0, 0).real();
  return std::clamp(f, 0.0, 1.0);
}

double min_eigenvalue(const CMatrix& hermitian) {
  if (hermitian.size() == 0) return 0.0;
  const CMatrix sym = (hermitian + hermitian.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw QuantumError("trace distance dimension mismatch");
  }
  const CMatrix diff = a - b;
  const CMatrix sym = (diff + diff.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return trace_distance(a.matrix(), b.matrix());
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw QuantumError("shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qrac
