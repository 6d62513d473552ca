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
#include <vector>

#include "qrac/qracbox.hpp"
#include "qrac/quantum.hpp"

/**
 * @file
 * Process tomography and structural checks of the QRAC channel.
 *
 * The QRAC channel maps Alice's two inputs and Bob's choice qubit (A', A'', R;
 * 8 dimensions) to Bob's output qubit B, with Alice's classical output fed to
 * Bob. Conditioning on Alice's output a splits it into four subchannels.
 */

namespace qrac {

inline constexpr double kChannelTolerance = 1e-8;
inline constexpr double kOrthogonalityTolerance = 1e-6;

/// Raised for matrices that are not valid channels where one is required.
class ChannelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/**
 * @brief Choi matrix J = sum_ij |i><j| (x) L(|i><j|), input factor first.
 *
 * Unnormalized: a trace-preserving channel has Tr J = d_in and
 * Tr_out J = I_in.
 */
class ChoiMatrix {
 public:
  ChoiMatrix(int input_qubits, int output_qubits, CMatrix matrix);

  int input_qubits() const noexcept { return input_qubits_; }
  int output_qubits() const noexcept { return output_qubits_; }
  Eigen::Index d_in() const noexcept { return Eigen::Index{1} << input_qubits_; }
  Eigen::Index d_out() const noexcept { return Eigen::Index{1} << output_qubits_; }
  const CMatrix& matrix() const noexcept { return matrix_; }

  double min_eigenvalue() const;
  /// Tr_out J, a d_in x d_in matrix.
  CMatrix output_trace() const;
  /// max |Tr_out J - I|.
  double trace_preservation_error() const;
  /// Largest eigenvalue of Tr_out J minus one; <= 0 for trace non-increasing maps.
  double trace_increase() const;

  /// L(rho) = Tr_in[(rho^T (x) I) J]. `rho` is d_in x d_in; no validation.
  CMatrix apply(const CMatrix& rho) const;

 private:
  int input_qubits_;
  int output_qubits_;
  CMatrix matrix_;
};

/// Choi matrices of the subchannels, indexed by Alice's output a.index().
struct SubchannelSet {
  std::vector<ChoiMatrix> parts;

  /// max |sum_a J_a - J| entrywise.
  double decomposition_error(const ChoiMatrix& total) const;
};

/// Probability-weighted output of one branch, labelled by Alice's output.
struct LabeledOutput {
  int label = -1;
  double probability = 0.0;
  DensityMatrix output;
};

/**
 * @brief A protocol seen as a channel, runnable branch-exactly or sampled.
 *
 * Inputs are laid out as [reference...][system inputs] and outputs as
 * [reference...][system outputs]; reference qubits pass through untouched.
 */
class RoundRunner {
 public:
  virtual ~RoundRunner() = default;
  virtual int input_qubits() const = 0;
  virtual int output_qubits() const = 0;
  virtual std::vector<LabeledOutput> exact(const StateVector& input,
                                           int reference_qubits) const = 0;
  virtual LabeledOutput sample(const StateVector& input, int reference_qubits,
                               RoundSeed seed) const = 0;
};

/// The QRAC round as a channel from (A', A'', R) to B, labelled by a.
class QracRunner final : public RoundRunner {
 public:
  explicit QracRunner(Transport transport = Transport::kClassicalBits,
                      BobClassicalInput bob_input = BobClassicalInput::feed())
      : transport_(transport), bob_input_(bob_input) {}

  int input_qubits() const override { return 3; }
  int output_qubits() const override { return 1; }
  std::vector<LabeledOutput> exact(const StateVector& input,
                                   int reference_qubits) const override;
  LabeledOutput sample(const StateVector& input, int reference_qubits,
                       RoundSeed seed) const override;

 private:
  Transport transport_;
  BobClassicalInput bob_input_;
};

enum class TomographyMode { kBranchExact, kSampled };

struct TomographyOptions {
  TomographyMode mode = TomographyMode::kBranchExact;
  int trials = 0;
  std::uint64_t seed = 0;
};

/// Sampled estimates from fewer rounds than this are flagged.
inline constexpr int kMinTomographyTrials = 1000;

struct TomographyResult {
  ChoiMatrix choi;
  TomographyMode mode = TomographyMode::kBranchExact;
  int trials = 0;
  bool undersampled = false;
};

/// Feeds half of a maximally entangled state on the input space through the
/// runner and assembles the Choi matrix from the output.
TomographyResult tomography(const RoundRunner& runner,
                            const TomographyOptions& options = {});

/// Branch-exact subchannel Choi matrices, one per label 0..3.
SubchannelSet subchannels(const RoundRunner& runner);

/// Branch-exact output of the runner on a product input, and the
/// subnormalized per-label outputs.
struct ChannelOutput {
  DensityMatrix total;
  std::array<CMatrix, 4> by_label;
};
ChannelOutput channel_output(const RoundRunner& runner, const StateVector& input);

// ---------------------------------------------------------------------------

struct MixtureReport {
  CMatrix output;
  CMatrix expected;  // |alpha|^2 psi + |beta|^2 phi
  double trace_distance = 0.0;
  std::array<double, 4> subchannel_distances{};  // vs expected / 4
  double max_subchannel_distance = 0.0;
  bool pass = false;
};

/// Runs the channel on psi (x) phi (x) (alpha|0> + beta|1>) and compares with
/// the classical mixture. Throws ChannelError if |alpha|^2 + |beta|^2 != 1.
MixtureReport mixture_check(Complex alpha, Complex beta, const StateVector& psi,
                            const StateVector& phi,
                            const RoundRunner& runner = QracRunner());

// ---------------------------------------------------------------------------

/**
 * @brief Isometric extension V: C^{d_in} -> C^{d_out} (x) C^{env}, output factor
 * first, built from the Choi eigendecomposition (one environment level per
 * nonzero eigenvalue).
 */
struct Dilation {
  int input_qubits = 0;
  int output_qubits = 0;
  Eigen::Index environment_dim = 0;
  CMatrix isometry;

  /// max |V^dagger V - I|.
  double isometry_error() const;
  /// V|input>, over output (x) environment.
  CVector apply(const CVector& input) const;
  /// Tr_env V rho V^dagger.
  CMatrix channel(const CMatrix& rho) const;
};

/// Throws ChannelError unless `choi` is PSD and trace preserving within 1e-8.
Dilation build_dilation(const ChoiMatrix& choi);

struct OrthogonalityReport {
  /// |<chi0|chi1>| for the residual environment states of R = |0> and R = |1>.
  double overlap = 0.0;
  /// Distance of V|psi phi w> from the product |target> (x) |chi_w>.
  double product_residual0 = 0.0;
  double product_residual1 = 0.0;
  double input_overlap = 0.0;  // |<psi|phi>|
  bool pass = false;
};

OrthogonalityReport environment_orthogonality_check(const Dilation& dilation,
                                                    const StateVector& psi,
                                                    const StateVector& phi);

// ---------------------------------------------------------------------------

struct NonSignalingOptions {
  TomographyMode mode = TomographyMode::kBranchExact;
  int trials = 0;
  std::uint64_t seed = 0;
  /// (psi, phi) pairs to test; defaults to {(|0>,|0>), (|+>,|->)} when empty.
  std::vector<std::pair<StateVector, StateVector>> inputs;
};

struct NonSignalingReport {
  /// Exact distributions of a for w = 0, w = 1 and omega = |+>, per input pair.
  std::vector<std::array<std::array<double, 4>, 3>> alice_distributions;
  /// Max pairwise TV between those distributions (exact).
  double exact_alice_tv = 0.0;
  /// Max deviation of any a-probability from 1/4 (exact).
  double exact_alice_uniformity = 0.0;
  /// Max trace distance of Bob's output to I/2 with a withheld, over inputs,
  /// fixed b and w; plus the largest distance between input pairs.
  double bob_marginal_distance = 0.0;
  double bob_cross_input_distance = 0.0;
  /// Sampled TV between a-histograms for w = 0 and w = 1 (sampled mode only).
  double sampled_alice_tv = 0.0;
  int trials = 0;
};

/// Sampled mode requires trials >= 10^4 (std::invalid_argument otherwise).
NonSignalingReport verify_nonsignaling(Transport transport,
                                       const NonSignalingOptions& options);

}  // namespace qrac
