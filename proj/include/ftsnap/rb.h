// Copyright 2026 The ftsnap Authors
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

#ifndef FTSNAP_RB_H_
#define FTSNAP_RB_H_

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "ftsnap/codes.h"
#include "ftsnap/diagnostics.h"

namespace ftsnap {

/// The 24 single-qubit Cliffords, phase-normalized so the first nonzero
/// entry of each matrix is real and positive.
const std::vector<Mat2>& clifford_group();

/// y = A e^{−γn} + 1/2, fitted by Levenberg-Marquardt.
struct ExponentialFit {
  double amplitude = 0.0;
  double gamma = 0.0;
  double amplitude_stderr = 0.0;
  double gamma_stderr = 0.0;
  double residual_rms = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// `sigma` empty means unweighted. Standard errors are scaled by the
/// reduced chi-square of the residuals.
ExponentialFit fit_rb_decay(const std::vector<double>& lengths, const std::vector<double>& survival,
                            const std::vector<double>& sigma = {});

struct InterleavedGate {
  LogicalChannel channel;
  /// Ideal unitary of the gate, used when composing the recovery Clifford.
  Mat2 target;
};

struct RBOptions {
  /// Depolarizing λ applied after every random Clifford. The default makes
  /// the reference decay γ_RB = 0.025.
  double background_error = 1.0 - std::exp(-0.025);
  /// Symmetric probability of misreading the final logical measurement.
  double assignment_error = 0.0;
  /// Binomial shots per sequence; 0 uses exact probabilities.
  int shots = 100;
  /// 0 picks the hardware concurrency.
  int threads = 0;
};

struct RBResult {
  std::vector<int> lengths;
  std::vector<double> survival;
  std::vector<double> survival_stderr;
  ExponentialFit fit;
  Diagnostics diagnostics;
};

/// Randomized benchmarking on the logical qubit with ideal Clifford channels
/// (plus the background floor). With `gate` set, it follows every random
/// Clifford. Sequence (length index i, sequence s) draws from
/// derive_seed(seed, i * n_sequences + s), so results do not depend on the
/// thread count.
RBResult run_rb(const std::optional<InterleavedGate>& gate, const std::vector<int>& lengths,
                int n_sequences, std::uint64_t seed, const RBOptions& options = {});

struct DecayDifference {
  double value;
  double stderr;
  /// 1 − e^{−value}: equals p exactly for an interleaved depolarizing
  /// channel of strength p, where `value` itself is −ln(1 − p).
  double gate_error;
  double gate_error_stderr;
};

/// γ_IRB − γ_RB with independent standard errors added in quadrature.
DecayDifference interleaved_difference(const RBResult& reference, const RBResult& interleaved);

}  // namespace ftsnap

#endif  // FTSNAP_RB_H_
