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

#ifndef FTSNAP_CODES_H_
#define FTSNAP_CODES_H_

#include <array>
#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "ftsnap/diagnostics.h"
#include "ftsnap/hilbert.h"

namespace ftsnap {

using Mat2 = Eigen::Matrix2cd;
using Bloch = Eigen::Vector3d;

/// Binomial kitten code: |0_L> = (|0> + |4>)/√2, |1_L> = |2>.
struct LogicalBasis {
  Vec zero_L;
  Vec one_L;

  static LogicalBasis kitten(int cavity_dim);
  int cavity_dim() const { return static_cast<int>(zero_L.size()); }
  /// cavity_dim × 2 isometry with columns |0_L>, |1_L>.
  Eigen::MatrixXcd isometry() const;
};

/// Cavity amplitudes of the logical state with the given Bloch vector.
Vec encode_cavity(int cavity_dim, const Bloch& bloch);
/// encode_cavity(...) ⊗ |ancilla>.
StateVector encode(const TensorSpace& space, const Bloch& bloch, Level ancilla = Level::g);

struct Decoded {
  Bloch bloch;
  /// Population outside span{|0_L>, |1_L>}.
  double leakage;
};

/// Projects onto the code space (ancilla traced out). The Bloch vector is
/// that of the normalized code-space block; it is zero when leakage is 1.
Decoded decode(const StateVector& psi);
Decoded decode(const DensityMatrix& rho);
Decoded decode_cavity(const Mat& rho_cavity);

/// 2×2 code-space block <i_L|ρ_cav|j_L> (trace = 1 − leakage).
Mat2 logical_block(const Mat& rho_cavity);

/// S(θ) = diag(1, e^{iθ}) in the (|0_L>, |1_L>) basis, extended to Fock
/// space as e^{iθ}|2><2| + identity elsewhere.
Mat logical_s_theta_cavity(int cavity_dim, double theta);
Op logical_s_theta(const TensorSpace& space, double theta);
Mat2 logical_s_theta_2x2(double theta);

struct WignerGrid {
  std::vector<double> re_axis;
  std::vector<double> im_axis;
  /// values(i, j) = W(re_axis[i] + i·im_axis[j]).
  Eigen::MatrixXd values;
};

/// W(α) = (2/π) Tr[D(α) Π D(α)† ρ], evaluated from closed-form displacement
/// matrix elements so the grid is not limited by a Fock cutoff. Emits a
/// "truncation" diagnostic when ρ has population in its top Fock level.
WignerGrid wigner(const Mat& rho_cavity, const std::vector<double>& re_axis,
                  const std::vector<double>& im_axis, Diagnostics* diags = nullptr);
/// `count` evenly spaced points on [lo, hi].
std::vector<double> linspace(double lo, double hi, int count);
/// CSV rows "alpha_re,alpha_im,W".
void write_wigner_csv(std::ostream& out, const WignerGrid& grid);

/// Single-qubit channel as a Pauli transfer matrix R_ij = Tr(P_i E(P_j))/2
/// in the (I, X, Y, Z) basis.
struct LogicalChannel {
  Eigen::Matrix4d ptm = Eigen::Matrix4d::Identity();
  /// Probability that the producing protocol reported success.
  double success_probability = 1.0;

  static LogicalChannel identity();
  static LogicalChannel unitary(const Mat2& u);
  /// ρ → (1 − λ)ρ + λ I/2.
  static LogicalChannel depolarizing(double lambda);
  static LogicalChannel from_action(const std::function<Mat2(const Mat2&)>& action);

  Mat2 apply(const Mat2& rho) const;
  /// this ∘ first.
  LogicalChannel after(const LogicalChannel& first) const;
  /// Normalized Choi matrix (trace 1).
  Eigen::Matrix4cd choi() const;
  double min_choi_eigenvalue() const;
  bool is_trace_preserving(double tol = 1e-8) const;

  double process_fidelity(const Mat2& target) const;
  double average_gate_fidelity(const Mat2& target) const;
  /// 2(1 − F_avg): the decay-rate increment this channel adds in interleaved
  /// RB to first order, equal to λ for depolarizing noise.
  double error(const Mat2& target) const;
};

/// Reconstructs a channel from its action on |0>, |1>, |+>, |+i> by linear
/// inversion. The runner returns the logical block of the output; any trace
/// deficit (leakage) is completed with I/2. Throws NumericalError when the
/// Choi matrix has an eigenvalue below `cp_floor`.
LogicalChannel channel_tomography(const std::function<Mat2(const Mat2&)>& runner,
                                  double cp_floor = -1e-7);

/// Pauli matrices I, X, Y, Z.
const std::array<Mat2, 4>& paulis();

}  // namespace ftsnap

#endif  // FTSNAP_CODES_H_
