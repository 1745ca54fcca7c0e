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

#ifndef FTSNAP_DEVICE_H_
#define FTSNAP_DEVICE_H_

#include <functional>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ftsnap/diagnostics.h"
#include "ftsnap/hilbert.h"

namespace ftsnap {

inline constexpr double kNever = std::numeric_limits<double>::infinity();

enum class DephasingModel { number, projector };

/// Static device parameters. Frequencies are angular (rad/s), times in
/// seconds. An infinite time disables the corresponding process.
struct DeviceParams {
  double chi_e = kTwoPi * -0.9e6;
  double chi_f = kTwoPi * -1.2e6;
  double kerr_K = kTwoPi * -2.2e3;
  double anharmonicity_alpha = kTwoPi * -137e6;
  double t1_ge = 50e-6;
  double t1_ef = 47e-6;
  double tphi_ge = 200e-6;
  double tphi_gf = 40e-6;
  double t1_cavity = 1.0e-3;
  double nbar_thermal = 0.004;
  /// Extra g-f pure-dephasing rate (coherence decay rate, 1/s).
  double injected_dephasing_rate = 0.0;
  /// Rate of each of the two symmetric e<->f noise jumps (1/s).
  double injected_ef_noise_rate = 0.0;
  bool kerr_enabled = true;
  DephasingModel dephasing_model = DephasingModel::number;

  /// All decoherence switched off; Hamiltonian terms unchanged.
  static DeviceParams noiseless();
  void validate() const;
};

enum class EnvelopeShape { constant, gaussian };

/// Time profile of the SNAP drive on [0, duration]. The instantaneous rate is
/// Ω(t) = area * shape(t) / ∫shape, so the envelope integrates to `area`.
struct PulseEnvelope {
  EnvelopeShape shape = EnvelopeShape::constant;
  double duration = 1e-6;
  double sigma = 0.0;
  double area = kPi / 2;

  static PulseEnvelope constant(double duration, double area);
  static PulseEnvelope gaussian(double duration, double sigma, double area);

  /// Unnormalized profile, peak value 1.
  double shape_at(double t) const;
  /// ∫_0^duration shape(t) dt, closed form.
  double shape_integral() const;
  double peak_rate() const { return area / shape_integral(); }
  double rate(double t) const { return peak_rate() * shape_at(t); }
  /// ∫_0^t Ω(s) ds.
  double integrated_area(double t) const;
  void validate() const;
};

/// Photon numbers addressed by the SNAP comb (the code support).
inline constexpr int kDrivenFock[] = {0, 2, 4};

struct DriveParams {
  /// Peak effective g-f rate Ω (rad/s).
  double omega = 0.0;
  /// θ_k per photon number k; unlisted k in {0,2,4} default to 0.
  std::map<int, double> theta_phases;
  double raman_delta = kTwoPi * 45e6;
  double sideband_g = kTwoPi * 3e6;
  /// Signed detuning δ of the error-transparency sideband drive.
  double sideband_delta = kTwoPi * -30e6;
  PulseEnvelope envelope;

  /// Drive whose peak rate realizes `envelope.area`.
  static DriveParams for_envelope(const PulseEnvelope& envelope, std::map<int, double> thetas);
  double theta(int photons) const;
  /// Ω / (2|χ_f|), the rotating-wave quality figure.
  double rwa_ratio(const DeviceParams& params) const;
  void validate() const;
};

enum class JumpKind {
  cavity_loss,
  ancilla_relax_ef,
  ancilla_relax_ge,
  dephasing,
  thermal_excite,
  injected_dephasing,
  injected_ef_up,
  injected_ef_down,
  et_hybrid_decay,
};

std::string jump_kind_name(JumpKind kind);

/// Collapse operator √rate · op.
struct JumpOp {
  Op op;
  double rate;
  JumpKind kind;
  std::string name;

  Mat collapse() const { return std::sqrt(rate) * op.matrix; }
};

/// a†a (χ_e|e><e| + χ_f|f><f|) + (K/2) a†² a² when Kerr is enabled.
Op build_h0(const DeviceParams& params, const TensorSpace& space);

/// S(θ) = Σ_{k∈{0,2,4}} e^{iθ_k}|k><k| on the cavity factor (zero elsewhere).
Mat snap_phase_matrix(const DriveParams& drive, int cavity_dim, double sign = 1.0);
/// Projector onto Fock {0,2,4} ⊗ {g,f}.
Op driven_subspace_projector(const TensorSpace& space);

/// Ω (S(θ)⊗|f><g| + S(−θ)⊗|g><f|), the interaction-picture SNAP Hamiltonian.
Op build_h_int_effective(const DriveParams& drive, const TensorSpace& space);

using TimeDependentHamiltonian = std::function<Mat(double)>;

enum class SnapModel {
  /// Each tone acts only on its own photon number (rotating-wave limit).
  rwa,
  /// Every tone acts on every photon number.
  comb,
};

/// Dispersive-frame SNAP Hamiltonian H0 + Ω(t) Σ_k [e^{i(θ_k − kχ_f t)}|f><g| + h.c.].
/// Moving to the interaction picture of H0 turns the `rwa` model into
/// build_h_int_effective exactly and the `comb` model into it up to
/// counter-rotating terms at multiples of χ_f.
TimeDependentHamiltonian build_h_snap_timedependent(const DeviceParams& params,
                                                    const DriveParams& drive,
                                                    const TensorSpace& space,
                                                    SnapModel model = SnapModel::comb);

struct RamanResult {
  double omega;
  double e_leakage;
};

/// Effective g-f rate Ω_ge Ω_ef / Δ and intermediate-state occupation
/// Ω_ge Ω_ef / Δ². Warns when Δ is less than five times either drive.
RamanResult build_raman_params(double omega_ge, double omega_ef, double delta,
                               Diagnostics* diags = nullptr);

struct TransparencyShift {
  double shift;
  double leakage;
};

/// Dispersive shift g²/δ added to χ_e by the detuned sideband drive and the
/// per-photon e-h hybridization g²/δ². δ is signed.
TransparencyShift build_error_transparency_shift(double g, double delta,
                                                 Diagnostics* diags = nullptr);
/// Kraus pair {K0, K1} for the |h> population left behind when the sideband
/// drive ramps off adiabatically with the ancilla in |e>: |e,n> keeps
/// amplitude cos ϑ_n, and sin ϑ_n goes to |h,n−1>, modeled as relaxed to
/// |f,n−1>. tan 2ϑ_n = 2g√n/|δ|.
std::pair<Op, Op> build_hybridization_kraus(double g, double delta, const TensorSpace& space);

/// δ satisfying g²/δ = χ_f − χ_e.
double matching_sideband_detuning(double g, const DeviceParams& params);
/// Copy of `params` with χ_e moved by the sideband shift.
DeviceParams with_transparency_shift(const DeviceParams& params, const TransparencyShift& shift);

struct JumpOptions {
  bool et_on = false;
  /// Per-photon e-h hybridization when the transparency drive is on.
  double et_leakage = 0.0;
  bool include_injected = true;
};

/// Lindblad operators for the device. Dephasing is calibrated so that pure
/// Ramsey coherences decay at 1/T_φ^ge (g-e) and 1/T_φ^gf (g-f):
///  - number model: √(2/T_φ^ge) b†b plus an f-projector top-up for g-f,
///  - projector model: √(2/T_φ^ge)|e><e| and √(2/T_φ^gf)|f><f|.
std::vector<JumpOp> build_jump_ops(const DeviceParams& params, const TensorSpace& space,
                                   const JumpOptions& options = {});

}  // namespace ftsnap

#endif  // FTSNAP_DEVICE_H_
