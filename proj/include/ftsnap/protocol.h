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

#ifndef FTSNAP_PROTOCOL_H_
#define FTSNAP_PROTOCOL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "ftsnap/codes.h"
#include "ftsnap/device.h"
#include "ftsnap/hilbert.h"

namespace ftsnap {

enum class Variant { NC, C };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

struct ProtocolConfig {
  Variant variant = Variant::C;
  double theta = kPi / 2;
  /// Detuned sideband drive during SNAP, moving χ_e onto χ_f.
  bool et_drive_on = true;
  PulseEnvelope snap_envelope = PulseEnvelope::gaussian(2e-6, 375e-9, kPi / 2);
  double swap_duration = 100e-9;
  double measurement_duration = 1e-6;
  /// confusion(true, reported); rows sum to 1.
  Eigen::Matrix3d confusion = Eigen::Matrix3d::Identity();
  int max_repeats = 5;
  /// Probability that the readout photons fully dephase the cavity in the
  /// Fock basis (cross-Kerr during measurement).
  double readout_dephasing = 0.0;
  SnapModel snap_model = SnapModel::rwa;
  /// Sideband coupling g and signed detuning δ. Whichever is unset follows
  /// from g²/δ = χ_f − χ_e; with neither set, g = 2π·3 MHz.
  std::optional<double> sideband_g;
  std::optional<double> sideband_delta;
  /// |e>-|h> hybridization from the sideband drive: decay of the admixture
  /// during SNAP and the residual |h> population when the drive ends.
  bool et_hybridization = true;
  /// Comb model only: per-photon-number phase offsets so the noiseless comb
  /// pulse imprints the same phases as the rotating-wave pulse.
  bool calibrate_snap_phases = true;
  /// Injected noise also acts during swap and readout, not only during SNAP.
  bool inject_outside_snap = false;
  int cavity_dim = 5;
  double tolerance = 1e-8;

  double snap_duration() const { return snap_envelope.duration; }
  /// θ phases on Fock {0, 2, 4} realizing logical S(θ).
  std::map<int, double> snap_phases() const;
  void validate() const;
};

struct SidebandDrive {
  double g;
  double delta;
};

SidebandDrive resolve_sideband(const ProtocolConfig& config, const DeviceParams& params);

/// Drive phases actually played: `config.snap_phases()` for the rwa model,
/// calibrated offsets for the comb model when enabled.
std::map<int, double> played_snap_phases(const ProtocolConfig& config, const DeviceParams& params);

/// Ideal |g> <-> |f> exchange on the ancilla, identity on the cavity and |e>.
Op gf_swap(const TensorSpace& space);

/// Angle φ of the software correction e^{iφ a†a} applied when `reported` is
/// the readout result (`reported` = g for the unmeasured NC variant).
double phase_correction_angle(const ProtocolConfig& config, const DeviceParams& params,
                              Level reported);

/// Deterministic jump applied on the attempt clock: SNAP occupies [0, T],
/// the swap window [T, T + swap_duration].
struct InjectedJump {
  Op op;
  double time;
};

struct RunOptions {
  std::uint64_t seed = 0;
  /// Injected jumps, first attempt only. The run is conditioned on them.
  std::vector<InjectedJump> injected;
  /// Readout results to post-select on, attempt by attempt. Later attempts
  /// are sampled.
  std::vector<Level> forced_outcomes;
};

struct GateOutcome {
  std::vector<Level> measured_levels;
  int repeats_used = 0;
  double phase_correction = 0.0;
  DensityMatrix final_rho;
  bool success = true;
  /// Probability of the realized readout record (1 for NC).
  double record_probability = 1.0;
};

/// One full gate. The C variant samples its readout record from `seed` and
/// repeats while f is reported; the NC variant is SNAP + swap with the
/// success-branch correction and the ancilla returned to |g>.
GateOutcome run_gate(const ProtocolConfig& config, const DeviceParams& params,
                     const DensityMatrix& rho_in, const RunOptions& options = {});

struct ConditionedState {
  double probability;
  /// Normalized cavity state after correction (zero matrix if probability 0).
  Mat cavity_rho;
  double phase_correction;
};

/// Single attempt, readout result resolved into its three outcomes.
std::map<Level, ConditionedState> run_gate_conditioned(
    const ProtocolConfig& config, const DeviceParams& params, const DensityMatrix& rho_in,
    const std::vector<InjectedJump>& injected = {});

struct AveragedGate {
  /// Cavity ⊗ |g><g|, averaged over readout records (trace 1).
  DensityMatrix rho;
  double success_probability;
  /// Expected number of attempts.
  double mean_attempts;
};

/// Ensemble-averaged gate: every readout record weighted by its probability.
AveragedGate run_gate_average(const ProtocolConfig& config, const DeviceParams& params,
                              const DensityMatrix& rho_in);

/// Logical channel of the averaged gate, by tomography on the code space.
LogicalChannel gate_channel(const ProtocolConfig& config, const DeviceParams& params);

/// SNAP segment alone (dispersive frame, no correction), for diagnostics.
DensityMatrix run_snap_segment(const ProtocolConfig& config, const DeviceParams& params,
                               const DensityMatrix& rho_in,
                               const std::vector<InjectedJump>& injected = {});

nlohmann::json to_json(const GateOutcome& outcome);

}  // namespace ftsnap

#endif  // FTSNAP_PROTOCOL_H_
