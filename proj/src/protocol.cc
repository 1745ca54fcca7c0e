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

#include "ftsnap/protocol.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "ftsnap/dynamics.h"

namespace ftsnap {

std::string variant_name(Variant v) { return v == Variant::NC ? "NC" : "C"; }

Variant variant_from_name(const std::string& name) {
  if (name == "NC") return Variant::NC;
  if (name == "C") return Variant::C;
  throw ValidationError("variant must be NC or C, got '" + name + "'");
}

std::map<int, double> ProtocolConfig::snap_phases() const {
  return {{0, 0.0}, {2, theta}, {4, 0.0}};
}

void ProtocolConfig::validate() const {
  snap_envelope.validate();
  if (!(swap_duration > 0.0)) throw ValidationError("swap_duration must be > 0");
  if (!(measurement_duration > 0.0)) throw ValidationError("measurement_duration must be > 0");
  if (max_repeats < 0) throw ValidationError("max_repeats must be >= 0");
  if (readout_dephasing < 0.0 || readout_dephasing > 1.0)
    throw ValidationError("readout_dephasing must lie in [0, 1]");
  if ((confusion.array() < 0.0).any())
    throw ValidationError("confusion matrix entries must be >= 0");
  for (int r = 0; r < 3; ++r)
    if (std::abs(confusion.row(r).sum() - 1.0) > 1e-9)
      throw ValidationError("confusion matrix rows must sum to 1");
  if (cavity_dim < 5) throw ValidationError("cavity_dim must be >= 5");
  if (!(tolerance > 1e-12 && tolerance < 1e-4))
    throw ValidationError("tolerance must lie in (1e-12, 1e-4)");
  if (sideband_delta && *sideband_delta == 0.0)
    throw ValidationError("sideband_delta must be nonzero");
  if (sideband_g && !(*sideband_g > 0.0)) throw ValidationError("sideband_g must be > 0");
}

SidebandDrive resolve_sideband(const ProtocolConfig& config, const DeviceParams& params) {
  const double mismatch = params.chi_f - params.chi_e;
  if (config.sideband_g && config.sideband_delta)
    return {*config.sideband_g, *config.sideband_delta};
  if (config.sideband_delta) {
    const double delta = *config.sideband_delta;
    if (mismatch == 0.0 || delta * mismatch < 0.0)
      throw ValidationError("sideband_delta must share the sign of chi_f - chi_e");
    return {std::sqrt(delta * mismatch), delta};
  }
  const double g = config.sideband_g.value_or(kTwoPi * 3e6);
  return {g, matching_sideband_detuning(g, params)};
}

Op gf_swap(const TensorSpace& space) {
  Op swap = ancilla_transition(space, Level::g, Level::f) +
            ancilla_transition(space, Level::f, Level::g) +
            ancilla_projector(space, Level::e);
  swap.label = "gf_swap";
  return swap;
}

double phase_correction_angle(const ProtocolConfig& config, const DeviceParams& params,
                              Level reported) {
  const double t_snap = config.snap_duration();
  const double tau = config.swap_duration;
  const double tau_m = config.variant == Variant::C ? config.measurement_duration : 0.0;
  switch (reported) {
    case Level::g:
      return params.chi_f * (t_snap + tau / 2);
    case Level::f:
      return params.chi_f * (tau / 2 + tau_m);
    case Level::e:
      return params.chi_f * t_snap + params.chi_e * (tau + tau_m);
    default:
      throw std::invalid_argument("no phase correction for level h");
  }
}

namespace {

double snap_max_frequency(const DeviceParams& params, const TensorSpace& space, double extra) {
  const double chi = std::abs(params.chi_f);
  return std::max(4.0 * chi, chi * (space.cavity_dim() - 1)) + extra;
}

// <f,k|U|g,k> for each driven k under the given SNAP model, no decoherence.
std::map<int, cplx> snap_amplitudes(const ProtocolConfig& config, const DeviceParams& params,
                                    const std::map<int, double>& phases, SnapModel model) {
  const TensorSpace space(config.cavity_dim, 3);
  const DriveParams drive = DriveParams::for_envelope(config.snap_envelope, phases);
  const Hamiltonian h(space, build_h_snap_timedependent(params, drive, space, model),
                      snap_max_frequency(params, space, 0.0));
  const EvolutionSpec spec{h, {}, config.snap_duration(), config.tolerance};
  std::map<int, cplx> out;
  for (int k : kDrivenFock) {
    const StateVector psi = evolve_schrodinger(spec, StateVector::basis(space, k, Level::g), 0.0,
                                               config.snap_duration());
    out[k] = psi.amplitudes(space.index(k, Level::f));
  }
  return out;
}

constexpr Level kReadoutLevels[] = {Level::g, Level::e, Level::f};

// Everything one attempt needs, built once per (config, params).
struct Attempt {
  const ProtocolConfig& config;
  const DeviceParams& params;
  TensorSpace space;
  std::optional<EvolutionSpec> snap;
  std::optional<EvolutionSpec> dwell;
  std::optional<EvolutionSpec> readout;
  Op swap;
  std::optional<std::pair<Op, Op>> hybridization;

  Attempt(const ProtocolConfig& c, const DeviceParams& p)
      : config(c), params(p), space(c.cavity_dim, 3), swap(gf_swap(space)) {
    config.validate();
    params.validate();
    DeviceParams snap_params = params;
    JumpOptions snap_jumps;
    if (config.et_drive_on) {
      const SidebandDrive sideband = resolve_sideband(config, params);
      const TransparencyShift shift = build_error_transparency_shift(sideband.g, sideband.delta);
      snap_params = with_transparency_shift(params, shift);
      snap_jumps.et_on = config.et_hybridization;
      snap_jumps.et_leakage = shift.leakage;
      if (config.et_hybridization)
        hybridization = build_hybridization_kraus(sideband.g, sideband.delta, space);
    }
    const DriveParams drive =
        DriveParams::for_envelope(config.snap_envelope, played_snap_phases(config, params));
    Hamiltonian h_snap(
        space, build_h_snap_timedependent(snap_params, drive, space, config.snap_model),
        snap_max_frequency(params, space, std::abs(snap_params.chi_e - params.chi_e)));
    snap.emplace(EvolutionSpec{h_snap, build_jump_ops(params, space, snap_jumps),
                               config.snap_duration(), config.tolerance});

    JumpOptions later;
    later.include_injected = config.inject_outside_snap;
    const Op h0 = build_h0(params, space);
    const auto later_jumps = build_jump_ops(params, space, later);
    dwell.emplace(EvolutionSpec{h0, later_jumps, config.swap_duration / 2, config.tolerance});
    readout.emplace(
        EvolutionSpec{h0, later_jumps, config.measurement_duration, config.tolerance});
  }

  double t_snap() const { return config.snap_duration(); }

  // Evolves `spec` over its own [0, t_final], applying injected jumps whose
  // attempt-clock time lies in the segment (start excluded when `open_start`).
  DensityMatrix segment(const EvolutionSpec& spec, DensityMatrix rho, double clock0,
                        const std::vector<InjectedJump>& injected, bool open_start) const {
    double t = 0.0;
    for (const auto& jump : injected) {
      const double local = jump.time - clock0;
      const bool inside = (open_start ? local > 0.0 : local >= 0.0) && local <= spec.t_final;
      if (!inside) continue;
      if (local > t) {
        rho = evolve_lindblad(spec, rho, t, local);
        t = local;
      }
      Mat next = jump.op.matrix * rho.matrix * jump.op.matrix.adjoint();
      const double weight = next.trace().real();
      if (weight < 1e-14)
        throw NumericalError("injected jump " + jump.op.label + " annihilates the state");
      rho = DensityMatrix(space, next / weight);
    }
    if (t < spec.t_final) rho = evolve_lindblad(spec, rho, t, spec.t_final);
    return rho;
  }

  DensityMatrix end_of_drive(DensityMatrix rho) const {
    if (!hybridization) return rho;
    const Mat& k0 = hybridization->first.matrix;
    const Mat& k1 = hybridization->second.matrix;
    rho.matrix = k0 * rho.matrix * k0.adjoint() + k1 * rho.matrix * k1.adjoint();
    return rho;
  }

  // SNAP followed by the swap window, no readout.
  DensityMatrix drive_and_swap(const DensityMatrix& rho_in,
                               const std::vector<InjectedJump>& injected) const {
    for (const auto& jump : injected)
      if (jump.time < 0.0 || jump.time > t_snap() + config.swap_duration)
        throw std::invalid_argument("injected jump time outside the SNAP and swap window");
    std::vector<InjectedJump> sorted = injected;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.time < b.time; });
    DensityMatrix rho = end_of_drive(segment(*snap, rho_in, 0.0, sorted, false));
    const double half = config.swap_duration / 2;
    rho = segment(*dwell, rho, t_snap(), sorted, true);
    rho.matrix = swap.matrix * rho.matrix * swap.matrix.adjoint();
    rho = segment(*dwell, rho, t_snap() + half, sorted, true);
    return rho;
  }

  // e^{iφ a†a} times the Kerr undo over `elapsed`, on the cavity factor.
  Mat correction(double phi, double elapsed) const {
    const int d = space.cavity_dim();
    Vec diag(d);
    for (int n = 0; n < d; ++n) {
      double angle = phi * n;
      if (params.kerr_enabled) angle += 0.5 * params.kerr_K * n * (n - 1) * elapsed;
      diag(n) = std::polar(1.0, angle);
    }
    return diag.asDiagonal();
  }

  // Cavity state of `rho` after the correction for `reported`, re-attached to
  // a fresh |g> ancilla. Not renormalized.
  DensityMatrix corrected_reset(const DensityMatrix& rho, Level reported, double elapsed) const {
    const Mat u =
        correction(phase_correction_angle(config, params, reported), elapsed);
    Mat cav = trace_ancilla(space, rho.matrix);
    cav = u * cav * u.adjoint();
    Mat ground = Mat::Zero(3, 3);
    ground(0, 0) = 1.0;
    return DensityMatrix(space, kron(cav, ground));
  }

  Mat readout_dephase(const Mat& rho) const {
    const double p = config.readout_dephasing;
    if (p == 0.0) return rho;
    Mat out = rho;
    const int a = space.ancilla_dim();
    for (int i = 0; i < rho.rows(); ++i)
      for (int j = 0; j < rho.cols(); ++j)
        if (i / a != j / a) out(i, j) *= (1.0 - p);
    return out;
  }

  // Unnormalized post-readout states per reported level, before correction.
  std::map<Level, DensityMatrix> measure(const DensityMatrix& rho) const {
    std::map<Level, Mat> true_branch;
    for (Level l : kReadoutLevels) {
      const Mat p = ancilla_projector(space, l).matrix;
      DensityMatrix branch(space, p * rho.matrix * p);
      const double weight = branch.trace().real();
      if (weight < 1e-15) continue;
      // Lindblad evolution is linear; run it normalized for the integrator.
      branch.matrix /= weight;
      branch = evolve_lindblad(*readout, branch);
      true_branch[l] = readout_dephase(branch.matrix) * weight;
    }
    std::map<Level, DensityMatrix> reported;
    for (Level r : kReadoutLevels) {
      Mat acc = Mat::Zero(space.dim(), space.dim());
      for (const auto& [l, m] : true_branch)
        acc += config.confusion(static_cast<int>(l), static_cast<int>(r)) * m;
      reported.emplace(r, DensityMatrix(space, acc));
    }
    return reported;
  }

  double attempt_time() const {
    return t_snap() + config.swap_duration +
           (config.variant == Variant::C ? config.measurement_duration : 0.0);
  }
};

DensityMatrix normalized(DensityMatrix rho) {
  const double t = rho.trace().real();
  if (t > 0.0) rho.matrix /= t;
  return rho;
}

}  // namespace

DensityMatrix run_snap_segment(const ProtocolConfig& config, const DeviceParams& params,
                               const DensityMatrix& rho_in,
                               const std::vector<InjectedJump>& injected) {
  Attempt attempt(config, params);
  std::vector<InjectedJump> sorted = injected;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.time < b.time; });
  return attempt.end_of_drive(attempt.segment(*attempt.snap, rho_in, 0.0, sorted, false));
}

std::map<int, double> played_snap_phases(const ProtocolConfig& config,
                                         const DeviceParams& params) {
  std::map<int, double> phases = config.snap_phases();
  if (config.snap_model != SnapModel::comb || !config.calibrate_snap_phases) return phases;
  const auto reference = snap_amplitudes(config, params, phases, SnapModel::rwa);
  for (int iteration = 0; iteration < 4; ++iteration) {
    const auto actual = snap_amplitudes(config, params, phases, SnapModel::comb);
    double worst = 0.0;
    for (int k : kDrivenFock) {
      const double offset = std::arg(actual.at(k) / reference.at(k));
      phases[k] -= offset;
      worst = std::max(worst, std::abs(offset));
    }
    if (worst < 1e-9) break;
  }
  return phases;
}

GateOutcome run_gate(const ProtocolConfig& config, const DeviceParams& params,
                     const DensityMatrix& rho_in, const RunOptions& options) {
  Attempt attempt(config, params);
  if (!(rho_in.space == attempt.space))
    throw std::invalid_argument("run_gate: input space does not match the protocol space");
  std::mt19937_64 rng(options.seed);
  GateOutcome out{{}, 0, 0.0, rho_in, true, 1.0};
  DensityMatrix rho = rho_in;
  const double elapsed = attempt.attempt_time();

  if (config.variant == Variant::NC) {
    rho = attempt.drive_and_swap(rho, options.injected);
    out.phase_correction = phase_correction_angle(config, params, Level::g);
    out.final_rho = normalized(attempt.corrected_reset(rho, Level::g, elapsed));
    return out;
  }

  for (int attempt_index = 0;; ++attempt_index) {
    const auto& injected =
        attempt_index == 0 ? options.injected : std::vector<InjectedJump>{};
    const auto reported = attempt.measure(attempt.drive_and_swap(rho, injected));
    Level pick;
    if (static_cast<std::size_t>(attempt_index) < options.forced_outcomes.size()) {
      pick = options.forced_outcomes[attempt_index];
      if (reported.at(pick).trace().real() < 1e-15)
        throw NumericalError(std::string("forced readout result '") + level_name(pick) +
                             "' has zero probability");
    } else {
      const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      double acc = 0.0;
      pick = Level::f;
      double total = 0.0;
      for (Level l : kReadoutLevels) total += reported.at(l).trace().real();
      for (Level l : kReadoutLevels) {
        acc += reported.at(l).trace().real() / total;
        if (u < acc) {
          pick = l;
          break;
        }
      }
    }
    const DensityMatrix& branch = reported.at(pick);
    out.record_probability *= branch.trace().real();
    out.measured_levels.push_back(pick);
    out.phase_correction = phase_correction_angle(config, params, pick);
    rho = normalized(attempt.corrected_reset(normalized(branch), pick, elapsed));
    out.repeats_used = attempt_index;
    if (pick != Level::f || attempt_index >= config.max_repeats) break;
  }
  out.final_rho = rho;
  out.success = out.measured_levels.back() != Level::f;
  return out;
}

std::map<Level, ConditionedState> run_gate_conditioned(const ProtocolConfig& config,
                                                       const DeviceParams& params,
                                                       const DensityMatrix& rho_in,
                                                       const std::vector<InjectedJump>& injected) {
  Attempt attempt(config, params);
  const auto reported = attempt.measure(attempt.drive_and_swap(rho_in, injected));
  const double elapsed = attempt.t_snap() + config.swap_duration + config.measurement_duration;
  double total = 0.0;
  for (const auto& [l, m] : reported) total += m.trace().real();
  std::map<Level, ConditionedState> out;
  for (const auto& [l, m] : reported) {
    const double p = m.trace().real() / total;
    const double phi = phase_correction_angle(config, params, l);
    Mat cav = Mat::Zero(attempt.space.cavity_dim(), attempt.space.cavity_dim());
    if (p > 1e-15) {
      const DensityMatrix fixed = attempt.corrected_reset(normalized(m), l, elapsed);
      cav = trace_ancilla(attempt.space, fixed.matrix);
    }
    out.emplace(l, ConditionedState{p, cav, phi});
  }
  return out;
}

AveragedGate run_gate_average(const ProtocolConfig& config, const DeviceParams& params,
                              const DensityMatrix& rho_in) {
  Attempt attempt(config, params);
  const double elapsed = attempt.attempt_time();
  if (config.variant == Variant::NC) {
    const DensityMatrix rho = attempt.drive_and_swap(rho_in, {});
    return {normalized(attempt.corrected_reset(rho, Level::g, elapsed)), 1.0, 1.0};
  }
  const int d = attempt.space.dim();
  Mat acc = Mat::Zero(d, d);
  double success = 0.0;
  double attempts = 0.0;
  DensityMatrix pending = rho_in;  // unnormalized weight carried in the trace
  for (int index = 0; index <= config.max_repeats; ++index) {
    const double weight = pending.trace().real();
    if (weight < 1e-14) break;
    attempts += weight;
    auto reported = attempt.measure(attempt.drive_and_swap(normalized(pending), {}));
    for (Level l : {Level::g, Level::e}) {
      const DensityMatrix fixed = attempt.corrected_reset(reported.at(l), l, elapsed);
      acc += weight * fixed.matrix;
      success += weight * fixed.trace().real();
    }
    DensityMatrix repeat = attempt.corrected_reset(reported.at(Level::f), Level::f, elapsed);
    repeat.matrix *= weight;
    if (index == config.max_repeats) acc += repeat.matrix;
    pending = repeat;
  }
  return {normalized(DensityMatrix(attempt.space, acc)), success, attempts};
}

LogicalChannel gate_channel(const ProtocolConfig& config, const DeviceParams& params) {
  const TensorSpace space(config.cavity_dim, 3);
  const LogicalBasis basis = LogicalBasis::kitten(config.cavity_dim);
  const Eigen::MatrixXcd v = basis.isometry();
  double success = 0.0;
  int runs = 0;
  auto runner = [&](const Mat2& logical_in) -> Mat2 {
    const Mat cav = v * logical_in * v.adjoint();
    Mat ground = Mat::Zero(3, 3);
    ground(0, 0) = 1.0;
    const AveragedGate g = run_gate_average(config, params, DensityMatrix(space, kron(cav, ground)));
    success += g.success_probability;
    ++runs;
    return logical_block(trace_ancilla(space, g.rho.matrix));
  };
  LogicalChannel ch = channel_tomography(runner);
  ch.success_probability = success / runs;
  return ch;
}

nlohmann::json to_json(const GateOutcome& outcome) {
  nlohmann::json j;
  std::string levels;
  for (Level l : outcome.measured_levels) levels.push_back(level_name(l));
  j["measured_levels"] = levels;
  j["repeats_used"] = outcome.repeats_used;
  j["phase_correction_rad"] = outcome.phase_correction;
  j["success"] = outcome.success;
  j["record_probability"] = outcome.record_probability;
  const Decoded d = decode(outcome.final_rho);
  j["logical_bloch"] = {d.bloch.x(), d.bloch.y(), d.bloch.z()};
  j["leakage"] = d.leakage;
  j["purity"] = outcome.final_rho.purity();
  return j;
}

}  // namespace ftsnap
