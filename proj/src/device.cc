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

#include "ftsnap/device.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ftsnap {
namespace {

double rate_of(double time) { return std::isinf(time) ? 0.0 : 1.0 / time; }

void require_positive_time(double t, const char* name) {
  if (!(t > 0.0)) throw ValidationError(std::string(name) + " must be > 0");
}

void require_nonnegative(double x, const char* name) {
  if (!(x >= 0.0) || std::isnan(x)) throw ValidationError(std::string(name) + " must be >= 0");
}

}  // namespace

DeviceParams DeviceParams::noiseless() {
  DeviceParams p;
  p.t1_ge = p.t1_ef = p.tphi_ge = p.tphi_gf = p.t1_cavity = kNever;
  p.nbar_thermal = 0.0;
  return p;
}

void DeviceParams::validate() const {
  require_positive_time(t1_ge, "t1_ge");
  require_positive_time(t1_ef, "t1_ef");
  require_positive_time(tphi_ge, "tphi_ge");
  require_positive_time(tphi_gf, "tphi_gf");
  require_positive_time(t1_cavity, "t1_cavity");
  require_nonnegative(nbar_thermal, "nbar_thermal");
  require_nonnegative(injected_dephasing_rate, "injected_dephasing_rate");
  require_nonnegative(injected_ef_noise_rate, "injected_ef_noise_rate");
}

PulseEnvelope PulseEnvelope::constant(double duration, double area) {
  PulseEnvelope env;
  env.shape = EnvelopeShape::constant;
  env.duration = duration;
  env.area = area;
  env.validate();
  return env;
}

PulseEnvelope PulseEnvelope::gaussian(double duration, double sigma, double area) {
  PulseEnvelope env;
  env.shape = EnvelopeShape::gaussian;
  env.duration = duration;
  env.sigma = sigma;
  env.area = area;
  env.validate();
  return env;
}

double PulseEnvelope::shape_at(double t) const {
  if (t < 0.0 || t > duration) return 0.0;
  if (shape == EnvelopeShape::constant) return 1.0;
  const double x = (t - 0.5 * duration) / sigma;
  return std::exp(-0.5 * x * x);
}

double PulseEnvelope::shape_integral() const {
  if (shape == EnvelopeShape::constant) return duration;
  return sigma * std::sqrt(2.0 * kPi) * std::erf(duration / (2.0 * std::sqrt(2.0) * sigma));
}

double PulseEnvelope::integrated_area(double t) const {
  t = std::clamp(t, 0.0, duration);
  if (shape == EnvelopeShape::constant) return area * t / duration;
  const double s2 = std::sqrt(2.0) * sigma;
  const double half = std::erf(duration / (2.0 * s2));
  const double partial = std::erf((t - 0.5 * duration) / s2) + half;
  return area * partial / (2.0 * half);
}

void PulseEnvelope::validate() const {
  require_positive_time(duration, "envelope duration");
  if (shape == EnvelopeShape::gaussian) {
    require_positive_time(sigma, "envelope sigma");
    if (duration < 4.0 * sigma * (1.0 - 1e-12))
      throw ValidationError("gaussian envelope duration must be >= 4 sigma");
  }
}

DriveParams DriveParams::for_envelope(const PulseEnvelope& envelope,
                                      std::map<int, double> thetas) {
  envelope.validate();
  DriveParams d;
  d.envelope = envelope;
  d.omega = envelope.peak_rate();
  d.theta_phases = std::move(thetas);
  d.validate();
  return d;
}

double DriveParams::theta(int photons) const {
  auto it = theta_phases.find(photons);
  return it == theta_phases.end() ? 0.0 : it->second;
}

double DriveParams::rwa_ratio(const DeviceParams& params) const {
  return omega / (2.0 * std::abs(params.chi_f));
}

void DriveParams::validate() const {
  for (const auto& [k, theta] : theta_phases) {
    if (k != 0 && k != 2 && k != 4) {
      std::ostringstream msg;
      msg << "SNAP phase on photon number " << k << " rejected; only 0, 2, 4 are driven";
      throw ValidationError(msg.str());
    }
    (void)theta;
  }
  require_nonnegative(omega, "omega");
}

std::string jump_kind_name(JumpKind kind) {
  switch (kind) {
    case JumpKind::cavity_loss: return "cavity_loss";
    case JumpKind::ancilla_relax_ef: return "ancilla_relax_ef";
    case JumpKind::ancilla_relax_ge: return "ancilla_relax_ge";
    case JumpKind::dephasing: return "dephasing";
    case JumpKind::thermal_excite: return "thermal_excite";
    case JumpKind::injected_dephasing: return "injected_dephasing";
    case JumpKind::injected_ef_up: return "injected_ef_up";
    case JumpKind::injected_ef_down: return "injected_ef_down";
    case JumpKind::et_hybrid_decay: return "et_hybrid_decay";
  }
  return "unknown";
}

Op build_h0(const DeviceParams& params, const TensorSpace& space) {
  if (space.ancilla_dim() < 3) throw std::invalid_argument("build_h0 needs ancilla_dim >= 3");
  const int nc = space.cavity_dim();
  Mat anc = Mat::Zero(space.ancilla_dim(), space.ancilla_dim());
  anc(1, 1) = params.chi_e;
  anc(2, 2) = params.chi_f;
  Op h0 = tensor_embed(space, cavity_number(nc), anc, "H0");
  if (params.kerr_enabled && params.kerr_K != 0.0) {
    Mat kerr = Mat::Zero(nc, nc);
    for (int n = 0; n < nc; ++n) kerr(n, n) = 0.5 * params.kerr_K * n * (n - 1);
    h0 += tensor_embed(space, kerr, Mat());
  }
  return h0;
}

Mat snap_phase_matrix(const DriveParams& drive, int cavity_dim, double sign) {
  drive.validate();
  Mat s = Mat::Zero(cavity_dim, cavity_dim);
  for (int k : kDrivenFock)
    if (k < cavity_dim) s(k, k) = std::polar(1.0, sign * drive.theta(k));
  return s;
}

Op driven_subspace_projector(const TensorSpace& space) {
  Mat cav = Mat::Zero(space.cavity_dim(), space.cavity_dim());
  for (int k : kDrivenFock) cav(k, k) = 1.0;
  Mat anc = Mat::Zero(space.ancilla_dim(), space.ancilla_dim());
  anc(0, 0) = 1.0;
  anc(2, 2) = 1.0;
  return tensor_embed(space, cav, anc, "P");
}

Op build_h_int_effective(const DriveParams& drive, const TensorSpace& space) {
  if (space.ancilla_dim() < 3) throw std::invalid_argument("SNAP needs ancilla_dim >= 3");
  const Mat s_plus = snap_phase_matrix(drive, space.cavity_dim(), +1.0);
  const Mat s_minus = snap_phase_matrix(drive, space.cavity_dim(), -1.0);
  Mat fg = Mat::Zero(space.ancilla_dim(), space.ancilla_dim());
  fg(2, 0) = 1.0;
  const Op up = tensor_embed(space, s_plus, fg);
  const Op down = tensor_embed(space, s_minus, fg.adjoint());
  Op h = cplx(drive.omega) * (up + down);
  h.label = "H_int";
  return h;
}

TimeDependentHamiltonian build_h_snap_timedependent(const DeviceParams& params,
                                                    const DriveParams& drive,
                                                    const TensorSpace& space, SnapModel model) {
  drive.validate();
  drive.envelope.validate();
  const Mat h0 = build_h0(params, space).matrix;
  const int na = space.ancilla_dim();
  const int nc = space.cavity_dim();
  const int ig = static_cast<int>(Level::g);
  const int iff = static_cast<int>(Level::f);
  const double chi_f = params.chi_f;
  std::vector<double> thetas;
  for (int k : kDrivenFock) thetas.push_back(drive.theta(k));
  // Envelope rate scaled so that peak equals drive.omega.
  const PulseEnvelope env = drive.envelope;
  const double scale = env.peak_rate() > 0.0 ? drive.omega / env.peak_rate() : 0.0;
  return [=](double t) -> Mat {
    Mat h = h0;
    const double rate = scale * env.rate(t);
    if (rate == 0.0) return h;
    if (model == SnapModel::comb) {
      cplx c = 0.0;
      for (std::size_t i = 0; i < thetas.size(); ++i)
        c += std::polar(1.0, thetas[i] - kDrivenFock[i] * chi_f * t);
      c *= rate;
      for (int n = 0; n < nc; ++n) {
        h(n * na + iff, n * na + ig) += c;
        h(n * na + ig, n * na + iff) += std::conj(c);
      }
    } else {
      for (std::size_t i = 0; i < thetas.size(); ++i) {
        const int n = kDrivenFock[i];
        if (n >= nc) continue;
        const cplx c = rate * std::polar(1.0, thetas[i] - n * chi_f * t);
        h(n * na + iff, n * na + ig) += c;
        h(n * na + ig, n * na + iff) += std::conj(c);
      }
    }
    return h;
  };
}

RamanResult build_raman_params(double omega_ge, double omega_ef, double delta,
                               Diagnostics* diags) {
  if (delta == 0.0) throw ValidationError("Raman detuning must be nonzero");
  const double strongest = std::max(std::abs(omega_ge), std::abs(omega_ef));
  if (strongest > 0.0 && std::abs(delta) / strongest < 5.0) {
    std::ostringstream msg;
    msg << "Raman detuning is only " << std::abs(delta) / strongest
        << "x the strongest drive; adiabatic elimination of |e> is poor";
    emit(diags, "raman_ratio", msg.str());
  }
  return {omega_ge * omega_ef / delta, omega_ge * omega_ef / (delta * delta)};
}

TransparencyShift build_error_transparency_shift(double g, double delta, Diagnostics* diags) {
  if (g == 0.0) return {0.0, 0.0};
  if (delta == 0.0) throw ValidationError("sideband detuning must be nonzero when g != 0");
  if (std::abs(g / delta) > 0.5) {
    std::ostringstream msg;
    msg << "sideband g/|delta| = " << std::abs(g / delta)
        << " exceeds 0.5; dispersive elimination of |h> is poor";
    emit(diags, "sideband_ratio", msg.str());
  }
  return {g * g / delta, g * g / (delta * delta)};
}

double matching_sideband_detuning(double g, const DeviceParams& params) {
  const double diff = params.chi_f - params.chi_e;
  if (diff == 0.0) throw ValidationError("chi_e already equals chi_f; no sideband needed");
  return g * g / diff;
}

DeviceParams with_transparency_shift(const DeviceParams& params, const TransparencyShift& shift) {
  DeviceParams out = params;
  out.chi_e += shift.shift;
  return out;
}

std::pair<Op, Op> build_hybridization_kraus(double g, double delta, const TensorSpace& space) {
  if (delta == 0.0) throw std::invalid_argument("sideband detuning must be nonzero");
  if (space.ancilla_dim() < 3) throw std::invalid_argument("hybridization needs ancilla_dim >= 3");
  Mat k0 = Mat::Identity(space.dim(), space.dim());
  Mat k1 = Mat::Zero(space.dim(), space.dim());
  for (int n = 0; n < space.cavity_dim(); ++n) {
    const double mixed = 0.5 * (1.0 - std::abs(delta) / std::hypot(delta, 2.0 * g * std::sqrt(n)));
    const int e = space.index(n, Level::e);
    k0(e, e) = std::sqrt(1.0 - mixed);
    if (n > 0) k1(space.index(n - 1, Level::f), e) = std::sqrt(mixed);
  }
  return {Op(space, k0, "hybrid_keep"), Op(space, k1, "hybrid_leak")};
}

std::vector<JumpOp> build_jump_ops(const DeviceParams& params, const TensorSpace& space,
                                   const JumpOptions& options) {
  params.validate();
  std::vector<JumpOp> ops;
  auto add = [&](Op op, double rate, JumpKind kind, std::string name) {
    if (rate > 0.0) ops.push_back({std::move(op), rate, kind, std::move(name)});
  };
  const bool three_level = space.ancilla_dim() >= 3;

  add(annihilation(space), rate_of(params.t1_cavity), JumpKind::cavity_loss, "cavity_loss");
  add(ancilla_transition(space, Level::e, Level::g), rate_of(params.t1_ge),
      JumpKind::ancilla_relax_ge, "ancilla_relax_ge");
  if (three_level)
    add(ancilla_transition(space, Level::f, Level::e), rate_of(params.t1_ef),
        JumpKind::ancilla_relax_ef, "ancilla_relax_ef");

  const double ge_rate = rate_of(params.tphi_ge);
  const double gf_rate = rate_of(params.tphi_gf);
  if (params.dephasing_model == DephasingModel::number || !three_level) {
    // b†b at rate γ decays the n-m coherence at γ(n−m)²/2.
    add(ancilla_number(space), 2.0 * ge_rate, JumpKind::dephasing, "dephasing_ge");
    if (three_level) {
      const double top_up = gf_rate - 4.0 * ge_rate;
      if (top_up < 0.0)
        throw ValidationError("tphi_gf exceeds tphi_ge/4; number-operator dephasing cannot "
                              "reproduce both Ramsey times");
      add(ancilla_projector(space, Level::f), 2.0 * top_up, JumpKind::dephasing,
          "dephasing_gf");
    }
  } else {
    add(ancilla_projector(space, Level::e), 2.0 * ge_rate, JumpKind::dephasing, "dephasing_ge");
    add(ancilla_projector(space, Level::f), 2.0 * gf_rate, JumpKind::dephasing, "dephasing_gf");
  }

  add(ancilla_transition(space, Level::g, Level::e),
      params.nbar_thermal * rate_of(params.t1_ge), JumpKind::thermal_excite, "thermal_excite");

  if (options.include_injected && three_level) {
    const double inj = params.injected_dephasing_rate;
    if (params.dephasing_model == DephasingModel::number)
      add(ancilla_number(space), 0.5 * inj, JumpKind::injected_dephasing, "injected_dephasing");
    else
      add(ancilla_projector(space, Level::f), 2.0 * inj, JumpKind::injected_dephasing,
          "injected_dephasing");
    add(ancilla_transition(space, Level::f, Level::e), params.injected_ef_noise_rate,
        JumpKind::injected_ef_down, "injected_ef_down");
    add(ancilla_transition(space, Level::e, Level::f), params.injected_ef_noise_rate,
        JumpKind::injected_ef_up, "injected_ef_up");
  }

  if (options.et_on && options.et_leakage > 0.0 && three_level) {
    // The |h,n-1> admixture of |e,n> decays to |f,n-1> at roughly 3/T1_ge.
    const Op op = annihilation(space) * ancilla_transition(space, Level::e, Level::f);
    add(op, options.et_leakage * 3.0 * rate_of(params.t1_ge), JumpKind::et_hybrid_decay,
        "et_hybrid_decay");
  }
  return ops;
}

}  // namespace ftsnap
