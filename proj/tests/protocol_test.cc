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

#include <cmath>

#include <gtest/gtest.h>

#include "ftsnap/protocol.h"

namespace ftsnap {
namespace {

ProtocolConfig clean_config(Variant v) {
  ProtocolConfig c;
  c.variant = v;
  c.et_drive_on = v == Variant::C;
  c.snap_envelope = PulseEnvelope::gaussian(2.4e-6, 375e-9, kPi / 2);
  c.measurement_duration = 2e-6;
  c.snap_model = SnapModel::rwa;
  c.et_hybridization = false;
  c.sideband_delta = kTwoPi * -3e6;
  c.tolerance = 1e-10;
  return c;
}

double logical_fidelity(const Mat& cavity_rho, const Bloch& expected) {
  const Vec psi = encode_cavity(static_cast<int>(cavity_rho.rows()), expected);
  return (psi.adjoint() * cavity_rho * psi)(0, 0).real();
}

TEST(Protocol, NoiselessGateIsExact) {
  const DeviceParams p = DeviceParams::noiseless();
  for (Variant v : {Variant::NC, Variant::C}) {
    const LogicalChannel c = gate_channel(clean_config(v), p);
    EXPECT_LT(c.error(logical_s_theta_2x2(kPi / 2)), 1e-6) << variant_name(v);
    EXPECT_NEAR(c.success_probability, 1.0, 1e-6);
  }
}

TEST(Protocol, PhaseCorrectionAngles) {
  DeviceParams p;
  ProtocolConfig c = clean_config(Variant::C);
  const double t = c.snap_duration(), tau = c.swap_duration, tm = c.measurement_duration;
  EXPECT_DOUBLE_EQ(phase_correction_angle(c, p, Level::g), p.chi_f * (t + tau / 2));
  EXPECT_DOUBLE_EQ(phase_correction_angle(c, p, Level::f), p.chi_f * (tau / 2 + tm));
  EXPECT_DOUBLE_EQ(phase_correction_angle(c, p, Level::e), p.chi_f * t + p.chi_e * (tau + tm));
  c.variant = Variant::NC;
  EXPECT_DOUBLE_EQ(phase_correction_angle(c, p, Level::f), p.chi_f * tau / 2);
}

TEST(Protocol, GfSwapIsInvolution) {
  TensorSpace s(5, 3);
  const Op swap = gf_swap(s);
  EXPECT_LT((swap.matrix * swap.matrix - Mat::Identity(s.dim(), s.dim())).norm(), 1e-15);
  EXPECT_NEAR(std::abs(swap.matrix(s.index(3, Level::g), s.index(3, Level::f))), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(swap.matrix(s.index(3, Level::e), s.index(3, Level::e))), 1.0, 1e-15);
}

TEST(Protocol, SidebandResolution) {
  DeviceParams p;
  ProtocolConfig c;
  const double mismatch = p.chi_f - p.chi_e;
  auto sb = resolve_sideband(c, p);
  EXPECT_NEAR(sb.g, kTwoPi * 3e6, 1e-6);
  EXPECT_NEAR(sb.g * sb.g / sb.delta, mismatch, 1e-6);

  c.sideband_delta = kTwoPi * -3e6;
  sb = resolve_sideband(c, p);
  EXPECT_NEAR(sb.g * sb.g / sb.delta, mismatch, 1e-6);
  EXPECT_NEAR(sb.g / kTwoPi, 0.948683e6, 1.0);

  c.sideband_g = kTwoPi * 2e6;
  sb = resolve_sideband(c, p);
  EXPECT_DOUBLE_EQ(sb.g, kTwoPi * 2e6);
  EXPECT_DOUBLE_EQ(sb.delta, kTwoPi * -3e6);

  c.sideband_g.reset();
  c.sideband_delta = kTwoPi * 3e6;
  EXPECT_THROW(resolve_sideband(c, p), ValidationError);
}

TEST(Protocol, ValidationRejectsBadConfusion) {
  ProtocolConfig c;
  c.confusion(0, 1) = 0.1;
  EXPECT_THROW(c.validate(), ValidationError);
  c = ProtocolConfig{};
  c.readout_dephasing = 1.5;
  EXPECT_THROW(c.validate(), ValidationError);
}

TEST(Protocol, RelaxationWithTransparencyDriveKeepsLogicalState) {
  const DeviceParams p = DeviceParams::noiseless();
  const ProtocolConfig c = clean_config(Variant::C);
  TensorSpace s(c.cavity_dim, 3);
  const Bloch in(1, 0, 0);
  const DensityMatrix rho = DensityMatrix::from_state(encode(s, in));
  const Op relax = ancilla_transition(s, Level::f, Level::e);
  for (double t : {0.8e-6, 1.2e-6, 1.9e-6}) {
    const auto out = run_gate_conditioned(c, p, rho, {{relax, t}});
    ASSERT_GT(out.at(Level::e).probability, 1.0 - 1e-9);
    EXPECT_GT(logical_fidelity(out.at(Level::e).cavity_rho, Bloch(0, 1, 0)), 1.0 - 1e-6)
        << "t=" << t;
  }
}

TEST(Protocol, RelaxationWithoutTransparencyDriveDependsOnJumpTime) {
  const DeviceParams p = DeviceParams::noiseless();
  ProtocolConfig c = clean_config(Variant::C);
  c.et_drive_on = false;
  TensorSpace s(c.cavity_dim, 3);
  const DensityMatrix rho = DensityMatrix::from_state(encode(s, Bloch(1, 0, 0)));
  const Op relax = ancilla_transition(s, Level::f, Level::e);
  const auto a = run_gate_conditioned(c, p, rho, {{relax, 0.8e-6}});
  const auto b = run_gate_conditioned(c, p, rho, {{relax, 1.9e-6}});
  const Mat& ra = a.at(Level::e).cavity_rho;
  const Mat& rb = b.at(Level::e).cavity_rho;
  EXPECT_LT((ra * rb).trace().real(), 0.99);
}

TEST(Protocol, SampledRunIsDeterministicPerSeed) {
  DeviceParams p;
  const ProtocolConfig c = clean_config(Variant::C);
  TensorSpace s(c.cavity_dim, 3);
  const DensityMatrix rho = DensityMatrix::from_state(encode(s, Bloch(0, 0, 1)));
  RunOptions o;
  o.seed = 17;
  const GateOutcome a = run_gate(c, p, rho, o);
  const GateOutcome b = run_gate(c, p, rho, o);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  EXPECT_NEAR(a.final_rho.trace().real(), 1.0, 1e-9);
  EXPECT_LE(a.repeats_used, c.max_repeats);
}

TEST(Protocol, AveragedGateIsNormalized) {
  DeviceParams p;
  const ProtocolConfig c = clean_config(Variant::C);
  TensorSpace s(c.cavity_dim, 3);
  const DensityMatrix rho = DensityMatrix::from_state(encode(s, Bloch(1, 0, 0)));
  const AveragedGate avg = run_gate_average(c, p, rho);
  EXPECT_NEAR(avg.rho.trace().real(), 1.0, 1e-9);
  EXPECT_TRUE(avg.rho.is_valid(-1e-8));
  EXPECT_GE(avg.mean_attempts, 1.0);
  EXPECT_LE(avg.success_probability, 1.0 + 1e-12);
  EXPECT_GT(avg.success_probability, 0.9);
}

TEST(Protocol, CorrectedVariantBeatsUncorrectedWithNativeNoise) {
  DeviceParams p;
  const Mat2 target = logical_s_theta_2x2(kPi / 2);
  const double nc = gate_channel(clean_config(Variant::NC), p).error(target);
  const double c = gate_channel(clean_config(Variant::C), p).error(target);
  EXPECT_LT(c, nc);
}

}  // namespace
}  // namespace ftsnap
