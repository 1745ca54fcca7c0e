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
#include <random>

#include <gtest/gtest.h>

#include "ftsnap/codes.h"
#include "ftsnap/dynamics.h"

namespace ftsnap {
namespace {

EvolutionSpec cavity_decay(const TensorSpace& s, double kappa, double t) {
  return EvolutionSpec{Op::zero(s), {{annihilation(s), kappa, JumpKind::cavity_loss, "loss"}}, t};
}

TEST(Lindblad, CavityDecayIsExponential) {
  TensorSpace s(5, 3);
  const double kappa = 2e5, t = 7e-6;
  const DensityMatrix out = evolve_lindblad(
      cavity_decay(s, kappa, t), DensityMatrix::from_state(StateVector::basis(s, 1, Level::g)));
  EXPECT_NEAR(out.matrix(s.index(1, Level::g), s.index(1, Level::g)).real(), std::exp(-kappa * t),
              1e-7);
  EXPECT_NEAR(out.trace().real(), 1.0, 1e-10);
  EXPECT_TRUE(out.is_valid());
}

TEST(Lindblad, StaticUnitaryMatchesExpm) {
  TensorSpace s(5, 3);
  DeviceParams p;
  const Op h = build_h0(p, s) + build_h_int_effective(
                                    DriveParams::for_envelope(PulseEnvelope::constant(1e-6, 1.0),
                                                              {{2, 0.4}}),
                                    s);
  const double t = 0.9e-6;
  const StateVector psi = encode(s, Bloch(0.6, 0.0, 0.8));
  const DensityMatrix out = evolve_lindblad(EvolutionSpec{h, {}, t, 1e-10},
                                            DensityMatrix::from_state(psi));
  const Vec oracle = expm(-kI * t * h.matrix) * psi.amplitudes;
  EXPECT_LT((out.matrix - oracle * oracle.adjoint()).norm(), 1e-8);
}

TEST(Schrodinger, TimeDependentAgreesWithLindbladWithoutJumps) {
  TensorSpace s(5, 3);
  DeviceParams p;
  const PulseEnvelope env = PulseEnvelope::gaussian(1.5e-6, 250e-9, kPi / 2);
  const DriveParams drive = DriveParams::for_envelope(env, {{2, kPi / 2}});
  Hamiltonian h(s, build_h_snap_timedependent(p, drive, s, SnapModel::comb),
                4 * std::abs(p.chi_f));
  EvolutionSpec spec{h, {}, env.duration, 1e-10};
  const StateVector psi = encode(s, Bloch(1, 0, 0));
  const StateVector a = evolve_schrodinger(spec, psi, 0.0, env.duration);
  const DensityMatrix b = evolve_lindblad(spec, DensityMatrix::from_state(psi));
  EXPECT_LT((b.matrix - a.amplitudes * a.amplitudes.adjoint()).norm(), 1e-7);
  EXPECT_NEAR(a.norm(), 1.0, 1e-9);
}

TEST(Trajectories, AverageConvergesToLindblad) {
  TensorSpace s(5, 3);
  const double kappa = 3e5, t = 4e-6;
  const EvolutionSpec spec = cavity_decay(s, kappa, t);
  const int count = 4000;
  const auto records = evolve_trajectories(spec, StateVector::basis(s, 1, Level::g), count, 99);
  const DensityMatrix avg = average_trajectories(records);
  const double p = std::exp(-kappa * t);
  const double sigma = std::sqrt(p * (1 - p) / count);
  EXPECT_NEAR(avg.matrix(s.index(1, Level::g), s.index(1, Level::g)).real(), p, 4 * sigma);
  for (const auto& r : records)
    for (const auto& j : r.jumps) {
      EXPECT_GE(j.time, 0.0);
      EXPECT_LE(j.time, t);
      EXPECT_EQ(j.label, "loss");
    }
}

TEST(Trajectories, SeedDeterminesRecordIndependentOfThreads) {
  TensorSpace s(5, 3);
  const EvolutionSpec spec = cavity_decay(s, 5e5, 3e-6);
  const StateVector psi = StateVector::basis(s, 2, Level::g);
  const auto a = evolve_trajectories(spec, psi, 24, 7, 1);
  const auto b = evolve_trajectories(spec, psi, 24, 7, 5);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(to_json_line(a[i]), to_json_line(b[i]));
  EXPECT_EQ(to_json_line(evolve_trajectory(spec, psi, 42)),
            to_json_line(evolve_trajectory(spec, psi, 42)));
}

TEST(InjectJump, AnnihilatingJumpThrows) {
  TensorSpace s(5, 3);
  const EvolutionSpec spec = cavity_decay(s, 1e5, 1e-6);
  EXPECT_THROW(inject_jump(spec, StateVector::basis(s, 0, Level::g), annihilation(s), 0.5e-6),
               NumericalError);
  const StateVector out =
      inject_jump(spec, StateVector::basis(s, 2, Level::g), std::string("loss"), 0.5e-6);
  EXPECT_NEAR(std::abs(out.amplitudes(s.index(1, Level::g))), 1.0, 1e-12);
}

TEST(AnalyticPropagator, MatchesExponentialOfEffectiveHamiltonian) {
  TensorSpace s(12, 3);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(-kPi, kPi), area(0.0, 3.0);
  for (int draw = 0; draw < 10; ++draw) {
    const std::map<int, double> theta = {{0, angle(rng)}, {2, angle(rng)}, {4, angle(rng)}};
    const double a = area(rng);
    DriveParams unit;
    unit.omega = 1.0;
    unit.theta_phases = theta;
    const Mat oracle = expm(-kI * a * build_h_int_effective(unit, s).matrix);
    EXPECT_LT(operator_norm(analytic_propagator(theta, a, s).matrix - oracle), 1e-9);
  }
}

TEST(EvolutionSpec, ToleranceRangeIsEnforced) {
  TensorSpace s(5, 3);
  EvolutionSpec spec{Op::zero(s), {}, 1e-6, 1e-3};
  EXPECT_THROW(spec.validate(), ValidationError);
  spec.tolerance = 1e-8;
  spec.t_final = -1.0;
  EXPECT_THROW(spec.validate(), ValidationError);
}

TEST(DeriveSeed, DistinctAndStable) {
  EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
  EXPECT_NE(derive_seed(1, 2), derive_seed(1, 3));
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 2));
}

}  // namespace
}  // namespace ftsnap
