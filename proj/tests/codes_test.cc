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

namespace ftsnap {
namespace {

Bloch random_bloch(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Bloch b(n(rng), n(rng), n(rng));
  return b.normalized();
}

TEST(Kitten, CodeWordsAndRoundTrip) {
  const Vec zero = encode_cavity(6, Bloch(0, 0, 1));
  EXPECT_NEAR(std::abs(zero(0)), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(std::abs(zero(4)), std::sqrt(0.5), 1e-15);
  const Vec one = encode_cavity(6, Bloch(0, 0, -1));
  EXPECT_NEAR(std::abs(one(2)), 1.0, 1e-15);

  std::mt19937_64 rng(3);
  TensorSpace s(6, 3);
  for (int i = 0; i < 20; ++i) {
    const Bloch b = random_bloch(rng);
    const Decoded d = decode(encode(s, b));
    EXPECT_LT((d.bloch - b).norm(), 1e-12);
    EXPECT_NEAR(d.leakage, 0.0, 1e-14);
  }
  EXPECT_THROW(encode_cavity(6, Bloch(0.5, 0, 0)), std::invalid_argument);
}

TEST(Kitten, LeakageReportsOutOfCodePopulation) {
  Mat rho = Mat::Zero(6, 6);
  rho(1, 1) = 0.25;
  const Vec plus = encode_cavity(6, Bloch(1, 0, 0));
  rho += 0.75 * plus * plus.adjoint();
  const Decoded d = decode_cavity(rho);
  EXPECT_NEAR(d.leakage, 0.25, 1e-14);
  EXPECT_LT((d.bloch - Bloch(1, 0, 0)).norm(), 1e-12);
}

TEST(LogicalS, RotatesEquatorByTheta) {
  TensorSpace s(6, 3);
  const double theta = 0.7;
  const StateVector out = apply(logical_s_theta(s, theta), encode(s, Bloch(1, 0, 0)));
  const Decoded d = decode(out);
  EXPECT_LT((d.bloch - Bloch(std::cos(theta), std::sin(theta), 0)).norm(), 1e-12);
}

TEST(Wigner, VacuumAndFockOneAtOrigin) {
  const std::vector<double> zero{0.0};
  Mat vac = Mat::Zero(4, 4);
  vac(0, 0) = 1.0;
  EXPECT_NEAR(wigner(vac, zero, zero).values(0, 0), 2.0 / kPi, 1e-12);
  Mat one = Mat::Zero(4, 4);
  one(1, 1) = 1.0;
  EXPECT_NEAR(wigner(one, zero, zero).values(0, 0), -2.0 / kPi, 1e-12);
}

TEST(Wigner, CoherentStateIsDisplacedGaussian) {
  const int dim = 30;
  const cplx beta(0.9, -0.4);
  const Vec psi = cavity_displacement(dim, beta).col(0);
  const Mat rho = psi * psi.adjoint();
  const auto axis = linspace(-2.0, 2.0, 9);
  const WignerGrid grid = wigner(rho, axis, axis);
  for (std::size_t i = 0; i < axis.size(); ++i)
    for (std::size_t j = 0; j < axis.size(); ++j) {
      const cplx alpha(axis[i], axis[j]);
      EXPECT_NEAR(grid.values(i, j), 2.0 / kPi * std::exp(-2.0 * std::norm(alpha - beta)), 1e-9);
    }
}

TEST(Wigner, PlusXLogicalStateHasPositiveCenter) {
  const Vec psi = encode_cavity(8, Bloch(1, 0, 0));
  const auto axis = linspace(-2.5, 2.5, 51);
  const WignerGrid grid = wigner(psi * psi.adjoint(), axis, axis);
  EXPECT_GT(grid.values(25, 25), 0.0);
  EXPECT_NEAR(grid.values.maxCoeff(), 2.0 / kPi, 0.1);
  EXPECT_LE(grid.values.maxCoeff(), 2.0 / kPi + 1e-12);
  EXPECT_GE(grid.values.minCoeff(), -2.0 / kPi - 1e-12);
}

TEST(Wigner, TopLevelPopulationWarns) {
  Mat rho = Mat::Zero(3, 3);
  rho(2, 2) = 1.0;
  Diagnostics diags;
  wigner(rho, {0.0}, {0.0}, &diags);
  ASSERT_FALSE(diags.empty());
  EXPECT_EQ(diags.front().code, "truncation");
}

TEST(Channel, DepolarizingErrorEqualsLambda) {
  for (double lambda : {0.0, 0.01, 0.2}) {
    const LogicalChannel c = LogicalChannel::depolarizing(lambda);
    EXPECT_NEAR(c.error(Mat2::Identity()), lambda, 1e-14);
    EXPECT_TRUE(c.is_trace_preserving());
    EXPECT_GE(c.min_choi_eigenvalue(), -1e-14);
  }
}

TEST(Channel, TomographyRecoversUnitary) {
  const Mat2 u = logical_s_theta_2x2(kPi / 2);
  const LogicalChannel direct = LogicalChannel::unitary(u);
  const LogicalChannel tomo =
      channel_tomography([&](const Mat2& rho) { return Mat2(u * rho * u.adjoint()); });
  EXPECT_LT((tomo.ptm - direct.ptm).norm(), 1e-13);
  EXPECT_NEAR(tomo.process_fidelity(u), 1.0, 1e-13);
  EXPECT_NEAR(tomo.average_gate_fidelity(u), 1.0, 1e-13);
  EXPECT_NEAR(tomo.process_fidelity(Mat2::Identity()), 0.5, 1e-13);
}

TEST(Channel, LeakageIsCompletedWithMaximallyMixedState) {
  // Half of every input leaks out of the code space.
  const LogicalChannel c = channel_tomography([](const Mat2& rho) { return Mat2(0.5 * rho); });
  EXPECT_TRUE(c.is_trace_preserving());
  EXPECT_LT((c.ptm - LogicalChannel::depolarizing(0.5).ptm).norm(), 1e-13);
}

TEST(Channel, TransposeMapIsRejected) {
  EXPECT_THROW(channel_tomography([](const Mat2& rho) { return Mat2(rho.transpose()); }),
               NumericalError);
}

TEST(Channel, CompositionOrder) {
  const Mat2 s = logical_s_theta_2x2(kPi / 2);
  Mat2 h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  const LogicalChannel sh = LogicalChannel::unitary(s).after(LogicalChannel::unitary(h));
  EXPECT_LT((sh.ptm - LogicalChannel::unitary(s * h).ptm).norm(), 1e-13);
}

}  // namespace
}  // namespace ftsnap
