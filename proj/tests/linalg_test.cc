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

#include <random>

#include <gtest/gtest.h>

#include "ftsnap/linalg.h"

namespace ftsnap {
namespace {

Mat random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cplx(n(rng), n(rng));
  return 0.5 * (a + a.adjoint());
}

TEST(Expm, MatchesSpectralExponentialOfHermitian) {
  std::mt19937_64 rng(11);
  for (double scale : {1e-3, 0.7, 5.0, 60.0}) {
    const Mat h = scale * random_hermitian(12, rng);
    Eigen::SelfAdjointEigenSolver<Mat> eig(h);
    const Vec phases = (-kI * eig.eigenvalues().cast<cplx>()).array().exp();
    const Mat oracle = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
    EXPECT_LT(operator_norm(expm(-kI * h) - oracle), 1e-11) << "scale " << scale;
  }
}

TEST(Expm, NilpotentIsExactTaylor) {
  Mat n = Mat::Zero(3, 3);
  n(0, 1) = 1.0;
  n(1, 2) = 1.0;
  Mat expected = Mat::Identity(3, 3) + n;
  expected(0, 2) = 0.5;
  EXPECT_LT((expm(n) - expected).norm(), 1e-14);
}

TEST(Expm, LargeDiagonalKeepsRelativeAccuracy) {
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 30.0;
  d(1, 1) = -30.0;
  const Mat e = expm(d);
  EXPECT_NEAR(e(0, 0).real() / std::exp(30.0), 1.0, 1e-13);
  EXPECT_NEAR(e(1, 1).real() / std::exp(-30.0), 1.0, 1e-13);
}

TEST(Expm, ExpOfZeroIsIdentity) {
  EXPECT_EQ(expm(Mat::Zero(4, 4)), Mat::Identity(4, 4));
}

TEST(Linalg, KronAndNorms) {
  Mat x(2, 2);
  x << 0, 1, 1, 0;
  const Mat k = kron(x, Mat::Identity(3, 3));
  EXPECT_EQ(k.rows(), 6);
  EXPECT_EQ(k(0, 3), cplx(1.0));
  EXPECT_NEAR(operator_norm(k), 1.0, 1e-14);

  Mat p0 = Mat::Zero(2, 2), p1 = Mat::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  EXPECT_NEAR(trace_distance(p0, p1), 1.0, 1e-14);
  EXPECT_NEAR(trace_distance(p0, p0), 0.0, 1e-14);
}

}  // namespace
}  // namespace ftsnap
