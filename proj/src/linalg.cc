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

#include "ftsnap/linalg.h"

#include <cmath>

namespace ftsnap {
namespace {

// Padé coefficients for degrees 3, 5, 7, 9, 13.
constexpr double kB3[] = {120., 60., 12., 1.};
constexpr double kB5[] = {30240., 15120., 3360., 420., 30., 1.};
constexpr double kB7[] = {17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.};
constexpr double kB9[] = {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                          2162160.,     110880.,     3960.,       90.,       1.};
constexpr double kB13[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                           1187353796428800.,  129060195264000.,   10559470521600.,
                           670442572800.,      33522128640.,       1323241920.,
                           40840800.,          960960.,            16380.,
                           182.,               1.};

// Largest 1-norm for which the degree-m approximant is accurate to unit
// roundoff without scaling.
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

double one_norm(const Mat& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

template <int N>
void pade_low(const Mat& a, const double (&b)[N], Mat& u, Mat& v) {
  const Eigen::Index n = a.rows();
  const Mat ident = Mat::Identity(n, n);
  const Mat a2 = a * a;
  Mat power = ident;
  Mat odd = Mat::Zero(n, n);
  Mat even = Mat::Zero(n, n);
  for (int k = 0; 2 * k < N; ++k) {
    even += b[2 * k] * power;
    if (2 * k + 1 < N) odd += b[2 * k + 1] * power;
    power = power * a2;
  }
  u = a * odd;
  v = even;
}

void pade13(const Mat& a, Mat& u, Mat& v) {
  const Eigen::Index n = a.rows();
  const Mat ident = Mat::Identity(n, n);
  const Mat a2 = a * a;
  const Mat a4 = a2 * a2;
  const Mat a6 = a4 * a2;
  const auto& b = kB13;
  const Mat inner_u = b[13] * a6 + b[11] * a4 + b[9] * a2;
  u = a * (a6 * inner_u + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
  const Mat inner_v = b[12] * a6 + b[10] * a4 + b[8] * a2;
  v = a6 * inner_v + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
}

}  // namespace

Mat expm(const Mat& a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return a;
  const double norm = one_norm(a);
  Mat u, v;
  int squarings = 0;
  if (norm <= kTheta3) {
    pade_low(a, kB3, u, v);
  } else if (norm <= kTheta5) {
    pade_low(a, kB5, u, v);
  } else if (norm <= kTheta7) {
    pade_low(a, kB7, u, v);
  } else if (norm <= kTheta9) {
    pade_low(a, kB9, u, v);
  } else {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
    const Mat scaled = a / std::ldexp(1.0, squarings);
    pade13(scaled, u, v);
  }
  Mat result = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

double operator_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

double trace_distance(const Mat& a, const Mat& b) {
  const Mat diff = 0.5 * ((a - b) + (a - b).adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(diff, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace ftsnap
