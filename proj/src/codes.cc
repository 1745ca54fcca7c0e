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

#include "ftsnap/codes.h"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <Eigen/Eigenvalues>

namespace ftsnap {

LogicalBasis LogicalBasis::kitten(int cavity_dim) {
  if (cavity_dim < 5) throw std::invalid_argument("kitten code needs cavity_dim >= 5");
  LogicalBasis b{Vec::Zero(cavity_dim), Vec::Zero(cavity_dim)};
  b.zero_L(0) = b.zero_L(4) = 1.0 / std::sqrt(2.0);
  b.one_L(2) = 1.0;
  return b;
}

Eigen::MatrixXcd LogicalBasis::isometry() const {
  Eigen::MatrixXcd v(cavity_dim(), 2);
  v.col(0) = zero_L;
  v.col(1) = one_L;
  return v;
}

Vec encode_cavity(int cavity_dim, const Bloch& bloch) {
  if (std::abs(bloch.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("Bloch vector must have unit norm");
  const double polar = std::acos(std::clamp(bloch.z(), -1.0, 1.0));
  const double azimuth = std::atan2(bloch.y(), bloch.x());
  const LogicalBasis basis = LogicalBasis::kitten(cavity_dim);
  return std::cos(polar / 2) * basis.zero_L +
         std::polar(std::sin(polar / 2), azimuth) * basis.one_L;
}

StateVector encode(const TensorSpace& space, const Bloch& bloch, Level ancilla) {
  return StateVector::product(space, encode_cavity(space.cavity_dim(), bloch), ancilla);
}

Mat2 logical_block(const Mat& rho_cavity) {
  const auto v = LogicalBasis::kitten(static_cast<int>(rho_cavity.rows())).isometry();
  return v.adjoint() * rho_cavity * v;
}

Decoded decode_cavity(const Mat& rho_cavity) {
  const Mat2 block = logical_block(rho_cavity);
  const double inside = block.trace().real();
  const double total = rho_cavity.trace().real();
  Decoded d{Bloch::Zero(), std::max(0.0, total - inside)};
  if (inside > 1e-15) {
    d.bloch = Bloch(2.0 * block(1, 0).real(), 2.0 * block(1, 0).imag(),
                    (block(0, 0) - block(1, 1)).real()) /
              inside;
  }
  return d;
}

Decoded decode(const DensityMatrix& rho) {
  return decode_cavity(trace_ancilla(rho.space, rho.matrix));
}

Decoded decode(const StateVector& psi) { return decode(DensityMatrix::from_state(psi)); }

Mat logical_s_theta_cavity(int cavity_dim, double theta) {
  Mat s = Mat::Identity(cavity_dim, cavity_dim);
  s(2, 2) = std::polar(1.0, theta);
  return s;
}

Op logical_s_theta(const TensorSpace& space, double theta) {
  return tensor_embed(space, logical_s_theta_cavity(space.cavity_dim(), theta), Mat(),
                      "S(theta)");
}

Mat2 logical_s_theta_2x2(double theta) {
  Mat2 s = Mat2::Identity();
  s(1, 1) = std::polar(1.0, theta);
  return s;
}

namespace {

// <m|D(β)|n> in closed form (generalized Laguerre polynomials).
cplx displacement_element(int m, int n, cplx beta) {
  const double x = std::norm(beta);
  const double gauss = std::exp(-x / 2);
  if (m >= n) {
    const double ratio = std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0)));
    return ratio * std::pow(beta, m - n) * gauss * std::assoc_laguerre(n, m - n, x);
  }
  const double ratio = std::exp(0.5 * (std::lgamma(m + 1.0) - std::lgamma(n + 1.0)));
  return ratio * std::pow(-std::conj(beta), n - m) * gauss * std::assoc_laguerre(m, n - m, x);
}

}  // namespace

WignerGrid wigner(const Mat& rho_cavity, const std::vector<double>& re_axis,
                  const std::vector<double>& im_axis, Diagnostics* diags) {
  const int dim = static_cast<int>(rho_cavity.rows());
  if (rho_cavity.cols() != dim) throw std::invalid_argument("wigner: density matrix not square");
  const double top = std::abs(rho_cavity(dim - 1, dim - 1));
  if (top > 1e-6)
    emit(diags, "truncation",
         "state has population " + std::to_string(top) + " in the highest Fock level");
  WignerGrid grid{re_axis, im_axis, Eigen::MatrixXd(re_axis.size(), im_axis.size())};
  // D(α) Π D(α)† = D(2α) Π, so W = (2/π) Σ_{m,n} (−1)^n ρ_nm <m|D(2α)|n>.
  for (std::size_t i = 0; i < re_axis.size(); ++i) {
    for (std::size_t j = 0; j < im_axis.size(); ++j) {
      const cplx beta = 2.0 * cplx(re_axis[i], im_axis[j]);
      cplx acc = 0.0;
      for (int n = 0; n < dim; ++n) {
        cplx column = 0.0;
        for (int m = 0; m < dim; ++m) column += rho_cavity(n, m) * displacement_element(m, n, beta);
        acc += (n % 2 == 0 ? 1.0 : -1.0) * column;
      }
      grid.values(i, j) = 2.0 / kPi * acc.real();
    }
  }
  return grid;
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("linspace needs at least one point");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i)
    out[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  return out;
}

void write_wigner_csv(std::ostream& out, const WignerGrid& grid) {
  out << "alpha_re,alpha_im,W\n";
  const auto old_precision = out.precision(12);
  for (std::size_t i = 0; i < grid.re_axis.size(); ++i)
    for (std::size_t j = 0; j < grid.im_axis.size(); ++j)
      out << grid.re_axis[i] << ',' << grid.im_axis[j] << ',' << grid.values(i, j) << '\n';
  out.precision(old_precision);
}

const std::array<Mat2, 4>& paulis() {
  static const std::array<Mat2, 4> p = [] {
    std::array<Mat2, 4> out;
    out[0] = Mat2::Identity();
    out[1] << 0, 1, 1, 0;
    out[2] << 0, -kI, kI, 0;
    out[3] << 1, 0, 0, -1;
    return out;
  }();
  return p;
}

LogicalChannel LogicalChannel::identity() { return {}; }

LogicalChannel LogicalChannel::from_action(const std::function<Mat2(const Mat2&)>& action) {
  LogicalChannel ch;
  const auto& p = paulis();
  for (int j = 0; j < 4; ++j) {
    const Mat2 image = action(p[j]);
    for (int i = 0; i < 4; ++i) ch.ptm(i, j) = 0.5 * (p[i] * image).trace().real();
  }
  return ch;
}

LogicalChannel LogicalChannel::unitary(const Mat2& u) {
  return from_action([&](const Mat2& x) -> Mat2 { return u * x * u.adjoint(); });
}

LogicalChannel LogicalChannel::depolarizing(double lambda) {
  if (lambda < 0.0 || lambda > 4.0 / 3.0)
    throw std::invalid_argument("depolarizing parameter outside [0, 4/3]");
  LogicalChannel ch;
  ch.ptm.diagonal() << 1.0, 1.0 - lambda, 1.0 - lambda, 1.0 - lambda;
  return ch;
}

Mat2 LogicalChannel::apply(const Mat2& rho) const {
  const auto& p = paulis();
  Eigen::Vector4d r;
  for (int j = 0; j < 4; ++j) r(j) = 0.5 * (p[j] * rho).trace().real();
  const Eigen::Vector4d out = ptm * r;
  Mat2 result = Mat2::Zero();
  for (int i = 0; i < 4; ++i) result += out(i) * p[i];
  return result;
}

LogicalChannel LogicalChannel::after(const LogicalChannel& first) const {
  LogicalChannel ch;
  ch.ptm = ptm * first.ptm;
  ch.success_probability = success_probability * first.success_probability;
  return ch;
}

Eigen::Matrix4cd LogicalChannel::choi() const {
  const auto& p = paulis();
  Eigen::Matrix4cd c = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (ptm(i, j) != 0.0) c += ptm(i, j) * kron(p[j].transpose(), p[i]);
  return c / 4.0;
}

double LogicalChannel::min_choi_eigenvalue() const {
  const Eigen::Matrix4cd c = choi();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(0.5 * (c + c.adjoint()));
  return solver.eigenvalues().minCoeff();
}

bool LogicalChannel::is_trace_preserving(double tol) const {
  return std::abs(ptm(0, 0) - 1.0) < tol && ptm.row(0).tail<3>().cwiseAbs().maxCoeff() < tol;
}

double LogicalChannel::process_fidelity(const Mat2& target) const {
  return (unitary(target).ptm.transpose() * ptm).trace() / 4.0;
}

double LogicalChannel::average_gate_fidelity(const Mat2& target) const {
  return (2.0 * process_fidelity(target) + 1.0) / 3.0;
}

double LogicalChannel::error(const Mat2& target) const {
  return 2.0 * (1.0 - average_gate_fidelity(target));
}

LogicalChannel channel_tomography(const std::function<Mat2(const Mat2&)>& runner,
                                  double cp_floor) {
  const auto complete = [&](const Mat2& input) {
    Mat2 out = runner(input);
    const double deficit = 1.0 - out.trace().real();
    out += 0.5 * deficit * Mat2::Identity();
    return out;
  };
  Mat2 zero, one, plus, plus_i;
  zero << 1, 0, 0, 0;
  one << 0, 0, 0, 1;
  plus << 0.5, 0.5, 0.5, 0.5;
  plus_i << 0.5, -0.5 * kI, 0.5 * kI, 0.5;
  const Mat2 e0 = complete(zero);
  const Mat2 e1 = complete(one);
  const Mat2 ep = complete(plus);
  const Mat2 ei = complete(plus_i);
  const std::array<Mat2, 4> images = {e0 + e1, 2.0 * ep - e0 - e1, 2.0 * ei - e0 - e1, e0 - e1};
  LogicalChannel ch;
  const auto& p = paulis();
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) ch.ptm(i, j) = 0.5 * (p[i] * images[j]).trace().real();
  const double min_eig = ch.min_choi_eigenvalue();
  if (min_eig < cp_floor)
    throw NumericalError("reconstructed channel is not completely positive (Choi eigenvalue " +
                         std::to_string(min_eig) + ")");
  return ch;
}

}  // namespace ftsnap
