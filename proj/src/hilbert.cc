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

#include "ftsnap/hilbert.h"

#include <cmath>
#include <sstream>

namespace ftsnap {
namespace {

void require_same_space(const TensorSpace& a, const TensorSpace& b, const char* what) {
  if (!(a == b)) throw std::invalid_argument(std::string(what) + ": space mismatch");
}

void require_level(const TensorSpace& space, Level level) {
  const int l = static_cast<int>(level);
  if (l < 0 || l >= space.ancilla_dim()) {
    std::ostringstream msg;
    msg << "ancilla level " << level_name(level) << " out of range for ancilla_dim "
        << space.ancilla_dim();
    throw std::out_of_range(msg.str());
  }
}

}  // namespace

char level_name(Level level) {
  switch (level) {
    case Level::g: return 'g';
    case Level::e: return 'e';
    case Level::f: return 'f';
    case Level::h: return 'h';
  }
  return '?';
}

Level level_from_name(char name) {
  switch (name) {
    case 'g': return Level::g;
    case 'e': return Level::e;
    case 'f': return Level::f;
    case 'h': return Level::h;
  }
  throw std::invalid_argument(std::string("unknown ancilla level '") + name + "'");
}

TensorSpace::TensorSpace(int cavity_dim, int ancilla_dim)
    : cavity_dim_(cavity_dim), ancilla_dim_(ancilla_dim) {
  if (cavity_dim < 5)
    throw std::invalid_argument("cavity_dim must be >= 5 to hold Fock 0..4");
  if (ancilla_dim < 2 || ancilla_dim > 4)
    throw std::invalid_argument("ancilla_dim must be 2, 3 or 4");
}

StateVector::StateVector(TensorSpace s, Vec amps) : space(s), amplitudes(std::move(amps)) {
  if (amplitudes.size() != space.dim())
    throw std::invalid_argument("state vector length does not match space");
}

StateVector StateVector::basis(const TensorSpace& space, int photons, Level level) {
  require_level(space, level);
  if (photons < 0 || photons >= space.cavity_dim())
    throw std::out_of_range("photon number outside truncation");
  Vec amps = Vec::Zero(space.dim());
  amps(space.index(photons, level)) = 1.0;
  return {space, amps};
}

StateVector StateVector::product(const TensorSpace& space, const Vec& cavity, Level level) {
  require_level(space, level);
  if (cavity.size() > space.cavity_dim())
    throw std::invalid_argument("cavity amplitudes exceed truncation");
  Vec amps = Vec::Zero(space.dim());
  for (Eigen::Index n = 0; n < cavity.size(); ++n)
    amps(space.index(static_cast<int>(n), level)) = cavity(n);
  return {space, amps};
}

StateVector& StateVector::normalize() {
  const double n = amplitudes.norm();
  if (n == 0.0) throw NumericalError("cannot normalize a zero vector");
  amplitudes /= n;
  return *this;
}

DensityMatrix::DensityMatrix(TensorSpace s, Mat m) : space(s), matrix(std::move(m)) {
  if (matrix.rows() != space.dim() || matrix.cols() != space.dim())
    throw std::invalid_argument("density matrix shape does not match space");
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
  return {psi.space, psi.amplitudes * psi.amplitudes.adjoint()};
}

double DensityMatrix::min_eigenvalue() const {
  const Mat herm = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool DensityMatrix::is_valid(double eigen_floor) const {
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-10) return false;
  if (std::abs(matrix.trace() - 1.0) > 1e-9) return false;
  return min_eigenvalue() >= eigen_floor;
}

Op::Op(TensorSpace s, Mat m, std::string l) : space(s), matrix(std::move(m)), label(std::move(l)) {
  if (matrix.rows() != space.dim() || matrix.cols() != space.dim())
    throw std::invalid_argument("operator shape does not match space");
}

Op Op::zero(const TensorSpace& space) {
  return {space, Mat::Zero(space.dim(), space.dim()), "0"};
}

Op Op::identity(const TensorSpace& space) {
  return {space, Mat::Identity(space.dim(), space.dim()), "I"};
}

Op& Op::operator+=(const Op& rhs) {
  require_same_space(space, rhs.space, "operator+");
  matrix += rhs.matrix;
  return *this;
}

Op& Op::operator-=(const Op& rhs) {
  require_same_space(space, rhs.space, "operator-");
  matrix -= rhs.matrix;
  return *this;
}

Op& Op::operator*=(cplx scale) {
  matrix *= scale;
  return *this;
}

Op operator+(Op lhs, const Op& rhs) { return lhs += rhs; }
Op operator-(Op lhs, const Op& rhs) { return lhs -= rhs; }

Op operator*(const Op& lhs, const Op& rhs) {
  require_same_space(lhs.space, rhs.space, "operator*");
  return {lhs.space, lhs.matrix * rhs.matrix, lhs.label + rhs.label};
}

Op operator*(cplx scale, Op op) { return op *= scale; }

Mat cavity_annihilation(int dim) {
  Mat a = Mat::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

Mat cavity_number(int dim) {
  Mat n = Mat::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

Op tensor_embed(const TensorSpace& space, const Mat& cavity_op, const Mat& ancilla_op,
                std::string label) {
  const Mat cav = cavity_op.size() == 0 ? Mat::Identity(space.cavity_dim(), space.cavity_dim())
                                        : cavity_op;
  const Mat anc = ancilla_op.size() == 0
                      ? Mat::Identity(space.ancilla_dim(), space.ancilla_dim())
                      : ancilla_op;
  if (cav.rows() != space.cavity_dim() || cav.cols() != space.cavity_dim() ||
      anc.rows() != space.ancilla_dim() || anc.cols() != space.ancilla_dim())
    throw std::invalid_argument("tensor_embed: factor dimensions do not match space");
  return {space, kron(cav, anc), std::move(label)};
}

Op annihilation(const TensorSpace& space) {
  return tensor_embed(space, cavity_annihilation(space.cavity_dim()), Mat(), "a");
}

Op creation(const TensorSpace& space) {
  return tensor_embed(space, cavity_annihilation(space.cavity_dim()).adjoint(), Mat(), "a†");
}

Op number(const TensorSpace& space) {
  return tensor_embed(space, cavity_number(space.cavity_dim()), Mat(), "a†a");
}

Op ancilla_transition(const TensorSpace& space, Level from, Level to) {
  require_level(space, from);
  require_level(space, to);
  Mat anc = Mat::Zero(space.ancilla_dim(), space.ancilla_dim());
  anc(static_cast<int>(to), static_cast<int>(from)) = 1.0;
  std::string label = std::string("|") + level_name(to) + "><" + level_name(from) + "|";
  return tensor_embed(space, Mat(), anc, std::move(label));
}

Op ancilla_projector(const TensorSpace& space, Level level) {
  return ancilla_transition(space, level, level);
}

Op ancilla_number(const TensorSpace& space) {
  return tensor_embed(space, Mat(), cavity_number(space.ancilla_dim()), "b†b");
}

Op commutator(const Op& a, const Op& b) {
  require_same_space(a.space, b.space, "commutator");
  return {a.space, a.matrix * b.matrix - b.matrix * a.matrix,
          "[" + a.label + "," + b.label + "]"};
}

Op dagger(const Op& a) {
  static const std::string kDagger = "†";
  std::string label = a.label;
  if (label.ends_with(kDagger)) {
    label.resize(label.size() - kDagger.size());
  } else if (!label.empty()) {
    label += kDagger;
  }
  return {a.space, a.matrix.adjoint(), std::move(label)};
}

cplx expectation(const StateVector& psi, const Op& a) {
  require_same_space(psi.space, a.space, "expectation");
  return psi.amplitudes.dot(a.matrix * psi.amplitudes);
}

cplx expectation(const DensityMatrix& rho, const Op& a) {
  require_same_space(rho.space, a.space, "expectation");
  return (a.matrix * rho.matrix).trace();
}

StateVector apply(const Op& a, const StateVector& psi) {
  require_same_space(psi.space, a.space, "apply");
  return {psi.space, a.matrix * psi.amplitudes};
}

Mat cavity_displacement(int dim, cplx alpha, Diagnostics* diags) {
  if (std::norm(alpha) > dim / 4.0) {
    std::ostringstream msg;
    msg << "|alpha|^2 = " << std::norm(alpha) << " exceeds cavity_dim/4 = " << dim / 4.0
        << "; displacement is distorted by truncation";
    emit(diags, "truncation", msg.str());
  }
  const Mat a = cavity_annihilation(dim);
  return expm(alpha * a.adjoint() - std::conj(alpha) * a);
}

Mat cavity_parity(int dim) {
  Mat p = Mat::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  return p;
}

Op displacement(const TensorSpace& space, cplx alpha, Diagnostics* diags) {
  return tensor_embed(space, cavity_displacement(space.cavity_dim(), alpha, diags), Mat(), "D");
}

Op parity(const TensorSpace& space) {
  return tensor_embed(space, cavity_parity(space.cavity_dim()), Mat(), "Π");
}

Mat trace_ancilla(const TensorSpace& space, const Mat& rho) {
  const int nc = space.cavity_dim();
  const int na = space.ancilla_dim();
  Mat out = Mat::Zero(nc, nc);
  for (int m = 0; m < nc; ++m)
    for (int n = 0; n < nc; ++n)
      for (int l = 0; l < na; ++l) out(m, n) += rho(m * na + l, n * na + l);
  return out;
}

Mat trace_cavity(const TensorSpace& space, const Mat& rho) {
  const int nc = space.cavity_dim();
  const int na = space.ancilla_dim();
  Mat out = Mat::Zero(na, na);
  for (int k = 0; k < nc; ++k)
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < na; ++j) out(i, j) += rho(k * na + i, k * na + j);
  return out;
}

}  // namespace ftsnap
