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

#ifndef FTSNAP_HILBERT_H_
#define FTSNAP_HILBERT_H_

#include <string>
#include <vector>

#include "ftsnap/diagnostics.h"
#include "ftsnap/linalg.h"

namespace ftsnap {

/// Ancilla levels. The numbering is shared by every module.
enum class Level : int { g = 0, e = 1, f = 2, h = 3 };

char level_name(Level level);
Level level_from_name(char name);

/// Truncated cavity ⊗ ancilla space. Basis index of |n, l> is
/// n * ancilla_dim + l (cavity major).
class TensorSpace {
 public:
  TensorSpace(int cavity_dim, int ancilla_dim);

  int cavity_dim() const { return cavity_dim_; }
  int ancilla_dim() const { return ancilla_dim_; }
  int dim() const { return cavity_dim_ * ancilla_dim_; }
  int index(int photons, Level level) const {
    return photons * ancilla_dim_ + static_cast<int>(level);
  }

  bool operator==(const TensorSpace&) const = default;

 private:
  int cavity_dim_;
  int ancilla_dim_;
};

struct StateVector {
  TensorSpace space;
  Vec amplitudes;

  StateVector(TensorSpace s, Vec amps);
  static StateVector basis(const TensorSpace& space, int photons, Level level);
  /// |cavity> ⊗ |level>, cavity amplitudes given on Fock 0..len-1.
  static StateVector product(const TensorSpace& space, const Vec& cavity, Level level);

  double norm() const { return amplitudes.norm(); }
  StateVector& normalize();
};

struct DensityMatrix {
  TensorSpace space;
  Mat matrix;

  DensityMatrix(TensorSpace s, Mat m);
  static DensityMatrix from_state(const StateVector& psi);

  cplx trace() const { return matrix.trace(); }
  double purity() const { return (matrix * matrix).trace().real(); }
  /// Hermitian within 1e-10, unit trace within 1e-9, eigenvalues >= floor.
  bool is_valid(double eigen_floor = -1e-9) const;
  double min_eigenvalue() const;
};

struct Op {
  TensorSpace space;
  Mat matrix;
  std::string label;

  Op(TensorSpace s, Mat m, std::string l = {});

  static Op zero(const TensorSpace& space);
  static Op identity(const TensorSpace& space);

  Op& operator+=(const Op& rhs);
  Op& operator-=(const Op& rhs);
  Op& operator*=(cplx scale);
};

Op operator+(Op lhs, const Op& rhs);
Op operator-(Op lhs, const Op& rhs);
Op operator*(const Op& lhs, const Op& rhs);
Op operator*(cplx scale, Op op);

Op annihilation(const TensorSpace& space);
Op creation(const TensorSpace& space);
Op number(const TensorSpace& space);
/// identity on the cavity ⊗ |to><from| on the ancilla.
Op ancilla_transition(const TensorSpace& space, Level from, Level to);
Op ancilla_projector(const TensorSpace& space, Level level);
/// b†b = Σ_l l |l><l| on the ancilla.
Op ancilla_number(const TensorSpace& space);

/// cavity_op ⊗ ancilla_op; either factor may be empty (identity).
Op tensor_embed(const TensorSpace& space, const Mat& cavity_op, const Mat& ancilla_op,
                std::string label = {});
Op commutator(const Op& a, const Op& b);
Op dagger(const Op& a);
cplx expectation(const StateVector& psi, const Op& a);
cplx expectation(const DensityMatrix& rho, const Op& a);
StateVector apply(const Op& a, const StateVector& psi);

/// Cavity-factor ladder matrices on a bare Fock space of dimension `dim`.
Mat cavity_annihilation(int dim);
Mat cavity_number(int dim);

/// D(α) = exp(α a† − α* a) on a bare Fock space, via the Padé exponential.
/// Emits a "truncation" diagnostic when |α|² > dim / 4.
Mat cavity_displacement(int dim, cplx alpha, Diagnostics* diags = nullptr);
/// exp(iπ a†a) on a bare Fock space.
Mat cavity_parity(int dim);

Op displacement(const TensorSpace& space, cplx alpha, Diagnostics* diags = nullptr);
Op parity(const TensorSpace& space);

/// Partial trace over the ancilla factor.
Mat trace_ancilla(const TensorSpace& space, const Mat& rho);
/// Reduced ancilla density matrix.
Mat trace_cavity(const TensorSpace& space, const Mat& rho);

}  // namespace ftsnap

#endif  // FTSNAP_HILBERT_H_
