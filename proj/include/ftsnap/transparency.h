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

#ifndef FTSNAP_TRANSPARENCY_H_
#define FTSNAP_TRANSPARENCY_H_

#include <string>
#include <vector>

#include "ftsnap/device.h"
#include "ftsnap/hilbert.h"

namespace ftsnap {

enum class TransparencyClass { zero, transparent, violation };

std::string transparency_class_name(TransparencyClass c);

struct TransparencyReport {
  std::string jump;
  TransparencyClass classification;
  /// Diagonal H_A with [H0, J] = J H_A on the support of J (zero when the
  /// commutator vanishes).
  Op h_a;
  /// ‖J H_A − [H0, J]‖_F / ‖[H0, J]‖_F (0 when the commutator vanishes).
  double residual;
  double commutator_norm;
};

/// Classifies each jump against the static Hamiltonian. H_A is restricted
/// to diagonal operators, which commute with a diagonal H0.
std::vector<TransparencyReport> check_error_transparency(const Op& h0,
                                                         const std::vector<JumpOp>& jumps,
                                                         double tolerance = 1e-9);
TransparencyReport check_error_transparency(const Op& h0, const Op& jump, const std::string& name,
                                            double tolerance = 1e-9);

}  // namespace ftsnap

#endif  // FTSNAP_TRANSPARENCY_H_
