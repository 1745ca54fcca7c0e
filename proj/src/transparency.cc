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

#include "ftsnap/transparency.h"

namespace ftsnap {

std::string transparency_class_name(TransparencyClass c) {
  switch (c) {
    case TransparencyClass::zero:
      return "zero";
    case TransparencyClass::transparent:
      return "transparent";
    case TransparencyClass::violation:
      return "violation";
  }
  return "unknown";
}

TransparencyReport check_error_transparency(const Op& h0, const Op& jump, const std::string& name,
                                            double tolerance) {
  if (!(h0.space == jump.space))
    throw std::invalid_argument("check_error_transparency: space mismatch for " + name);
  const Mat c = commutator(h0, jump).matrix;
  const Mat& j = jump.matrix;
  const int d = h0.space.dim();
  TransparencyReport report{name, TransparencyClass::zero, Op::zero(h0.space), 0.0, c.norm()};
  report.h_a.label = "H_A";
  // Scale-aware zero test: the commutator carries units of H0.
  const double scale = std::max(1.0, h0.matrix.norm() * std::max(1.0, j.norm()));
  if (report.commutator_norm <= tolerance * scale) return report;

  Vec diag = Vec::Zero(d);
  for (int col = 0; col < d; ++col) {
    const double weight = j.col(col).squaredNorm();
    if (weight > 0.0) diag(col) = j.col(col).dot(c.col(col)) / weight;
  }
  report.h_a.matrix = diag.asDiagonal();
  report.residual = (j * report.h_a.matrix - c).norm() / report.commutator_norm;
  report.classification = report.residual <= tolerance ? TransparencyClass::transparent
                                                       : TransparencyClass::violation;
  return report;
}

std::vector<TransparencyReport> check_error_transparency(const Op& h0,
                                                         const std::vector<JumpOp>& jumps,
                                                         double tolerance) {
  std::vector<TransparencyReport> out;
  for (const auto& jump : jumps)
    out.push_back(check_error_transparency(h0, jump.op, jump.name, tolerance));
  return out;
}

}  // namespace ftsnap
