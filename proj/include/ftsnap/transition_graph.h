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

#ifndef FTSNAP_TRANSITION_GRAPH_H_
#define FTSNAP_TRANSITION_GRAPH_H_

#include <string>
#include <vector>

#include "ftsnap/codes.h"

namespace ftsnap {

enum class EdgeKind { drive, jump };

std::string edge_kind_name(EdgeKind kind);

/// Transition from one ancilla node to another, with the logical operator it
/// applies to the code (or error) subsystem.
struct GraphEdge {
  std::string from;
  std::string to;
  Mat2 action;
  EdgeKind kind = EdgeKind::jump;
  std::string label;
};

struct TransitionGraph {
  std::string name;
  /// Node labels, e.g. "g" or "g/odd" for a parity sector.
  std::vector<std::string> nodes;
  std::string start;
  std::vector<GraphEdge> edges;

  /// Unknown nodes, non-unitary actions (1e-10) and drive edges without an
  /// inverse partner raise ValidationError.
  void validate() const;

  /// YAML graph file. Actions: identity, s_theta, s_theta_inv, pauli_x,
  /// pauli_y, pauli_z, or a 2x2 `matrix` of [re, im] pairs. `theta` sets the
  /// angle used by s_theta unless `theta_override` is given.
  static TransitionGraph load(const std::string& path, const double* theta_override = nullptr);
  static TransitionGraph parse(const std::string& text, const double* theta_override = nullptr);
};

struct LoopViolation {
  /// Closed walk, first node repeated at the end.
  std::vector<std::string> loop;
  /// Composed action around the loop, based at its first node.
  Mat2 net_action;
  /// ‖net − phase·I‖ after removing the best global phase.
  double deviation;
};

struct PathIndependenceReport {
  bool pass = true;
  int basis_loops = 0;
  std::vector<LoopViolation> violations;
};

/// Checks every loop of a spanning-tree cycle basis rooted at `graph.start`
/// against the identity up to global phase. Throws ValidationError if a node
/// is unreachable from the start node.
PathIndependenceReport check_path_independence(const TransitionGraph& graph,
                                               double tolerance = 1e-9);

/// Distance of a unitary from the nearest phase times identity.
double distance_from_identity(const Mat2& u);

}  // namespace ftsnap

#endif  // FTSNAP_TRANSITION_GRAPH_H_
