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

#ifndef FTSNAP_BUDGET_H_
#define FTSNAP_BUDGET_H_

#include <string>
#include <vector>

#include "json.hpp"

#include "ftsnap/device.h"
#include "ftsnap/protocol.h"

namespace ftsnap {

/// Probability of reaching this node with the logical qubit intact
/// (`p_coherent`) or dephased (`p_dephased`).
struct ErrorBudgetNode {
  std::string label;
  double p_coherent = 0.0;
  double p_dephased = 0.0;
  std::vector<ErrorBudgetNode> children;

  double total() const { return p_coherent + p_dephased; }
};

struct BudgetSettings {
  /// Share of detected f->e relaxation and g-f dephasing events whose
  /// no-jump back-action still dephases the logical qubit.
  double backaction_fraction = 0.1;
};

struct ErrorBudget {
  Variant variant;
  /// Root (probability 1) followed by up to four layers: errors during
  /// SNAP and swap, second-order ancilla transitions, readout relaxation,
  /// state-independent readout errors.
  ErrorBudgetNode root;
  int layers = 0;
  /// Sum of p_dephased over the last layer.
  double total_error = 0.0;
  /// No-error probability of the first layer: the fidelity when every error
  /// path dephases.
  double nc_fidelity = 1.0;
};

/// Analytic error tree from Poisson jump probabilities per segment.
/// Second-order terms are products of first-order ones. Zero-probability
/// branches are omitted. The NC variant stops after the first layer.
ErrorBudget build_error_budget(const DeviceParams& params, const ProtocolConfig& config,
                               const BudgetSettings& settings = {});

/// Nodes of the given depth (0 = root), left to right.
std::vector<const ErrorBudgetNode*> budget_layer(const ErrorBudget& budget, int depth);

nlohmann::json to_json(const ErrorBudgetNode& node);
nlohmann::json to_json(const ErrorBudget& budget);

}  // namespace ftsnap

#endif  // FTSNAP_BUDGET_H_
