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

#include "ftsnap/budget.h"

#include <cmath>
#include <functional>

namespace ftsnap {
namespace {

/// Mean photon number of both kitten code words.
constexpr double kCodePhotons = 2.0;

struct Branch {
  std::string label;
  double probability;
  /// Share of the branch that dephases the logical qubit.
  double dephasing;
  Level readout_level;
};

double poisson(double integrated_rate) { return 1.0 - std::exp(-integrated_rate); }

/// Children of `parent`, with a closing branch that keeps the remainder.
void attach(ErrorBudgetNode& parent, const std::vector<Branch>& branches, const std::string& rest) {
  double used = 0.0;
  for (const auto& b : branches) {
    if (b.probability <= 0.0) continue;
    used += b.probability;
    ErrorBudgetNode child;
    child.label = b.label;
    child.p_coherent = b.probability * (1.0 - b.dephasing) * parent.p_coherent;
    child.p_dephased = b.probability * (parent.p_dephased + b.dephasing * parent.p_coherent);
    parent.children.push_back(std::move(child));
  }
  if (used > 1.0) throw NumericalError("error budget: branch probabilities exceed 1");
  ErrorBudgetNode keep;
  keep.label = rest;
  keep.p_coherent = (1.0 - used) * parent.p_coherent;
  keep.p_dephased = (1.0 - used) * parent.p_dephased;
  parent.children.insert(parent.children.begin(), std::move(keep));
}

void collect(const ErrorBudgetNode& node, int depth, int target,
             std::vector<const ErrorBudgetNode*>& out) {
  if (depth == target) {
    out.push_back(&node);
    return;
  }
  for (const auto& c : node.children) collect(c, depth + 1, target, out);
}

}  // namespace

ErrorBudget build_error_budget(const DeviceParams& params, const ProtocolConfig& config,
                               const BudgetSettings& settings) {
  params.validate();
  config.validate();
  if (settings.backaction_fraction < 0.0 || settings.backaction_fraction > 1.0)
    throw ValidationError("backaction_fraction must lie in [0, 1]");
  const bool corrected = config.variant == Variant::C;
  const double t_snap = config.snap_duration();
  const double half_swap = config.swap_duration / 2.0;
  const double t_window = t_snap + config.swap_duration;

  // Simpson quadrature of the drive populations over the SNAP pulse.
  const int steps = 4000;
  const double h = t_snap / steps;
  double in_f = 0.0, in_g = 0.0, coherence = 0.0, dwell_after_f = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double t = i * h;
    const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double area = config.snap_envelope.integrated_area(t);
    const double pf = std::sin(area) * std::sin(area);
    in_f += w * pf;
    in_g += w * (1.0 - pf);
    coherence += w * std::sin(2.0 * area) * std::sin(2.0 * area);
    dwell_after_f += w * pf * (t_window - t);
  }
  in_f *= h / 3.0;
  in_g *= h / 3.0;
  coherence *= h / 3.0;
  dwell_after_f *= h / 3.0;
  // The ancilla sits in f for the first half of the swap window.
  in_f += half_swap;
  dwell_after_f += half_swap * (config.swap_duration - half_swap / 2.0);

  const double gamma_ef = 1.0 / params.t1_ef + params.injected_ef_noise_rate;
  const double gamma_ge = 1.0 / params.t1_ge;
  const double gamma_gf = 1.0 / params.tphi_gf + params.injected_dephasing_rate;
  const double loss_rate = kCodePhotons / params.t1_cavity;
  const double thermal_rate = params.nbar_thermal / params.t1_ge;
  const double backaction = corrected ? settings.backaction_fraction : 1.0;

  ErrorBudget budget;
  budget.variant = config.variant;
  budget.root = {"start", 1.0, 0.0, {}};

  const std::vector<Branch> snap_errors = {
      {"ef relaxation", poisson(gamma_ef * in_f), backaction, Level::e},
      {"gf dephasing", poisson(0.5 * gamma_gf * coherence), backaction, Level::g},
      {"cavity loss", poisson(loss_rate * t_window), 1.0, Level::g},
      {"thermal excitation", poisson(thermal_rate * (in_g + half_swap)), 1.0, Level::e},
  };
  attach(budget.root, snap_errors, "no error");
  budget.layers = 1;
  budget.nc_fidelity = 1.0;
  for (const auto& b : snap_errors) budget.nc_fidelity -= b.probability;

  if (corrected) {
    // Ancilla level seen by the readout, keyed by first-layer label.
    std::function<Level(const std::string&)> level_of = [&](const std::string& label) {
      for (const auto& b : snap_errors)
        if (b.label == label) return b.readout_level;
      return Level::g;
    };
    double mixing = 0.0;
    if (config.et_drive_on && config.et_hybridization) {
      const SidebandDrive sb = resolve_sideband(config, params);
      auto mixed = [&](int n) {
        return 0.5 * (1.0 - std::abs(sb.delta) / std::hypot(sb.delta, 2.0 * sb.g * std::sqrt(n)));
      };
      // |0_L> holds n = 0, 4 with weight 1/2 each, |1_L> holds n = 2.
      mixing = 0.25 * (mixed(0) + mixed(4)) + 0.5 * mixed(2);
    }
    const double mean_dwell = in_f > 0.0 ? dwell_after_f / in_f : 0.0;
    for (auto& first : budget.root.children) {
      if (first.label == "ef relaxation") {
        attach(first,
               {{"ge relaxation", poisson(gamma_ge * mean_dwell), 1.0, Level::g},
                {"h hybridization", mixing, 1.0, Level::g}},
               "no second transition");
      } else {
        attach(first, {}, "no second transition");
      }
    }
    const double tm = config.measurement_duration;
    for (auto& first : budget.root.children) {
      for (auto& second : first.children) {
        const Level level = second.label == "no second transition" ? level_of(first.label)
                                                                    : Level::g;
        std::vector<Branch> readout = {{"readout cavity loss", poisson(loss_rate * tm), 1.0, level}};
        if (level == Level::e)
          readout.push_back({"readout ge relaxation", poisson(gamma_ge * tm), 1.0, level});
        if (level == Level::g)
          readout.push_back({"readout thermal excitation", poisson(thermal_rate * tm), 1.0, level});
        attach(second, readout, "no readout transition");
        for (auto& third : second.children) {
          const double misread = 1.0 - config.confusion(static_cast<int>(level),
                                                        static_cast<int>(level));
          attach(third,
                 {{"readout cross-Kerr", config.readout_dephasing, 1.0, level},
                  {"misassignment", misread, 1.0, level}},
                 "no readout error");
        }
      }
    }
    budget.layers = 4;
  }

  budget.total_error = 0.0;
  for (const auto* node : budget_layer(budget, budget.layers)) budget.total_error += node->p_dephased;
  return budget;
}

std::vector<const ErrorBudgetNode*> budget_layer(const ErrorBudget& budget, int depth) {
  std::vector<const ErrorBudgetNode*> out;
  collect(budget.root, 0, depth, out);
  return out;
}

nlohmann::json to_json(const ErrorBudgetNode& node) {
  nlohmann::json j = {{"label", node.label},
                      {"p_coherent", node.p_coherent},
                      {"p_dephased", node.p_dephased}};
  if (!node.children.empty()) {
    j["children"] = nlohmann::json::array();
    for (const auto& c : node.children) j["children"].push_back(to_json(c));
  }
  return j;
}

nlohmann::json to_json(const ErrorBudget& budget) {
  nlohmann::json layers = nlohmann::json::array();
  for (int d = 1; d <= budget.layers; ++d) {
    double coherent = 0.0, dephased = 0.0;
    for (const auto* n : budget_layer(budget, d)) {
      coherent += n->p_coherent;
      dephased += n->p_dephased;
    }
    layers.push_back({{"depth", d}, {"p_coherent", coherent}, {"p_dephased", dephased}});
  }
  return {{"variant", variant_name(budget.variant)},
          {"total_error", budget.total_error},
          {"nc_fidelity", budget.nc_fidelity},
          {"layer_sums", layers},
          {"tree", to_json(budget.root)}};
}

}  // namespace ftsnap
