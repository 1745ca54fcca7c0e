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

#ifndef FTSNAP_CONFIG_H_
#define FTSNAP_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ftsnap/budget.h"
#include "ftsnap/codes.h"
#include "ftsnap/device.h"
#include "ftsnap/protocol.h"
#include "ftsnap/rb.h"
#include "ftsnap/sweep.h"

namespace ftsnap {

struct SimulateSettings {
  /// Logical input state as a Bloch vector.
  Bloch input = Bloch(1, 0, 0);
};

struct WignerSettings {
  Bloch input = Bloch(1, 0, 0);
  /// Apply the configured gate (ensemble average) before evaluating W.
  bool apply_gate = false;
  double extent = 2.5;
  int points = 41;
};

enum class Interleave { none, gate, depolarizing };

struct RBSettings {
  std::vector<int> lengths = {1, 4, 8, 16, 24, 32, 48, 64};
  int n_sequences = 50;
  RBOptions options;
  /// The reference run is always performed; this picks the interleaved one.
  Interleave interleave = Interleave::gate;
  double depolarizing_p = 0.05;
};

struct SweepSettings {
  std::vector<SweepAxis> axes = {SweepAxis::relaxation, SweepAxis::dephasing};
  /// Injected rates in 1/s, ascending.
  std::vector<double> rates = {0.0, 0.1e6, 0.25e6, 0.5e6};
  int threads = 0;
};

struct CheckSettings {
  /// Transition-graph files, relative to the config file.
  std::vector<std::string> graphs;
  bool transparency = true;
  int cavity_dim = 6;
};

struct RunConfig {
  std::uint64_t seed = 1;
  DeviceParams device;
  ProtocolConfig protocol;
  SimulateSettings simulate;
  WignerSettings wigner;
  RBSettings rb;
  SweepSettings sweep;
  BudgetSettings budget;
  CheckSettings check;
  /// Directory of the config file; relative paths resolve against it.
  std::string base_dir = ".";

  void validate() const;
  std::string resolve_path(const std::string& path) const;
};

/// Reads a YAML run config. Every physical quantity needs a unit suffix.
/// Unknown keys and bad values raise ValidationError with the line number.
RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const std::string& text, const std::string& base_dir = ".");

/// Canonical YAML that parse_run_config reads back to the same values.
std::string to_yaml(const RunConfig& config);

}  // namespace ftsnap

#endif  // FTSNAP_CONFIG_H_
