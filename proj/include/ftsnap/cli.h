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

#ifndef FTSNAP_CLI_H_
#define FTSNAP_CLI_H_

#include <ostream>
#include <string>

#include "ftsnap/config.h"

namespace ftsnap {

enum class OutputFormat { csv, json };

struct CommandContext {
  RunConfig config;
  /// Output directory, created on demand.
  std::string out_dir = ".";
  OutputFormat format = OutputFormat::csv;
  /// Human-readable summary.
  std::ostream* log = nullptr;
};

std::string version();

/// Each command writes one or more files into `out_dir` and returns the path
/// of the main one.
std::string cmd_simulate_gate(const CommandContext& ctx);
std::string cmd_wigner(const CommandContext& ctx);
std::string cmd_rb(const CommandContext& ctx);
std::string cmd_sweep(const CommandContext& ctx);
std::string cmd_check(const CommandContext& ctx);
std::string cmd_budget(const CommandContext& ctx);

/// Parses arguments and dispatches. Returns 0 on success, 2 on validation
/// errors (bad flags, config or values), 3 on numerical failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ftsnap

#endif  // FTSNAP_CLI_H_
