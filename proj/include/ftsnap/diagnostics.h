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

#ifndef FTSNAP_DIAGNOSTICS_H_
#define FTSNAP_DIAGNOSTICS_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace ftsnap {

/// Non-fatal structured warning, e.g. a truncation or approximation-quality
/// notice. Collected by callers that care; ignored otherwise.
struct Diagnostic {
  std::string code;
  std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

inline void emit(Diagnostics* diags, std::string code, std::string message) {
  if (diags != nullptr) diags->push_back({std::move(code), std::move(message)});
}

/// Bad user input: configs, parameters, malformed files.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The numerics could not deliver the requested accuracy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ftsnap

#endif  // FTSNAP_DIAGNOSTICS_H_
