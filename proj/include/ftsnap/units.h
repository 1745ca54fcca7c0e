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

#ifndef FTSNAP_UNITS_H_
#define FTSNAP_UNITS_H_

#include <string>

namespace ftsnap {

enum class Dimension {
  /// "MHz", "kHz", "Hz", "GHz", read as f = ω/2π; stored as ω. "rad/s" is
  /// taken as ω directly.
  angular_frequency,
  /// "s", "ms", "us", "ns"; "inf" disables a process.
  time,
  /// "/s", "1/ms", "/us", "1/ns"; stored in 1/s.
  rate,
  /// "rad", "deg", or multiples of "pi".
  angle,
  dimensionless,
};

std::string dimension_name(Dimension dim);

/// Parses "<number> <unit>" (the space is optional). Throws ValidationError naming `field` on a
/// missing or unknown unit or a malformed number.
double parse_quantity(const std::string& text, Dimension dim, const std::string& field);

/// Canonical text that parse_quantity maps back to the same double: MHz, us,
/// /us or rad when that reads back exactly, SI units otherwise.
std::string format_quantity(double value, Dimension dim);

}  // namespace ftsnap

#endif  // FTSNAP_UNITS_H_
