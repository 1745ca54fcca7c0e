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

#include "ftsnap/units.h"

#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "ftsnap/diagnostics.h"
#include "ftsnap/linalg.h"

namespace ftsnap {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

const std::map<std::string, double>& unit_table(Dimension dim) {
  static const std::map<std::string, double> freq = {
      {"rad/s", 1.0},         {"Hz", kTwoPi},         {"kHz", kTwoPi * 1e3},
      {"MHz", kTwoPi * 1e6}, {"GHz", kTwoPi * 1e9}};
  static const std::map<std::string, double> time = {
      {"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}};
  static const std::map<std::string, double> rate = {
      {"/s", 1.0},   {"1/s", 1.0},   {"/ms", 1e3}, {"1/ms", 1e3},
      {"/us", 1e6},  {"1/us", 1e6},  {"/ns", 1e9}, {"1/ns", 1e9}};
  static const std::map<std::string, double> angle = {
      {"rad", 1.0}, {"deg", kPi / 180.0}, {"pi", kPi}};
  static const std::map<std::string, double> none = {{"", 1.0}};
  switch (dim) {
    case Dimension::angular_frequency:
      return freq;
    case Dimension::time:
      return time;
    case Dimension::rate:
      return rate;
    case Dimension::angle:
      return angle;
    case Dimension::dimensionless:
      return none;
  }
  return none;
}

double parse_number(const std::string& text, const std::string& field) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty())
    throw ValidationError(field + ": malformed number '" + text + "'");
  return value;
}

}  // namespace

std::string dimension_name(Dimension dim) {
  switch (dim) {
    case Dimension::angular_frequency:
      return "frequency";
    case Dimension::time:
      return "time";
    case Dimension::rate:
      return "rate";
    case Dimension::angle:
      return "angle";
    case Dimension::dimensionless:
      return "dimensionless";
  }
  return "unknown";
}

double parse_quantity(const std::string& raw, Dimension dim, const std::string& field) {
  const std::string text = trim(raw);
  // The number is the longest numeric prefix, so "2.2kHz" and "2.2 kHz" agree.
  std::size_t split = text.find_first_of(" \t");
  if (text.rfind("inf", 0) != 0) {
    double ignored = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), ignored);
    if (ec == std::errc()) split = static_cast<std::size_t>(ptr - text.data());
  } else {
    split = 3;
  }
  const std::string number = split >= text.size() ? text : text.substr(0, split);
  const std::string unit = split >= text.size() ? "" : trim(text.substr(split));
  const auto& table = unit_table(dim);
  const bool infinite = number == "inf";
  if (unit.empty() && !(infinite && dim == Dimension::time) && dim != Dimension::dimensionless)
    throw ValidationError(field + ": missing " + dimension_name(dim) + " unit in '" + text + "'");
  if (infinite && dim != Dimension::time)
    throw ValidationError(field + ": 'inf' is only allowed for times");
  const double value = parse_number(number, field);
  if (unit.empty()) return value;
  const auto it = table.find(unit);
  if (it == table.end())
    throw ValidationError(field + ": unknown " + dimension_name(dim) + " unit '" + unit + "'");
  return value * it->second;
}

std::string format_quantity(double value, Dimension dim) {
  if (dim == Dimension::time && std::isinf(value)) return "inf";
  struct Form {
    double scale;
    const char* readable;
    const char* base;
  };
  Form form{1.0, "", ""};
  switch (dim) {
    case Dimension::angular_frequency:
      form = {kTwoPi * 1e6, "MHz", "rad/s"};
      break;
    case Dimension::time:
      form = {1e-6, "us", "s"};
      break;
    case Dimension::rate:
      form = {1e6, "/us", "/s"};
      break;
    case Dimension::angle:
      form = {1.0, "rad", "rad"};
      break;
    case Dimension::dimensionless:
      break;
  }
  auto render = [&](double shown, const char* unit) {
    std::ostringstream out;
    out.precision(17);
    out << shown;
    if (*unit) out << " " << unit;
    return out.str();
  };
  // Readable units unless the rescaling would not read back bit-exactly.
  const std::string readable = render(value / form.scale, form.readable);
  if (dim == Dimension::dimensionless || parse_quantity(readable, dim, "") == value)
    return readable;
  return render(value, form.base);
}

}  // namespace ftsnap
