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

#ifndef FTSNAP_SWEEP_H_
#define FTSNAP_SWEEP_H_

#include <ostream>
#include <string>
#include <vector>

#include "ftsnap/device.h"
#include "ftsnap/protocol.h"

namespace ftsnap {

enum class SweepAxis { relaxation, dephasing };

std::string sweep_axis_name(SweepAxis axis);
SweepAxis sweep_axis_from_name(const std::string& name);

/// Device with `rate` of injected noise on `axis`: symmetric e<->f jumps
/// totalling `rate` (half each way), or extra g-f dephasing at `rate`.
DeviceParams with_injected_noise(const DeviceParams& params, SweepAxis axis, double rate);

struct SweepPoint {
  double rate;
  /// First-attempt readout populations of the corrected variant, input |+X>_L.
  double p_e;
  double p_f;
  double error_nc;
  double error_c;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

/// Ordinary least squares with the textbook slope standard error.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct SweepResult {
  SweepAxis axis;
  std::vector<SweepPoint> points;
  /// Errors regressed on P_e (relaxation) or P_f (dephasing).
  LinearFit fit_nc;
  LinearFit fit_c;
  double slope_ratio = 0.0;
  double slope_ratio_stderr = 0.0;
  /// Errors are 2(1 − F_avg) of the tomographed channel rather than IRB.
  bool channel_error_proxy = true;
};

/// `config` supplies the corrected variant; the uncorrected one is the same
/// pulse without the transparency drive or the readout.
SweepResult sweep_injected_noise(SweepAxis axis, const std::vector<double>& rates,
                                 const ProtocolConfig& config, const DeviceParams& params,
                                 int threads = 0);

ProtocolConfig uncorrected_variant(const ProtocolConfig& config);

void write_sweep_csv(std::ostream& out, const SweepResult& result);

}  // namespace ftsnap

#endif  // FTSNAP_SWEEP_H_
