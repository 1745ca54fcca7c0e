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

#include "ftsnap/sweep.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

namespace ftsnap {

std::string sweep_axis_name(SweepAxis axis) {
  return axis == SweepAxis::relaxation ? "relaxation" : "dephasing";
}

SweepAxis sweep_axis_from_name(const std::string& name) {
  if (name == "relaxation") return SweepAxis::relaxation;
  if (name == "dephasing") return SweepAxis::dephasing;
  throw ValidationError("unknown sweep axis '" + name + "' (relaxation or dephasing)");
}

DeviceParams with_injected_noise(const DeviceParams& params, SweepAxis axis, double rate) {
  DeviceParams out = params;
  if (axis == SweepAxis::relaxation)
    out.injected_ef_noise_rate = params.injected_ef_noise_rate + rate / 2.0;
  else
    out.injected_dephasing_rate = params.injected_dephasing_rate + rate;
  return out;
}

ProtocolConfig uncorrected_variant(const ProtocolConfig& config) {
  ProtocolConfig nc = config;
  nc.variant = Variant::NC;
  nc.et_drive_on = false;
  return nc;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("fit_line: need 2+ matching points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw std::invalid_argument("fit_line: x values are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      rss += r * r;
    }
    fit.slope_stderr = std::sqrt(rss / (n - 2) / sxx);
  }
  return fit;
}

SweepResult sweep_injected_noise(SweepAxis axis, const std::vector<double>& rates,
                                 const ProtocolConfig& config, const DeviceParams& params,
                                 int threads) {
  if (rates.size() < 2) throw ValidationError("sweep needs at least two rates");
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (!(rates[i] >= 0.0)) throw ValidationError("sweep rates must be non-negative");
    if (i > 0 && rates[i] <= rates[i - 1]) throw ValidationError("sweep rates must ascend");
  }
  ProtocolConfig corrected = config;
  corrected.variant = Variant::C;
  const ProtocolConfig nc = uncorrected_variant(config);
  const Mat2 target = logical_s_theta_2x2(config.theta);
  const TensorSpace space(config.cavity_dim, 3);
  const DensityMatrix plus_x = DensityMatrix::from_state(encode(space, Bloch(1, 0, 0)));

  SweepResult result;
  result.axis = axis;
  result.points.resize(rates.size());
  std::vector<std::exception_ptr> failures(rates.size());
  auto run_point = [&](std::size_t i) {
    try {
      const DeviceParams p = with_injected_noise(params, axis, rates[i]);
      auto conditioned = run_gate_conditioned(corrected, p, plus_x);
      result.points[i] = {rates[i], conditioned[Level::e].probability,
                          conditioned[Level::f].probability, gate_channel(nc, p).error(target),
                          gate_channel(corrected, p).error(target)};
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };
  const int n = static_cast<int>(rates.size());
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, n);
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += workers) run_point(static_cast<std::size_t>(i));
    });
  for (auto& th : pool) th.join();
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  std::vector<double> x, enc, ec;
  for (const auto& pt : result.points) {
    x.push_back(axis == SweepAxis::relaxation ? pt.p_e : pt.p_f);
    enc.push_back(pt.error_nc);
    ec.push_back(pt.error_c);
  }
  result.fit_nc = fit_line(x, enc);
  result.fit_c = fit_line(x, ec);
  result.slope_ratio = result.fit_nc.slope / result.fit_c.slope;
  result.slope_ratio_stderr =
      std::abs(result.slope_ratio) *
      std::hypot(result.fit_nc.slope_stderr / result.fit_nc.slope,
                 result.fit_c.slope_stderr / result.fit_c.slope);
  return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out.precision(10);
  out << "# axis=" << sweep_axis_name(result.axis)
      << " rate_unit=1/us error=" << (result.channel_error_proxy ? "channel_2(1-Favg)" : "irb")
      << " slope_ratio=" << result.slope_ratio << " slope_ratio_stderr=" << result.slope_ratio_stderr
      << "\n";
  out << "rate_per_us,p_e,p_f,error_nc,error_c\n";
  for (const auto& pt : result.points)
    out << pt.rate * 1e-6 << "," << pt.p_e << "," << pt.p_f << "," << pt.error_nc << ","
        << pt.error_c << "\n";
}

}  // namespace ftsnap
