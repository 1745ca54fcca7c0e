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

#include "ftsnap/config.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "ftsnap/units.h"

namespace ftsnap {
namespace {

std::string line_of(const YAML::Node& node) {
  return "line " + std::to_string(node.Mark().line + 1);
}

/// Mapping reader that tracks consumed keys so leftovers can be rejected.
class Section {
 public:
  Section(const YAML::Node& node, std::string path) : node_(node), path_(std::move(path)) {
    if (node_ && !node_.IsMap())
      throw ValidationError(line_of(node_) + ": " + path_ + " must be a mapping");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return node_ && node_[key];
  }

  YAML::Node raw(const std::string& key) { return node_[key]; }
  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void quantity(const std::string& key, Dimension dim, double& out) {
    if (!has(key)) return;
    const YAML::Node v = node_[key];
    try {
      out = parse_quantity(v.as<std::string>(), dim, field(key));
    } catch (const ValidationError& ex) {
      throw ValidationError(line_of(v) + ": " + ex.what());
    } catch (const YAML::Exception&) {
      throw ValidationError(line_of(v) + ": " + field(key) + ": expected a scalar");
    }
  }

  template <typename T>
  void scalar(const std::string& key, T& out) {
    if (!has(key)) return;
    const YAML::Node v = node_[key];
    try {
      out = v.as<T>();
    } catch (const YAML::Exception&) {
      throw ValidationError(line_of(v) + ": " + field(key) + ": malformed value");
    }
  }

  template <typename F>
  void choice(const std::string& key, F&& parse) {
    if (!has(key)) return;
    const YAML::Node v = node_[key];
    try {
      parse(v.as<std::string>());
    } catch (const ValidationError& ex) {
      throw ValidationError(line_of(v) + ": " + field(key) + ": " + ex.what());
    } catch (const std::invalid_argument& ex) {
      throw ValidationError(line_of(v) + ": " + field(key) + ": " + ex.what());
    }
  }

  Section child(const std::string& key) {
    has(key);
    return Section(node_ ? node_[key] : YAML::Node(), field(key));
  }

  void finish() const {
    if (!node_) return;
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!seen_.count(key))
        throw ValidationError(line_of(kv.first) + ": unknown key '" + field(key) + "'");
    }
  }

 private:
  YAML::Node node_;
  std::string path_;
  std::set<std::string> seen_;
};

Bloch read_bloch(Section& s, const std::string& key, const Bloch& fallback) {
  if (!s.has(key)) return fallback;
  const YAML::Node v = s.raw(key);
  if (!v.IsSequence() || v.size() != 3)
    throw ValidationError(line_of(v) + ": " + s.field(key) + ": expected [x, y, z]");
  Bloch b(v[0].as<double>(), v[1].as<double>(), v[2].as<double>());
  if (std::abs(b.norm() - 1.0) > 1e-9)
    throw ValidationError(line_of(v) + ": " + s.field(key) + ": Bloch vector must be unit length");
  return b;
}

void read_device(Section s, DeviceParams& d) {
  s.quantity("chi_e", Dimension::angular_frequency, d.chi_e);
  s.quantity("chi_f", Dimension::angular_frequency, d.chi_f);
  s.quantity("kerr_K", Dimension::angular_frequency, d.kerr_K);
  s.quantity("anharmonicity", Dimension::angular_frequency, d.anharmonicity_alpha);
  s.quantity("t1_ge", Dimension::time, d.t1_ge);
  s.quantity("t1_ef", Dimension::time, d.t1_ef);
  s.quantity("tphi_ge", Dimension::time, d.tphi_ge);
  s.quantity("tphi_gf", Dimension::time, d.tphi_gf);
  s.quantity("t1_cavity", Dimension::time, d.t1_cavity);
  s.scalar("nbar_thermal", d.nbar_thermal);
  s.quantity("injected_dephasing_rate", Dimension::rate, d.injected_dephasing_rate);
  s.quantity("injected_ef_noise_rate", Dimension::rate, d.injected_ef_noise_rate);
  s.scalar("kerr_enabled", d.kerr_enabled);
  s.choice("dephasing_model", [&](const std::string& v) {
    if (v == "number")
      d.dephasing_model = DephasingModel::number;
    else if (v == "projector")
      d.dephasing_model = DephasingModel::projector;
    else
      throw ValidationError("expected number or projector, got '" + v + "'");
  });
  s.finish();
}

void read_envelope(Section s, PulseEnvelope& e) {
  s.choice("shape", [&](const std::string& v) {
    if (v == "gaussian")
      e.shape = EnvelopeShape::gaussian;
    else if (v == "constant")
      e.shape = EnvelopeShape::constant;
    else
      throw ValidationError("expected gaussian or constant, got '" + v + "'");
  });
  s.quantity("duration", Dimension::time, e.duration);
  s.quantity("sigma", Dimension::time, e.sigma);
  s.quantity("area", Dimension::angle, e.area);
  s.finish();
}

void read_protocol(Section s, ProtocolConfig& p) {
  s.choice("variant", [&](const std::string& v) { p.variant = variant_from_name(v); });
  s.quantity("theta", Dimension::angle, p.theta);
  s.scalar("et_drive_on", p.et_drive_on);
  read_envelope(s.child("snap_pulse"), p.snap_envelope);
  s.quantity("swap_duration", Dimension::time, p.swap_duration);
  s.quantity("measurement_duration", Dimension::time, p.measurement_duration);
  if (s.has("confusion")) {
    const YAML::Node m = s.raw("confusion");
    if (!m.IsSequence() || m.size() != 3)
      throw ValidationError(line_of(m) + ": " + s.field("confusion") + ": expected 3x3 rows");
    for (int r = 0; r < 3; ++r) {
      if (!m[r].IsSequence() || m[r].size() != 3)
        throw ValidationError(line_of(m[r]) + ": " + s.field("confusion") + ": expected 3x3 rows");
      for (int c = 0; c < 3; ++c) p.confusion(r, c) = m[r][c].as<double>();
    }
  }
  s.scalar("max_repeats", p.max_repeats);
  s.scalar("readout_dephasing", p.readout_dephasing);
  s.choice("snap_model", [&](const std::string& v) {
    if (v == "rwa")
      p.snap_model = SnapModel::rwa;
    else if (v == "comb")
      p.snap_model = SnapModel::comb;
    else
      throw ValidationError("expected rwa or comb, got '" + v + "'");
  });
  if (s.has("sideband_g")) {
    double g = 0.0;
    s.quantity("sideband_g", Dimension::angular_frequency, g);
    p.sideband_g = g;
  }
  if (s.has("sideband_delta")) {
    double delta = 0.0;
    s.quantity("sideband_delta", Dimension::angular_frequency, delta);
    p.sideband_delta = delta;
  }
  s.scalar("et_hybridization", p.et_hybridization);
  s.scalar("calibrate_snap_phases", p.calibrate_snap_phases);
  s.scalar("inject_outside_snap", p.inject_outside_snap);
  s.scalar("cavity_dim", p.cavity_dim);
  s.scalar("tolerance", p.tolerance);
  s.finish();
}

void read_rb(Section s, RBSettings& rb) {
  s.scalar("lengths", rb.lengths);
  s.scalar("n_sequences", rb.n_sequences);
  s.scalar("shots", rb.options.shots);
  s.scalar("background_error", rb.options.background_error);
  s.scalar("assignment_error", rb.options.assignment_error);
  s.scalar("threads", rb.options.threads);
  s.choice("interleave", [&](const std::string& v) {
    if (v == "none")
      rb.interleave = Interleave::none;
    else if (v == "gate")
      rb.interleave = Interleave::gate;
    else if (v == "depolarizing")
      rb.interleave = Interleave::depolarizing;
    else
      throw ValidationError("expected none, gate or depolarizing, got '" + v + "'");
  });
  s.scalar("depolarizing_p", rb.depolarizing_p);
  s.finish();
}

void read_sweep(Section s, SweepSettings& sw) {
  if (s.has("axes")) {
    const YAML::Node axes = s.raw("axes");
    if (!axes.IsSequence()) throw ValidationError(line_of(axes) + ": sweep.axes must be a list");
    sw.axes.clear();
    for (const auto& a : axes) {
      try {
        sw.axes.push_back(sweep_axis_from_name(a.as<std::string>()));
      } catch (const ValidationError& ex) {
        throw ValidationError(line_of(a) + ": sweep.axes: " + ex.what());
      }
    }
  }
  if (s.has("rates")) {
    const YAML::Node rates = s.raw("rates");
    if (!rates.IsSequence()) throw ValidationError(line_of(rates) + ": sweep.rates must be a list");
    sw.rates.clear();
    for (const auto& r : rates) {
      try {
        sw.rates.push_back(parse_quantity(r.as<std::string>(), Dimension::rate, "sweep.rates"));
      } catch (const ValidationError& ex) {
        throw ValidationError(line_of(r) + ": " + ex.what());
      }
    }
  }
  s.scalar("threads", sw.threads);
  s.finish();
}

RunConfig from_root(const YAML::Node& root, const std::string& base_dir) {
  RunConfig cfg;
  cfg.base_dir = base_dir;
  if (!root || root.IsNull()) return cfg;
  Section top(root, "");
  top.scalar("seed", cfg.seed);
  read_device(top.child("device"), cfg.device);
  read_protocol(top.child("protocol"), cfg.protocol);
  {
    Section s = top.child("simulate");
    cfg.simulate.input = read_bloch(s, "input", cfg.simulate.input);
    s.finish();
  }
  {
    Section s = top.child("wigner");
    cfg.wigner.input = read_bloch(s, "input", cfg.wigner.input);
    s.scalar("apply_gate", cfg.wigner.apply_gate);
    s.scalar("extent", cfg.wigner.extent);
    s.scalar("points", cfg.wigner.points);
    s.finish();
  }
  read_rb(top.child("rb"), cfg.rb);
  read_sweep(top.child("sweep"), cfg.sweep);
  {
    Section s = top.child("budget");
    s.scalar("backaction_fraction", cfg.budget.backaction_fraction);
    s.finish();
  }
  {
    Section s = top.child("check");
    s.scalar("graphs", cfg.check.graphs);
    s.scalar("transparency", cfg.check.transparency);
    s.scalar("cavity_dim", cfg.check.cavity_dim);
    s.finish();
  }
  top.finish();
  return cfg;
}

}  // namespace

void RunConfig::validate() const {
  device.validate();
  protocol.validate();
  if (rb.n_sequences < 20) throw ValidationError("rb.n_sequences must be >= 20");
  if (rb.lengths.size() < 3) throw ValidationError("rb.lengths needs at least 3 entries");
  for (int n : rb.lengths)
    if (n < 0) throw ValidationError("rb.lengths must be >= 0");
  if (rb.depolarizing_p < 0.0 || rb.depolarizing_p > 1.0)
    throw ValidationError("rb.depolarizing_p must lie in [0, 1]");
  if (rb.options.shots < 0) throw ValidationError("rb.shots must be >= 0");
  if (rb.options.background_error < 0.0 || rb.options.background_error > 1.0)
    throw ValidationError("rb.background_error must lie in [0, 1]");
  if (rb.options.assignment_error < 0.0 || rb.options.assignment_error > 0.5)
    throw ValidationError("rb.assignment_error must lie in [0, 0.5]");
  if (sweep.rates.size() < 2) throw ValidationError("sweep.rates needs at least two entries");
  for (std::size_t i = 0; i < sweep.rates.size(); ++i) {
    if (!(sweep.rates[i] >= 0.0)) throw ValidationError("sweep.rates must be non-negative");
    if (i > 0 && sweep.rates[i] <= sweep.rates[i - 1])
      throw ValidationError("sweep.rates must ascend");
  }
  if (!(wigner.extent > 0.0)) throw ValidationError("wigner.extent must be > 0");
  if (wigner.points < 2) throw ValidationError("wigner.points must be >= 2");
  if (budget.backaction_fraction < 0.0 || budget.backaction_fraction > 1.0)
    throw ValidationError("budget.backaction_fraction must lie in [0, 1]");
  if (check.cavity_dim < 2) throw ValidationError("check.cavity_dim must be >= 2");
}

std::string RunConfig::resolve_path(const std::string& path) const {
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

RunConfig parse_run_config(const std::string& text, const std::string& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& ex) {
    throw ValidationError(ex.what());
  }
  RunConfig cfg;
  try {
    cfg = from_root(root, base_dir);
  } catch (const YAML::Exception& ex) {
    throw ValidationError(ex.what());
  }
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string dir = std::filesystem::path(path).parent_path().string();
  try {
    return parse_run_config(buffer.str(), dir.empty() ? "." : dir);
  } catch (const ValidationError& ex) {
    throw ValidationError(path + ": " + ex.what());
  }
}

std::string to_yaml(const RunConfig& c) {
  auto q = [](double v, Dimension d) { return format_quantity(v, d); };
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "seed" << YAML::Value << c.seed;

  const DeviceParams& d = c.device;
  out << YAML::Key << "device" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "chi_e" << YAML::Value << q(d.chi_e, Dimension::angular_frequency);
  out << YAML::Key << "chi_f" << YAML::Value << q(d.chi_f, Dimension::angular_frequency);
  out << YAML::Key << "kerr_K" << YAML::Value << q(d.kerr_K, Dimension::angular_frequency);
  out << YAML::Key << "anharmonicity" << YAML::Value
      << q(d.anharmonicity_alpha, Dimension::angular_frequency);
  out << YAML::Key << "t1_ge" << YAML::Value << q(d.t1_ge, Dimension::time);
  out << YAML::Key << "t1_ef" << YAML::Value << q(d.t1_ef, Dimension::time);
  out << YAML::Key << "tphi_ge" << YAML::Value << q(d.tphi_ge, Dimension::time);
  out << YAML::Key << "tphi_gf" << YAML::Value << q(d.tphi_gf, Dimension::time);
  out << YAML::Key << "t1_cavity" << YAML::Value << q(d.t1_cavity, Dimension::time);
  out << YAML::Key << "nbar_thermal" << YAML::Value << d.nbar_thermal;
  out << YAML::Key << "injected_dephasing_rate" << YAML::Value
      << q(d.injected_dephasing_rate, Dimension::rate);
  out << YAML::Key << "injected_ef_noise_rate" << YAML::Value
      << q(d.injected_ef_noise_rate, Dimension::rate);
  out << YAML::Key << "kerr_enabled" << YAML::Value << d.kerr_enabled;
  out << YAML::Key << "dephasing_model" << YAML::Value
      << (d.dephasing_model == DephasingModel::number ? "number" : "projector");
  out << YAML::EndMap;

  const ProtocolConfig& p = c.protocol;
  out << YAML::Key << "protocol" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "variant" << YAML::Value << variant_name(p.variant);
  out << YAML::Key << "theta" << YAML::Value << q(p.theta, Dimension::angle);
  out << YAML::Key << "et_drive_on" << YAML::Value << p.et_drive_on;
  out << YAML::Key << "snap_pulse" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "shape" << YAML::Value
      << (p.snap_envelope.shape == EnvelopeShape::gaussian ? "gaussian" : "constant");
  out << YAML::Key << "duration" << YAML::Value << q(p.snap_envelope.duration, Dimension::time);
  out << YAML::Key << "sigma" << YAML::Value << q(p.snap_envelope.sigma, Dimension::time);
  out << YAML::Key << "area" << YAML::Value << q(p.snap_envelope.area, Dimension::angle);
  out << YAML::EndMap;
  out << YAML::Key << "swap_duration" << YAML::Value << q(p.swap_duration, Dimension::time);
  out << YAML::Key << "measurement_duration" << YAML::Value
      << q(p.measurement_duration, Dimension::time);
  out << YAML::Key << "confusion" << YAML::Value << YAML::BeginSeq;
  for (int r = 0; r < 3; ++r) {
    out << YAML::Flow << YAML::BeginSeq;
    for (int col = 0; col < 3; ++col) out << p.confusion(r, col);
    out << YAML::EndSeq;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "max_repeats" << YAML::Value << p.max_repeats;
  out << YAML::Key << "readout_dephasing" << YAML::Value << p.readout_dephasing;
  out << YAML::Key << "snap_model" << YAML::Value
      << (p.snap_model == SnapModel::comb ? "comb" : "rwa");
  if (p.sideband_g)
    out << YAML::Key << "sideband_g" << YAML::Value << q(*p.sideband_g, Dimension::angular_frequency);
  if (p.sideband_delta)
    out << YAML::Key << "sideband_delta" << YAML::Value
        << q(*p.sideband_delta, Dimension::angular_frequency);
  out << YAML::Key << "et_hybridization" << YAML::Value << p.et_hybridization;
  out << YAML::Key << "calibrate_snap_phases" << YAML::Value << p.calibrate_snap_phases;
  out << YAML::Key << "inject_outside_snap" << YAML::Value << p.inject_outside_snap;
  out << YAML::Key << "cavity_dim" << YAML::Value << p.cavity_dim;
  out << YAML::Key << "tolerance" << YAML::Value << p.tolerance;
  out << YAML::EndMap;

  auto bloch = [&](const Bloch& b) {
    out << YAML::Flow << YAML::BeginSeq << b(0) << b(1) << b(2) << YAML::EndSeq;
  };
  out << YAML::Key << "simulate" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "input" << YAML::Value;
  bloch(c.simulate.input);
  out << YAML::EndMap;

  out << YAML::Key << "wigner" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "input" << YAML::Value;
  bloch(c.wigner.input);
  out << YAML::Key << "apply_gate" << YAML::Value << c.wigner.apply_gate;
  out << YAML::Key << "extent" << YAML::Value << c.wigner.extent;
  out << YAML::Key << "points" << YAML::Value << c.wigner.points;
  out << YAML::EndMap;

  out << YAML::Key << "rb" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "lengths" << YAML::Value << YAML::Flow << c.rb.lengths;
  out << YAML::Key << "n_sequences" << YAML::Value << c.rb.n_sequences;
  out << YAML::Key << "shots" << YAML::Value << c.rb.options.shots;
  out << YAML::Key << "background_error" << YAML::Value << c.rb.options.background_error;
  out << YAML::Key << "assignment_error" << YAML::Value << c.rb.options.assignment_error;
  out << YAML::Key << "threads" << YAML::Value << c.rb.options.threads;
  const char* interleave = c.rb.interleave == Interleave::none   ? "none"
                           : c.rb.interleave == Interleave::gate ? "gate"
                                                                 : "depolarizing";
  out << YAML::Key << "interleave" << YAML::Value << interleave;
  out << YAML::Key << "depolarizing_p" << YAML::Value << c.rb.depolarizing_p;
  out << YAML::EndMap;

  out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "axes" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (SweepAxis a : c.sweep.axes) out << sweep_axis_name(a);
  out << YAML::EndSeq;
  out << YAML::Key << "rates" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (double r : c.sweep.rates) out << q(r, Dimension::rate);
  out << YAML::EndSeq;
  out << YAML::Key << "threads" << YAML::Value << c.sweep.threads;
  out << YAML::EndMap;

  out << YAML::Key << "budget" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "backaction_fraction" << YAML::Value << c.budget.backaction_fraction;
  out << YAML::EndMap;

  out << YAML::Key << "check" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "graphs" << YAML::Value << YAML::Flow << c.check.graphs;
  out << YAML::Key << "transparency" << YAML::Value << c.check.transparency;
  out << YAML::Key << "cavity_dim" << YAML::Value << c.check.cavity_dim;
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace ftsnap
