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

#include "ftsnap/cli.h"

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ftsnap/budget.h"
#include "ftsnap/codes.h"
#include "ftsnap/dynamics.h"
#include "ftsnap/rb.h"
#include "ftsnap/sweep.h"
#include "ftsnap/transition_graph.h"
#include "ftsnap/transparency.h"

namespace ftsnap {
namespace {

using nlohmann::json;

std::ostream& log_of(const CommandContext& ctx) {
  static std::ostringstream sink;
  return ctx.log != nullptr ? *ctx.log : sink;
}

std::string output_path(const CommandContext& ctx, const std::string& name) {
  std::filesystem::create_directories(ctx.out_dir);
  return (std::filesystem::path(ctx.out_dir) / name).string();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << std::setprecision(12);
  return out;
}

/// "# "-prefixed metadata block for CSV files.
void csv_header(std::ostream& out, const CommandContext& ctx, const std::string& what) {
  out << "# ftsnap " << version() << " " << what << "\n";
  out << "# resolved config:\n";
  std::istringstream yaml(to_yaml(ctx.config));
  for (std::string line; std::getline(yaml, line);) out << "#   " << line << "\n";
}

json metadata(const CommandContext& ctx, const std::string& what) {
  return {{"ftsnap_version", version()}, {"command", what}, {"config", to_yaml(ctx.config)}};
}

Mat2 logical_rho(const Bloch& b) {
  const auto& p = paulis();
  return 0.5 * (p[0] + b(0) * p[1] + b(1) * p[2] + b(2) * p[3]);
}

std::string matrix_text(const Mat2& m) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6);
  for (int r = 0; r < 2; ++r) {
    s << (r ? "; " : "[");
    for (int c = 0; c < 2; ++c)
      s << (c ? ", " : "") << m(r, c).real() << (m(r, c).imag() < 0 ? "-" : "+")
        << std::abs(m(r, c).imag()) << "i";
  }
  return s.str() + "]";
}

json matrix_json(const Mat2& m) {
  json rows = json::array();
  for (int r = 0; r < 2; ++r) {
    json row = json::array();
    for (int c = 0; c < 2; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string version() { return FTSNAP_VERSION; }

std::string cmd_simulate_gate(const CommandContext& ctx) {
  const RunConfig& cfg = ctx.config;
  const ProtocolConfig& pc = cfg.protocol;
  const TensorSpace space(pc.cavity_dim, 3);
  const Mat2 target = logical_s_theta_2x2(pc.theta);
  const DensityMatrix rho_in =
      DensityMatrix::from_state(encode(space, cfg.simulate.input, Level::g));

  const LogicalChannel channel = gate_channel(pc, cfg.device);
  RunOptions options;
  options.seed = cfg.seed;
  const GateOutcome sample = run_gate(pc, cfg.device, rho_in, options);
  const auto conditioned = run_gate_conditioned(pc, cfg.device, rho_in);
  const Mat2 expected = target * logical_rho(cfg.simulate.input) * target.adjoint();

  json doc = metadata(ctx, "simulate-gate");
  doc["variant"] = variant_name(pc.variant);
  doc["average_gate_fidelity"] = channel.average_gate_fidelity(target);
  doc["process_fidelity"] = channel.process_fidelity(target);
  doc["channel_error"] = channel.error(target);
  doc["success_probability"] = channel.success_probability;
  doc["sampled_outcome"] = to_json(sample);
  json table = json::array();
  for (const auto& [level, state] : conditioned) {
    double fidelity = 0.0;
    if (state.probability > 0.0)
      fidelity = (logical_block(state.cavity_rho) * expected).trace().real();
    table.push_back({{"reported", std::string(1, level_name(level))},
                     {"probability", state.probability},
                     {"phase_correction_rad", state.phase_correction},
                     {"state_fidelity", fidelity}});
  }
  doc["conditioned_states"] = table;

  const std::string path = output_path(ctx, "gate.json");
  open_output(path) << doc.dump(2) << "\n";

  auto& log = log_of(ctx);
  log << std::fixed << std::setprecision(6);
  log << "variant " << variant_name(pc.variant) << "  average gate fidelity "
      << channel.average_gate_fidelity(target) << "  channel error " << channel.error(target)
      << "\n";
  log << "reported  probability  phase_correction  state_fidelity\n";
  for (const auto& row : table)
    log << std::setw(8) << row["reported"].get<std::string>() << "  " << std::setw(11)
        << row["probability"].get<double>() << "  " << std::setw(16)
        << row["phase_correction_rad"].get<double>() << "  " << std::setw(14)
        << row["state_fidelity"].get<double>() << "\n";
  return path;
}

std::string cmd_wigner(const CommandContext& ctx) {
  const RunConfig& cfg = ctx.config;
  const int dim = cfg.protocol.cavity_dim;
  Mat rho_cav;
  if (cfg.wigner.apply_gate) {
    const TensorSpace space(dim, 3);
    const DensityMatrix rho_in =
        DensityMatrix::from_state(encode(space, cfg.wigner.input, Level::g));
    rho_cav = trace_ancilla(space, run_gate_average(cfg.protocol, cfg.device, rho_in).rho.matrix);
  } else {
    const Vec psi = encode_cavity(dim, cfg.wigner.input);
    rho_cav = psi * psi.adjoint();
  }
  const auto axis = linspace(-cfg.wigner.extent, cfg.wigner.extent, cfg.wigner.points);
  Diagnostics diags;
  const WignerGrid grid = wigner(rho_cav, axis, axis, &diags);
  for (const auto& d : diags) log_of(ctx) << "warning [" << d.code << "]: " << d.message << "\n";

  std::string path;
  if (ctx.format == OutputFormat::json) {
    path = output_path(ctx, "wigner.json");
    json doc = metadata(ctx, "wigner");
    doc["re_axis"] = grid.re_axis;
    doc["im_axis"] = grid.im_axis;
    json values = json::array();
    for (int i = 0; i < grid.values.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < grid.values.cols(); ++j) row.push_back(grid.values(i, j));
      values.push_back(row);
    }
    doc["values"] = values;
    open_output(path) << doc.dump(2) << "\n";
  } else {
    path = output_path(ctx, "wigner.csv");
    auto out = open_output(path);
    csv_header(out, ctx, "wigner W(alpha), dimensionless quasi-probability density");
    write_wigner_csv(out, grid);
  }
  log_of(ctx) << "wigner grid " << cfg.wigner.points << "x" << cfg.wigner.points << " -> " << path
              << "\n";
  return path;
}

std::string cmd_rb(const CommandContext& ctx) {
  const RunConfig& cfg = ctx.config;
  const RBSettings& rb = cfg.rb;
  const RBResult reference = run_rb(std::nullopt, rb.lengths, rb.n_sequences,
                                    derive_seed(cfg.seed, 0), rb.options);
  std::optional<RBResult> interleaved;
  if (rb.interleave != Interleave::none) {
    InterleavedGate gate{LogicalChannel::depolarizing(rb.depolarizing_p), Mat2::Identity()};
    if (rb.interleave == Interleave::gate)
      gate = {gate_channel(cfg.protocol, cfg.device), logical_s_theta_2x2(cfg.protocol.theta)};
    interleaved =
        run_rb(gate, rb.lengths, rb.n_sequences, derive_seed(cfg.seed, 1), rb.options);
  }
  auto& log = log_of(ctx);
  std::vector<const RBResult*> runs{&reference};
  if (interleaved) runs.push_back(&*interleaved);
  for (const RBResult* r : runs)
    for (const auto& d : r->diagnostics) log << "warning [" << d.code << "]: " << d.message << "\n";

  auto fit_json = [](const RBResult& r) {
    return json{{"amplitude", r.fit.amplitude},   {"gamma", r.fit.gamma},
                {"amplitude_stderr", r.fit.amplitude_stderr},
                {"gamma_stderr", r.fit.gamma_stderr}, {"residual_rms", r.fit.residual_rms},
                {"converged", r.fit.converged}};
  };
  std::string path;
  if (ctx.format == OutputFormat::json) {
    path = output_path(ctx, "rb.json");
    json doc = metadata(ctx, "rb");
    doc["lengths"] = reference.lengths;
    doc["reference"] = {{"survival", reference.survival},
                        {"survival_stderr", reference.survival_stderr},
                        {"fit", fit_json(reference)}};
    if (interleaved) {
      doc["interleaved"] = {{"survival", interleaved->survival},
                            {"survival_stderr", interleaved->survival_stderr},
                            {"fit", fit_json(*interleaved)}};
      const auto diff = interleaved_difference(reference, *interleaved);
      doc["gamma_difference"] = {{"value", diff.value}, {"stderr", diff.stderr}};
      doc["gate_error"] = {{"value", diff.gate_error}, {"stderr", diff.gate_error_stderr}};
    }
    open_output(path) << doc.dump(2) << "\n";
  } else {
    path = output_path(ctx, "rb.csv");
    auto out = open_output(path);
    csv_header(out, ctx, "randomized benchmarking, survival = P(decode |0_L>)");
    out << "# fit model: A*exp(-gamma*n) + 1/2\n";
    out << "# reference: A=" << reference.fit.amplitude << " gamma=" << reference.fit.gamma
        << " gamma_stderr=" << reference.fit.gamma_stderr
        << " residual_rms=" << reference.fit.residual_rms << "\n";
    if (interleaved) {
      const auto diff = interleaved_difference(reference, *interleaved);
      out << "# interleaved: A=" << interleaved->fit.amplitude
          << " gamma=" << interleaved->fit.gamma << " gamma_stderr=" << interleaved->fit.gamma_stderr
          << " residual_rms=" << interleaved->fit.residual_rms << "\n";
      out << "# gamma_irb_minus_rb=" << diff.value << " stderr=" << diff.stderr << "\n";
      out << "# gate_error=" << diff.gate_error << " stderr=" << diff.gate_error_stderr << "\n";
    }
    out << "length,survival_rb,stderr_rb" << (interleaved ? ",survival_irb,stderr_irb" : "")
        << "\n";
    for (std::size_t i = 0; i < reference.lengths.size(); ++i) {
      out << reference.lengths[i] << "," << reference.survival[i] << ","
          << reference.survival_stderr[i];
      if (interleaved)
        out << "," << interleaved->survival[i] << "," << interleaved->survival_stderr[i];
      out << "\n";
    }
  }
  log << std::fixed << std::setprecision(5) << "gamma_RB " << reference.fit.gamma << " +- "
      << reference.fit.gamma_stderr << "\n";
  if (interleaved) {
    const auto diff = interleaved_difference(reference, *interleaved);
    log << "gamma_IRB " << interleaved->fit.gamma << " +- " << interleaved->fit.gamma_stderr
        << "  difference " << diff.value << " +- " << diff.stderr << "\n";
  }
  return path;
}

std::string cmd_sweep(const CommandContext& ctx) {
  const RunConfig& cfg = ctx.config;
  std::string main_path;
  json doc = metadata(ctx, "sweep");
  doc["axes"] = json::array();
  for (SweepAxis axis : cfg.sweep.axes) {
    const SweepResult r =
        sweep_injected_noise(axis, cfg.sweep.rates, cfg.protocol, cfg.device, cfg.sweep.threads);
    log_of(ctx) << std::fixed << std::setprecision(3) << sweep_axis_name(axis)
                << ": slope ratio NC/C " << r.slope_ratio << " +- " << r.slope_ratio_stderr
                << "\n";
    if (ctx.format == OutputFormat::csv) {
      const std::string path = output_path(ctx, "sweep_" + sweep_axis_name(axis) + ".csv");
      auto out = open_output(path);
      csv_header(out, ctx, "injected-noise sweep, errors are channel 2(1-F_avg) proxies");
      write_sweep_csv(out, r);
      if (main_path.empty()) main_path = path;
    } else {
      json points = json::array();
      for (const auto& p : r.points)
        points.push_back({{"rate_per_us", p.rate * 1e-6},
                          {"p_e", p.p_e},
                          {"p_f", p.p_f},
                          {"error_nc", p.error_nc},
                          {"error_c", p.error_c}});
      doc["axes"].push_back({{"axis", sweep_axis_name(axis)},
                             {"error_measure", "channel_2(1-Favg)"},
                             {"points", points},
                             {"slope_nc", r.fit_nc.slope},
                             {"slope_c", r.fit_c.slope},
                             {"slope_ratio", r.slope_ratio},
                             {"slope_ratio_stderr", r.slope_ratio_stderr}});
    }
  }
  if (ctx.format == OutputFormat::json) {
    main_path = output_path(ctx, "sweep.json");
    open_output(main_path) << doc.dump(2) << "\n";
  }
  return main_path;
}

std::string cmd_check(const CommandContext& ctx) {
  const RunConfig& cfg = ctx.config;
  auto& log = log_of(ctx);
  json doc = metadata(ctx, "check");
  doc["graphs"] = json::array();
  const double theta = cfg.protocol.theta;
  for (const auto& file : cfg.check.graphs) {
    const TransitionGraph graph = TransitionGraph::load(cfg.resolve_path(file), &theta);
    const auto report = check_path_independence(graph);
    json violations = json::array();
    for (const auto& v : report.violations)
      violations.push_back(
          {{"loop", v.loop}, {"net_action", matrix_json(v.net_action)}, {"deviation", v.deviation}});
    doc["graphs"].push_back({{"file", file},
                             {"name", graph.name},
                             {"pass", report.pass},
                             {"basis_loops", report.basis_loops},
                             {"violations", violations}});
    log << "path independence [" << graph.name << "]: " << (report.pass ? "pass" : "FAIL") << " ("
        << report.basis_loops << " basis loops)\n";
    for (const auto& v : report.violations) {
      log << "  loop";
      for (const auto& n : v.loop) log << " " << n;
      log << "  net action " << matrix_text(v.net_action) << "\n";
    }
  }
  if (cfg.check.transparency) {
    const TensorSpace space(cfg.check.cavity_dim, 3);
    DeviceParams params = cfg.device;
    const Op h0 = build_h0(params, space);
    std::vector<JumpOp> jumps = build_jump_ops(params, space);
    jumps.push_back({annihilation(space), 1.0, JumpKind::cavity_loss, "a"});
    jumps.push_back({ancilla_projector(space, Level::f), 1.0, JumpKind::dephasing, "|f><f|"});
    jumps.push_back(
        {ancilla_transition(space, Level::f, Level::e), 1.0, JumpKind::ancilla_relax_ef, "|e><f|"});
    json rows = json::array();
    for (const auto& r : check_error_transparency(h0, jumps)) {
      json diag = json::array();
      for (int i = 0; i < space.dim(); ++i) diag.push_back(r.h_a.matrix(i, i).real());
      rows.push_back({{"jump", r.jump},
                      {"classification", transparency_class_name(r.classification)},
                      {"residual", r.residual},
                      {"commutator_norm", r.commutator_norm},
                      {"h_a_diagonal_rad_per_s", diag}});
      log << "error transparency [" << r.jump << "]: " << transparency_class_name(r.classification)
          << " (residual " << std::scientific << std::setprecision(2) << r.residual
          << std::defaultfloat << ")\n";
    }
    doc["transparency"] = rows;
  }
  const std::string path = output_path(ctx, "check.json");
  open_output(path) << doc.dump(2) << "\n";
  return path;
}

std::string cmd_budget(const CommandContext& ctx) {
  const RunConfig& cfg = ctx.config;
  const ErrorBudget budget = build_error_budget(cfg.device, cfg.protocol, cfg.budget);
  std::string path;
  if (ctx.format == OutputFormat::csv) {
    path = output_path(ctx, "budget.csv");
    auto out = open_output(path);
    csv_header(out, ctx, "error budget tree, probabilities per node");
    out << "# total_error=" << budget.total_error << " nc_fidelity=" << budget.nc_fidelity << "\n";
    out << "depth,path,p_coherent,p_dephased\n";
    std::function<void(const ErrorBudgetNode&, int, const std::string&)> walk =
        [&](const ErrorBudgetNode& n, int depth, const std::string& prefix) {
          const std::string here = prefix.empty() ? n.label : prefix + " / " + n.label;
          out << depth << ",\"" << here << "\"," << n.p_coherent << "," << n.p_dephased << "\n";
          for (const auto& c : n.children) walk(c, depth + 1, here);
        };
    walk(budget.root, 0, "");
  } else {
    path = output_path(ctx, "budget.json");
    json doc = metadata(ctx, "budget");
    doc["budget"] = to_json(budget);
    open_output(path) << doc.dump(2) << "\n";
  }
  log_of(ctx) << std::fixed << std::setprecision(4) << "total error "
              << 100.0 * budget.total_error << "%  NC fidelity " << 100.0 * budget.nc_fidelity
              << "%\n";
  return path;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ftsnap: fault-tolerant SNAP gate simulator"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  std::string out_dir = ".";
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "YAML run config");
  app.add_option("--seed", seed, "root seed (overrides the config)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  using Command = std::string (*)(const CommandContext&);
  const std::vector<std::pair<std::string, Command>> commands = {
      {"simulate-gate", cmd_simulate_gate}, {"wigner", cmd_wigner}, {"rb", cmd_rb},
      {"sweep", cmd_sweep},                 {"check", cmd_check},   {"budget", cmd_budget}};
  const std::map<std::string, std::string> help = {
      {"simulate-gate", "simulate one gate and its logical channel"},
      {"wigner", "Wigner function of the logical state"},
      {"rb", "randomized and interleaved benchmarking"},
      {"sweep", "injected-noise sweep with slope ratios"},
      {"check", "path-independence and error-transparency checks"},
      {"budget", "analytic error budget tree"}};
  for (const auto& [name, fn] : commands) app.add_subcommand(name, help.at(name));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    CommandContext ctx;
    ctx.config = config_path.empty() ? RunConfig{} : load_run_config(config_path);
    if (seed) ctx.config.seed = *seed;
    ctx.config.validate();
    ctx.out_dir = out_dir;
    ctx.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
    ctx.log = &out;
    for (const auto& [name, fn] : commands) {
      if (!app.got_subcommand(name)) continue;
      const std::string path = fn(ctx);
      out << "wrote " << path << "\n";
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace ftsnap
