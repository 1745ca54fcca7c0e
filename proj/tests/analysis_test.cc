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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "ftsnap/budget.h"
#include "ftsnap/codes.h"
#include "ftsnap/config.h"
#include "ftsnap/device.h"
#include "ftsnap/hilbert.h"
#include "ftsnap/protocol.h"
#include "ftsnap/rb.h"
#include "ftsnap/sweep.h"
#include "ftsnap/transition_graph.h"
#include "ftsnap/transparency.h"

namespace ftsnap {
namespace {

std::string graph_file(const std::string& name) {
  return std::string(FTSNAP_SOURCE_DIR) + "/configs/graphs/" + name;
}

TransitionGraph snap_graph(bool with_ge_decay) {
  const double theta = 0.9;
  TransitionGraph g;
  g.name = "snap";
  g.nodes = {"g", "e", "f"};
  g.start = "g";
  g.edges = {{"g", "f", logical_s_theta_2x2(theta), EdgeKind::drive, "snap"},
             {"f", "g", logical_s_theta_2x2(-theta), EdgeKind::drive, "snap"},
             {"f", "e", Mat2::Identity(), EdgeKind::jump, "relax"}};
  if (with_ge_decay) g.edges.push_back({"e", "g", Mat2::Identity(), EdgeKind::jump, "decay"});
  return g;
}

TEST(PathIndependence, SnapGraphPasses) {
  const auto report = check_path_independence(snap_graph(false));
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.basis_loops, 1);
}

TEST(PathIndependence, GeDecayBreaksWithNetS) {
  const auto report = check_path_independence(snap_graph(true));
  ASSERT_FALSE(report.pass);
  ASSERT_EQ(report.violations.size(), 1u);
  const auto& v = report.violations.front();
  EXPECT_EQ(v.loop, (std::vector<std::string>{"g", "f", "e", "g"}));
  EXPECT_LT(distance_from_identity(v.net_action * logical_s_theta_2x2(-0.9)), 1e-12);
}

TEST(PathIndependence, SingleNodeIsVacuous) {
  TransitionGraph g;
  g.nodes = {"g"};
  g.start = "g";
  const auto report = check_path_independence(g);
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.basis_loops, 0);
}

TEST(PathIndependence, RejectsNonUnitaryAndUnpairedDrives) {
  TransitionGraph g = snap_graph(false);
  g.edges[2].action = 0.5 * Mat2::Identity();
  EXPECT_THROW(check_path_independence(g), ValidationError);
  g = snap_graph(false);
  g.edges.erase(g.edges.begin() + 1);
  EXPECT_THROW(check_path_independence(g), ValidationError);
}

TEST(PathIndependence, DisconnectedGraphIsRejected) {
  TransitionGraph g = snap_graph(false);
  g.nodes.push_back("h");
  EXPECT_THROW(check_path_independence(g), ValidationError);
}

TEST(PathIndependence, BundledGraphs) {
  EXPECT_TRUE(check_path_independence(TransitionGraph::load(graph_file("ancilla_graph.yaml"))).pass);
  EXPECT_TRUE(check_path_independence(TransitionGraph::load(graph_file("parity_sectors.yaml"))).pass);
  const auto broken =
      check_path_independence(TransitionGraph::load(graph_file("parity_sectors_ge_decay.yaml")));
  ASSERT_FALSE(broken.pass);
  for (const auto& v : broken.violations)
    EXPECT_LT(distance_from_identity(v.net_action * logical_s_theta_2x2(-kPi / 2)), 1e-12);
}

TEST(PathIndependence, RelabelingAndRerootingPreserveVerdict) {
  std::mt19937_64 rng(8);
  for (const char* file : {"ancilla_graph.yaml", "parity_sectors.yaml",
                           "parity_sectors_ge_decay.yaml"}) {
    const TransitionGraph base = TransitionGraph::load(graph_file(file));
    const bool verdict = check_path_independence(base).pass;
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<std::string> names = base.nodes;
      std::shuffle(names.begin(), names.end(), rng);
      std::map<std::string, std::string> rename;
      for (std::size_t i = 0; i < names.size(); ++i)
        rename[base.nodes[i]] = "n" + std::to_string(i) + "_" + names[i];
      TransitionGraph g = base;
      for (auto& n : g.nodes) n = rename[n];
      for (auto& e : g.edges) {
        e.from = rename[e.from];
        e.to = rename[e.to];
      }
      std::shuffle(g.edges.begin(), g.edges.end(), rng);
      g.start = g.nodes[trial % g.nodes.size()];
      EXPECT_EQ(check_path_independence(g).pass, verdict) << file << " trial " << trial;
    }
  }
}

TEST(PathIndependence, ParsesMatrixActionsAndRejectsUnknownKeys) {
  const std::string ok = R"(
nodes: [a, b]
edges:
  - {from: a, to: b, kind: jump, matrix: [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]}
)";
  EXPECT_TRUE(check_path_independence(TransitionGraph::parse(ok)).pass);
  const std::string bad = "nodes: [a]\ncolour: blue\n";
  try {
    TransitionGraph::parse(bad);
    FAIL() << "unknown key accepted";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

class TransparencyTest : public ::testing::Test {
 protected:
  TensorSpace space{6, 3};
  DeviceParams params = [] {
    DeviceParams p;
    p.kerr_enabled = false;
    return p;
  }();
  Op h0 = build_h0(params, space);
};

TEST_F(TransparencyTest, DephasingProjectorCommutes) {
  const auto r = check_error_transparency(h0, ancilla_projector(space, Level::f), "ff");
  EXPECT_EQ(r.classification, TransparencyClass::zero);
}

TEST_F(TransparencyTest, EfRelaxationRecoversNumberOperator) {
  const auto r =
      check_error_transparency(h0, ancilla_transition(space, Level::f, Level::e), "ef");
  ASSERT_EQ(r.classification, TransparencyClass::transparent);
  EXPECT_LT(r.residual, 1e-9);
  for (int n = 0; n < 6; ++n) {
    const int col = space.index(n, Level::f);
    EXPECT_NEAR(r.h_a.matrix(col, col).real(), (params.chi_e - params.chi_f) * n, 1e-6);
  }
}

TEST_F(TransparencyTest, CavityLossRecoversDispersiveProjectors) {
  const auto r = check_error_transparency(h0, annihilation(space), "a");
  ASSERT_EQ(r.classification, TransparencyClass::transparent);
  EXPECT_LT(r.residual, 1e-9);
  // [H0, a] = a H_A with H_A = −(χ_e|e><e| + χ_f|f><f|) on the support of a.
  for (int n = 1; n < 6; ++n) {
    EXPECT_NEAR(r.h_a.matrix(space.index(n, Level::g), space.index(n, Level::g)).real(), 0.0,
                1e-6);
    EXPECT_NEAR(r.h_a.matrix(space.index(n, Level::e), space.index(n, Level::e)).real(),
                -params.chi_e, 1e-6);
    EXPECT_NEAR(r.h_a.matrix(space.index(n, Level::f), space.index(n, Level::f)).real(),
                -params.chi_f, 1e-6);
  }
}

TEST_F(TransparencyTest, KerrKeepsCavityLossTransparent) {
  DeviceParams p;
  const auto r = check_error_transparency(build_h0(p, space), annihilation(space), "a");
  EXPECT_EQ(r.classification, TransparencyClass::transparent);
}

TEST_F(TransparencyTest, QuadratureJumpIsViolation) {
  const Op x = annihilation(space) + creation(space);
  const auto r = check_error_transparency(h0, x, "x");
  EXPECT_EQ(r.classification, TransparencyClass::violation);
  EXPECT_GT(r.residual, 1e-3);
}

TEST(Clifford, GroupHas24ClosedElements) {
  const auto& group = clifford_group();
  ASSERT_EQ(group.size(), 24u);
  auto find = [&](const Mat2& u) {
    for (const auto& g : group)
      if (distance_from_identity(g.adjoint() * u) < 1e-9) return true;
    return false;
  };
  for (const auto& a : group) {
    EXPECT_LT((a.adjoint() * a - Mat2::Identity()).norm(), 1e-12);
    for (const auto& b : group) EXPECT_TRUE(find(a * b));
  }
}

TEST(RbFit, RecoversExactExponential) {
  std::vector<double> n, y;
  for (int k : {1, 3, 7, 15, 30, 60, 100}) {
    n.push_back(k);
    y.push_back(0.47 * std::exp(-0.031 * k) + 0.5);
  }
  const ExponentialFit fit = fit_rb_decay(n, y);
  EXPECT_TRUE(fit.converged);
  EXPECT_NEAR(fit.gamma, 0.031, 1e-6);
  EXPECT_NEAR(fit.amplitude, 0.47, 1e-6);
  EXPECT_LT(fit.residual_rms, 1e-9);
  std::vector<double> sigma(n.size(), 0.01);
  EXPECT_NEAR(fit_rb_decay(n, y, sigma).gamma, 0.031, 1e-6);
}

TEST(Rb, IdealCliffordsDoNotDecay) {
  RBOptions o;
  o.background_error = 0.0;
  const RBResult r = run_rb(std::nullopt, {1, 5, 10, 20}, 20, 4, o);
  for (double s : r.survival) EXPECT_DOUBLE_EQ(s, 1.0);
  EXPECT_LE(std::abs(r.fit.gamma), std::max(r.fit.gamma_stderr, 1e-12));
}

TEST(Rb, BackgroundFloorSetsReferenceDecay) {
  RBOptions o;
  o.shots = 0;
  const RBResult r = run_rb(std::nullopt, {1, 5, 10, 20, 40}, 20, 4, o);
  EXPECT_NEAR(r.fit.gamma, 0.025, 1e-6);
}

TEST(Rb, SameSeedSameResultAcrossThreadCounts) {
  RBOptions a;
  a.threads = 1;
  RBOptions b;
  b.threads = 6;
  const InterleavedGate gate{LogicalChannel::depolarizing(0.03), Mat2::Identity()};
  const RBResult x = run_rb(gate, {1, 4, 16, 32}, 25, 99, a);
  const RBResult y = run_rb(gate, {1, 4, 16, 32}, 25, 99, b);
  EXPECT_EQ(x.survival, y.survival);
  EXPECT_EQ(x.survival_stderr, y.survival_stderr);
  EXPECT_EQ(x.fit.gamma, y.fit.gamma);
}

TEST(Rb, InterleavedDepolarizingDifference) {
  const std::vector<int> lengths = {1, 4, 8, 16, 24, 32, 48, 64};
  const RBResult ref = run_rb(std::nullopt, lengths, 50, 1);
  const RBResult irb = run_rb(
      InterleavedGate{LogicalChannel::depolarizing(0.05), Mat2::Identity()}, lengths, 50, 2);
  const auto diff = interleaved_difference(ref, irb);
  // Every Clifford commutes with depolarizing noise, so the decay constant
  // shifts by exactly −ln(1 − p).
  EXPECT_NEAR(diff.value, -std::log(1 - 0.05), 2 * diff.stderr);
  EXPECT_NEAR(diff.gate_error, 0.05, 2 * diff.gate_error_stderr);
}

TEST(Rb, SimulatedGateInterleave) {
  const RunConfig cfg =
      load_run_config(std::string(FTSNAP_SOURCE_DIR) + "/configs/reproduction.yaml");
  const InterleavedGate gate{gate_channel(cfg.protocol, cfg.device),
                             logical_s_theta_2x2(cfg.protocol.theta)};
  const RBResult ref = run_rb(std::nullopt, cfg.rb.lengths, cfg.rb.n_sequences, 11);
  const RBResult irb = run_rb(gate, cfg.rb.lengths, cfg.rb.n_sequences, 12);
  EXPECT_NEAR(ref.fit.gamma, 0.025, 3 * ref.fit.gamma_stderr);
  const auto diff = interleaved_difference(ref, irb);
  EXPECT_GE(diff.value, 0.015);
  EXPECT_LE(diff.value, 0.035);
}

TEST(Rb, RequiresTwentySequences) {
  EXPECT_THROW(run_rb(std::nullopt, {1, 2, 3}, 19, 0), ValidationError);
}

TEST(Sweep, LineFitOracle) {
  const LinearFit f = fit_line({0.0, 1.0, 2.0, 3.0}, {1.0, 3.0, 5.0, 7.0});
  EXPECT_NEAR(f.slope, 2.0, 1e-14);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  EXPECT_NEAR(f.slope_stderr, 0.0, 1e-12);
  const LinearFit g = fit_line({0.0, 1.0, 2.0}, {0.0, 1.0, 1.0});
  // Residuals (1/6, −1/3, 1/6): s² = 1/6, Sxx = 2.
  EXPECT_NEAR(g.slope_stderr, std::sqrt((1.0 / 6.0) / 2.0), 1e-14);
}

TEST(Sweep, InjectedNoiseMapping) {
  DeviceParams p;
  EXPECT_DOUBLE_EQ(with_injected_noise(p, SweepAxis::relaxation, 2e5).injected_ef_noise_rate, 1e5);
  EXPECT_DOUBLE_EQ(with_injected_noise(p, SweepAxis::dephasing, 2e5).injected_dephasing_rate, 2e5);
  EXPECT_EQ(sweep_axis_from_name("dephasing"), SweepAxis::dephasing);
  EXPECT_THROW(sweep_axis_from_name("heating"), ValidationError);
  EXPECT_THROW(sweep_injected_noise(SweepAxis::dephasing, {2e5, 1e5}, ProtocolConfig{}, p),
               ValidationError);
}

TEST(Budget, NoiselessHasSingleNoErrorPath) {
  ProtocolConfig c;
  const ErrorBudget b = build_error_budget(DeviceParams::noiseless(), c);
  EXPECT_DOUBLE_EQ(b.total_error, 0.0);
  EXPECT_DOUBLE_EQ(b.nc_fidelity, 1.0);
  for (int d = 1; d <= b.layers; ++d) {
    const auto layer = budget_layer(b, d);
    ASSERT_EQ(layer.size(), 1u);
    EXPECT_DOUBLE_EQ(layer.front()->p_coherent, 1.0);
  }
  EXPECT_EQ(b.root.children.front().label, "no error");
}

TEST(Budget, LayersSumToOne) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    DeviceParams p;
    p.t1_ge = 10e-6 + 100e-6 * u(rng);
    p.t1_ef = 10e-6 + 100e-6 * u(rng);
    p.tphi_gf = 10e-6 + 100e-6 * u(rng);
    p.t1_cavity = 0.1e-3 + 2e-3 * u(rng);
    p.nbar_thermal = 0.05 * u(rng);
    ProtocolConfig c;
    c.variant = trial % 3 == 0 ? Variant::NC : Variant::C;
    c.readout_dephasing = 0.02 * u(rng);
    const double mis = 0.03 * u(rng);
    c.confusion << 1 - mis, mis, 0, mis, 1 - mis, 0, 0, 0, 1;
    const ErrorBudget b = build_error_budget(p, c);
    for (int d = 1; d <= b.layers; ++d) {
      double sum = 0.0;
      for (const auto* n : budget_layer(b, d)) {
        EXPECT_GE(n->p_coherent, 0.0);
        EXPECT_GE(n->p_dephased, 0.0);
        sum += n->total();
      }
      EXPECT_NEAR(sum, 1.0, 1e-12) << "layer " << d;
    }
    if (c.variant == Variant::NC) EXPECT_NEAR(b.total_error, 1.0 - b.nc_fidelity, 1e-12);
  }
}

TEST(Budget, JsonMirrorsLayers) {
  const ErrorBudget b = build_error_budget(DeviceParams{}, ProtocolConfig{});
  const auto j = to_json(b);
  EXPECT_EQ(j["layer_sums"].size(), 4u);
  EXPECT_EQ(j["tree"]["label"], "start");
  EXPECT_NEAR(j["total_error"].get<double>(), b.total_error, 0.0);
}

}  // namespace
}  // namespace ftsnap
