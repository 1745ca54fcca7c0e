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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "ftsnap/cli.h"
#include "ftsnap/config.h"
#include "ftsnap/units.h"

namespace ftsnap {
namespace {

namespace fs = std::filesystem;

std::string config_file(const std::string& name) {
  return std::string(FTSNAP_SOURCE_DIR) + "/configs/" + name;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ftsnap_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  std::vector<const char*> argv = {"ftsnap"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

TEST(Units, ParsesEachDimension) {
  EXPECT_NEAR(parse_quantity("-1.2 MHz", Dimension::angular_frequency, "x"), -kTwoPi * 1.2e6,
              1e-6);
  EXPECT_NEAR(parse_quantity("2.2kHz", Dimension::angular_frequency, "x"), kTwoPi * 2.2e3, 1e-9);
  EXPECT_DOUBLE_EQ(parse_quantity("375 ns", Dimension::time, "x"), 375e-9);
  EXPECT_DOUBLE_EQ(parse_quantity("2 us", Dimension::time, "x"), 2e-6);
  EXPECT_TRUE(std::isinf(parse_quantity("inf", Dimension::time, "x")));
  EXPECT_DOUBLE_EQ(parse_quantity("0.25 /us", Dimension::rate, "x"), 0.25e6);
  EXPECT_DOUBLE_EQ(parse_quantity("5e3 1/s", Dimension::rate, "x"), 5e3);
  EXPECT_DOUBLE_EQ(parse_quantity("0.5 pi", Dimension::angle, "x"), kPi / 2);
  EXPECT_NEAR(parse_quantity("90 deg", Dimension::angle, "x"), kPi / 2, 1e-15);
}

TEST(Units, RejectsMissingOrForeignUnitsNamingTheField) {
  for (const auto& [text, dim] : std::vector<std::pair<std::string, Dimension>>{
           {"1.2", Dimension::angular_frequency},
           {"50 MHz", Dimension::time},
           {"3 furlongs", Dimension::rate},
           {"inf", Dimension::angular_frequency}}) {
    try {
      parse_quantity(text, dim, "device.t1_ge");
      FAIL() << text;
    } catch (const ValidationError& e) {
      EXPECT_NE(std::string(e.what()).find("device.t1_ge"), std::string::npos);
    }
  }
}

TEST(Units, FormatRoundTrips) {
  for (double v : {-kTwoPi * 1.2e6, 3.3e-7, 1.7e5, 0.3}) {
    for (Dimension d : {Dimension::angular_frequency, Dimension::time, Dimension::rate,
                        Dimension::angle}) {
      EXPECT_DOUBLE_EQ(parse_quantity(format_quantity(v, d), d, "x"), v);
    }
  }
}

TEST(Config, ReproductionLoads) {
  const RunConfig c = load_run_config(config_file("reproduction.yaml"));
  EXPECT_NEAR(c.device.chi_f, -kTwoPi * 1.2e6, 1e-6);
  EXPECT_DOUBLE_EQ(c.protocol.snap_envelope.duration, 2.4e-6);
  EXPECT_EQ(c.protocol.snap_model, SnapModel::comb);
  EXPECT_EQ(c.check.graphs.size(), 3u);
  EXPECT_TRUE(fs::exists(c.resolve_path(c.check.graphs.front())));
}

TEST(Config, UnknownKeyReportsLine) {
  const std::string text = "seed: 3\ndevice:\n  chi_e: -0.9 MHz\n  chi_x: 1 MHz\n";
  try {
    parse_run_config(text);
    FAIL();
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("line 4"), std::string::npos) << msg;
    EXPECT_NE(msg.find("chi_x"), std::string::npos) << msg;
  }
}

TEST(Config, YamlRoundTrip) {
  const RunConfig a = load_run_config(config_file("reproduction.yaml"));
  const RunConfig b = parse_run_config(to_yaml(a), a.base_dir);
  EXPECT_EQ(to_yaml(a), to_yaml(b));
  EXPECT_DOUBLE_EQ(a.device.t1_ef, b.device.t1_ef);
  EXPECT_DOUBLE_EQ(*a.protocol.sideband_delta, *b.protocol.sideband_delta);
  EXPECT_EQ(a.sweep.rates, b.sweep.rates);
}

TEST(Cli, MalformedUnitExitsTwo) {
  const fs::path dir = scratch_dir("bad_unit");
  std::ofstream(dir / "bad.yaml") << "device:\n  t1_ge: 50 parsecs\n";
  std::string err;
  EXPECT_EQ(run({"budget", "--config", (dir / "bad.yaml").string(), "--out", dir.string()},
                nullptr, &err),
            2);
  EXPECT_NE(err.find("device.t1_ge"), std::string::npos) << err;
}

TEST(Cli, UnknownSubcommandAndMissingConfigExitTwo) {
  EXPECT_EQ(run({"teleport"}), 2);
  EXPECT_EQ(run({"budget", "--config", "/nonexistent/ftsnap.yaml"}), 2);
}

TEST(Cli, BudgetIsByteIdenticalAcrossRuns) {
  const fs::path a = scratch_dir("budget_a");
  const fs::path b = scratch_dir("budget_b");
  for (const fs::path& d : {a, b}) {
    ASSERT_EQ(run({"budget", "--config", config_file("reproduction.yaml"), "--out", d.string(),
                   "--format", "json"}),
              0);
  }
  const std::string text = slurp(a / "budget.json");
  EXPECT_EQ(text, slurp(b / "budget.json"));
  const auto j = nlohmann::json::parse(text);
  EXPECT_NEAR(j["budget"]["total_error"].get<double>(), 0.021, 0.005);
  EXPECT_EQ(j["ftsnap_version"], version());
}

TEST(Cli, CheckPassesBundledGraphsAndFlagsDecay) {
  const fs::path dir = scratch_dir("check");
  ASSERT_EQ(run({"check", "--config", config_file("reproduction.yaml"), "--out", dir.string()}),
            0);
  const auto j = nlohmann::json::parse(slurp(dir / "check.json"));
  ASSERT_EQ(j["graphs"].size(), 3u);
  EXPECT_TRUE(j["graphs"][0]["pass"].get<bool>());
  EXPECT_TRUE(j["graphs"][1]["pass"].get<bool>());
  EXPECT_FALSE(j["graphs"][2]["pass"].get<bool>());
}

TEST(Cli, NoiselessGateAndWigner) {
  const fs::path dir = scratch_dir("noiseless");
  ASSERT_EQ(run({"simulate-gate", "--config", config_file("noiseless.yaml"), "--out",
                 dir.string(), "--seed", "5"}),
            0);
  const auto gate = nlohmann::json::parse(slurp(dir / "gate.json"));
  EXPECT_NEAR(gate["average_gate_fidelity"].get<double>(), 1.0, 1e-6);

  ASSERT_EQ(run({"wigner", "--config", config_file("noiseless.yaml"), "--out", dir.string(),
                 "--format", "json"}),
            0);
  const auto w = nlohmann::json::parse(slurp(dir / "wigner.json"));
  const auto& re = w["re_axis"];
  const auto& im = w["im_axis"];
  const std::size_t mid_re = re.size() / 2, mid_im = im.size() / 2;
  EXPECT_NEAR(re[mid_re].get<double>(), 0.0, 1e-12);
  EXPECT_NEAR(im[mid_im].get<double>(), 0.0, 1e-12);
  EXPECT_GT(w["values"][mid_im][mid_re].get<double>(), 0.0);
}

TEST(Cli, CsvCarriesVersionAndConfig) {
  const fs::path dir = scratch_dir("csv");
  ASSERT_EQ(run({"budget", "--config", config_file("reproduction.yaml"), "--out", dir.string()}),
            0);
  const std::string text = slurp(dir / "budget.csv");
  EXPECT_EQ(text.rfind("# ftsnap " + version(), 0), 0u) << text.substr(0, 80);
  EXPECT_NE(text.find("#   device:"), std::string::npos);
}

}  // namespace
}  // namespace ftsnap
