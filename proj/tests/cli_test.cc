// Copyright 2026 The dpbandit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpbandit/cli.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dpbandit/accountant.h"
#include "dpbandit/errors.h"
#include "dpbandit/harness.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace dpbandit::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dpbandit_cli_" + std::string(::testing::UnitTest::GetInstance()
                                              ->current_test_info()
                                              ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  int Run(std::vector<std::string> args, std::string* out_text = nullptr,
          std::string* err_text = nullptr) {
    args.insert(args.begin(), "dpbandit");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = Main(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
  }

  fs::path dir_;
};

std::string ReadFile(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  std::stringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> ReadCsv(const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(ReadFile(path));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(cells);
  }
  return rows;
}

TEST(ParseDeltaTest, AcceptsNumbersAndExponentials) {
  EXPECT_DOUBLE_EQ(ParseDelta("exp(-10)"), std::exp(-10.0));
  EXPECT_DOUBLE_EQ(ParseDelta("e^-10"), std::exp(-10.0));
  EXPECT_DOUBLE_EQ(ParseDelta("exp(-2.5)"), std::exp(-2.5));
  EXPECT_DOUBLE_EQ(ParseDelta("0.001"), 0.001);
  EXPECT_DOUBLE_EQ(ParseDelta("1"), 1.0);
}

TEST(ParseDeltaTest, RejectsGarbageAndOutOfRange) {
  for (const char* bad : {"", "exp(", "abc", "0", "2", "exp(1)", "0.1x"}) {
    try {
      ParseDelta(bad);
      ADD_FAILURE() << bad;
    } catch (const ConfigError& e) {
      EXPECT_EQ(e.key(), "delta");
    }
  }
}

TEST(ParseRunArgsTest, ScenarioFlags) {
  const RunOptions o = ParseRunArgs({"--algo", "dp-ucb-int", "--arms", "0.9,0.6", "--T",
                                     "100000", "--runs", "100", "--target-eps", "1", "--delta",
                                     "exp(-10)", "--v", "1.1"});
  EXPECT_EQ(o.algorithm, "dp-ucb-int");
  EXPECT_EQ(o.arms, (std::vector<double>{0.9, 0.6}));
  EXPECT_EQ(o.horizon, 100000u);
  EXPECT_EQ(o.runs, 100u);
  ASSERT_TRUE(o.target_epsilon);
  EXPECT_FALSE(o.epsilon);
  const ResolvedConfig r = Resolve(o);
  EXPECT_NEAR(r.mechanism_epsilon, 0.0039643169494507, 1e-15);
  EXPECT_EQ(r.first_interval, 253u);
  EXPECT_EQ(r.experiment.policy.arms, 2u);
}

TEST_F(CliTest, MissingArmsIsAUsageError) {
  std::string err;
  EXPECT_NE(Run({"run", "--algo", "ucb", "--out", Path("x")}, nullptr, &err), 0);
  EXPECT_NE(err.find("--arms"), std::string::npos);
}

TEST(ResolveTest, ErrorsNameTheOffendingKey) {
  auto key_of = [](RunOptions o) {
    try {
      Resolve(o);
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("none");
  };
  RunOptions base;
  base.algorithm = "dp-ucb-int";
  base.arms = {0.9, 0.6};
  base.target_epsilon = 1.0;
  base.horizon = 1000;
  EXPECT_EQ(key_of(base), "none");

  RunOptions o = base;
  o.algorithm = "exp3";
  EXPECT_EQ(key_of(o), "algo");
  o = base;
  o.epsilon = 0.5;
  EXPECT_EQ(key_of(o), "eps");
  o = base;
  o.v = 1.6;
  EXPECT_EQ(key_of(o), "v");
  o = base;
  o.runs = 0;
  EXPECT_EQ(key_of(o), "runs");
  o = base;
  o.arms = {0.9, 1.2};
  EXPECT_EQ(key_of(o), "arms");
  o = base;
  o.delta = "exp(3)";
  EXPECT_EQ(key_of(o), "delta");
  o = base;
  o.horizon = 100;
  EXPECT_EQ(key_of(o), "T");
  o = base;
  o.schedule = "eager";
  EXPECT_EQ(key_of(o), "schedule");
  o = base;
  o.format = "xml";
  EXPECT_EQ(key_of(o), "format");
  o = base;
  o.target_epsilon.reset();
  EXPECT_EQ(key_of(o), "eps");
  o = base;
  o.target_epsilon = 2.0;
  EXPECT_EQ(key_of(o), "target-eps");
}

TEST_F(CliTest, CalibrateEchoesMechanismEpsilon) {
  std::string out;
  ASSERT_EQ(Run({"calibrate", "--target-eps", "1", "--delta", "exp(-10)", "--v", "1.1"}, &out), 0);
  EXPECT_NEAR(std::stod(out), CalibrateEpsilon(1.0, std::exp(-10.0), 1.1), 1e-17);
}

TEST_F(CliTest, CsvFollowsLoggingSchedule) {
  ASSERT_EQ(Run({"run", "--algo", "ucb", "--arms", "0.9,0.6", "--T", "100000", "--runs", "1",
                 "--out", Path("ucb")}),
            0);
  const auto rows = ReadCsv(Path("ucb.csv"));
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows[0], (std::vector<std::string>{"t", "mean_regret", "min_regret", "max_regret",
                                               "bound"}));
  const auto steps = LoggingSteps(100000);
  ASSERT_EQ(rows.size(), steps.size() + 1);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& row = rows[i + 1];
    ASSERT_EQ(row.size(), 5u);
    EXPECT_EQ(std::stoull(row[0]), steps[i]);
    // runs = 1: the band collapses onto the mean.
    EXPECT_EQ(row[1], row[2]);
    EXPECT_EQ(row[1], row[3]);
    for (int c = 1; c < 4; ++c) EXPECT_TRUE(std::isfinite(std::stod(row[c])));
    if (steps[i] >= 2) {
      EXPECT_TRUE(std::isfinite(std::stod(row[4])));
    }
  }
}

TEST_F(CliTest, JsonPrivacyReportWithinTarget) {
  ASSERT_EQ(Run({"run", "--algo", "dp-ucb-int", "--arms", "0.9,0.6", "--T", "5000", "--runs",
                 "3", "--target-eps", "0.5", "--out", Path("int")}),
            0);
  const auto j = nlohmann::json::parse(ReadFile(Path("int.json")));
  EXPECT_EQ(j.at("seed"), 1);
  EXPECT_EQ(j.at("config").at("algo"), "dp-ucb-int");
  const auto& privacy = j.at("privacy");
  const double exact = privacy.at("total_privacy_exact").get<double>();
  const double closed = privacy.at("total_privacy_closed").get<double>();
  EXPECT_LE(exact, 0.5 + 1e-9);
  EXPECT_LE(closed, 0.5 + 1e-9);
  EXPECT_LE(exact, closed + 1e-12);
  EXPECT_NEAR(j.at("derived").at("mechanism_epsilon").get<double>(),
              CalibrateEpsilon(0.5, std::exp(-10.0), 1.1), 1e-15);
}

TEST_F(CliTest, AllEmittedNumbersAreFinite) {
  for (const char* algo : {"ucb", "dp-ucb", "dp-ucb-bound", "dp-ucb-int"}) {
    const std::string out = Path(algo);
    ASSERT_EQ(Run({"run", "--algo", algo, "--arms", "0.1,0.55,0.2", "--T", "3000", "--runs", "4",
                   "--target-eps", "0.5", "--out", out}),
              0)
        << algo;
    const std::string csv = ReadFile(out + ".csv");
    EXPECT_EQ(csv.find("nan"), std::string::npos);
    EXPECT_EQ(csv.find("inf"), std::string::npos);
    std::function<void(const nlohmann::json&)> check = [&](const nlohmann::json& node) {
      if (node.is_number()) {
        EXPECT_TRUE(std::isfinite(node.get<double>())) << algo;
      }
      if (node.is_structured()) {
        for (const auto& child : node) check(child);
      }
    };
    check(nlohmann::json::parse(ReadFile(out + ".json")));
  }
}

TEST_F(CliTest, ReplayReproducesCsvByteForByte) {
  ASSERT_EQ(Run({"run", "--algo", "dp-ucb", "--arms", "0.9,0.6", "--T", "4000", "--runs", "5",
                 "--eps", "0.5", "--seed", "17", "--out", Path("a")}),
            0);
  ASSERT_EQ(Run({"replay", Path("a.json"), "--out", Path("b")}), 0);
  EXPECT_EQ(ReadFile(Path("a.csv")), ReadFile(Path("b.csv")));
  const std::string a = ReadFile(Path("a.csv"));
  EXPECT_GT(a.size(), 100u);
}

TEST_F(CliTest, ConfigFileSuppliesOptions) {
  {
    std::ofstream cfg(Path("exp.toml"));
    cfg << "algo = \"dp-ucb-int\"\narms = [0.9, 0.6]\nT = 2000\nruns = 2\neps = 0.25\n"
        << "out = \"" << Path("cfg") << "\"\nformat = \"json\"\n";
  }
  ASSERT_EQ(Run({"run", "--config", Path("exp.toml")}), 0);
  const auto j = nlohmann::json::parse(ReadFile(Path("cfg.json")));
  EXPECT_EQ(j.at("config").at("T"), 2000);
  EXPECT_EQ(j.at("config").at("eps"), 0.25);
  EXPECT_EQ(j.at("derived").at("first_interval"), 4);
  EXPECT_FALSE(fs::exists(Path("cfg.csv")));
}

TEST_F(CliTest, ConflictingEpsilonIsAUsageError) {
  std::string err;
  EXPECT_EQ(Run({"run", "--algo", "dp-ucb-int", "--arms", "0.9,0.6", "--eps", "0.1",
                 "--target-eps", "1", "--out", Path("x")},
                nullptr, &err),
            2);
  EXPECT_NE(err.find("eps"), std::string::npos);
}

TEST_F(CliTest, AuditReportsSentinelForUcb) {
  std::string out;
  ASSERT_EQ(Run({"audit", "--algo", "ucb", "--tape", "1,0,0,0", "--flip", "0", "--samples",
                 "2000"},
                &out),
            0);
  const auto j = nlohmann::json::parse(out);
  EXPECT_EQ(j.at("max_log_ratio"), "inf");
  EXPECT_TRUE(j.at("support_mismatch").get<bool>());
}

#ifdef DPBANDIT_BINARY
TEST_F(CliTest, BinaryRunsEndToEnd) {
  const std::string cmd = std::string(DPBANDIT_BINARY) +
                          " run --algo dp-ucb-int --arms 0.9,0.6 --T 3000 --runs 2 "
                          "--target-eps 1 --out " +
                          Path("bin") + " > " + Path("stdout.txt");
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_TRUE(fs::exists(Path("bin.csv")));
  EXPECT_NE(ReadFile(Path("stdout.txt")).find("mechanism_epsilon=0.0039643"),
            std::string::npos);
  const std::string bad = std::string(DPBANDIT_BINARY) + " run --algo ucb --out " + Path("y") +
                          " 2> /dev/null";
  EXPECT_NE(std::system(bad.c_str()), 0);
}
#endif

}  // namespace
}  // namespace dpbandit::cli
