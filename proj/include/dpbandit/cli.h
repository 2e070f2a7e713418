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

// Experiment configuration from flags or a key = value config file, and the
// CSV / JSON result files.
//
// CSV: header "t,mean_regret,min_regret,max_regret,bound" (the bound column
// only with bounds enabled), one row per step of LoggingSteps(T). Numbers use
// the shortest round-trip decimal form; an undefined bound is left empty.
//
// JSON sidecar: {"config": <every option, enough to rerun>, "derived":
// {...}, "privacy": {...}, "summary": {...}}.

#ifndef DPBANDIT_CLI_H_
#define DPBANDIT_CLI_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dpbandit/harness.h"
#include "json.hpp"

namespace dpbandit::cli {

struct RunOptions {
  std::string algorithm;
  std::vector<double> arms;
  std::uint64_t horizon = 100000;
  std::uint64_t runs = 100;
  std::uint64_t seed = 1;
  std::optional<double> epsilon;
  std::optional<double> target_epsilon;
  std::string delta = "exp(-10)";
  double v = 1.1;
  std::string schedule = "simple";
  double lambda0 = 0.5;
  bool bound = true;
  unsigned threads = 0;
  std::string out = "results";
  std::string format = "both";
};

struct ResolvedConfig {
  RunOptions options;
  ExperimentConfig experiment;
  double delta = 0.0;
  // Epsilon the mechanisms run with: --eps as given, or, for dp-ucb-int with
  // --target-eps, the calibrated value. Pure-DP algorithms take
  // --target-eps as their epsilon directly.
  double mechanism_epsilon = 0.0;
  // dp-ucb-int only: first release interval f0.
  std::uint64_t first_interval = 0;
};

// Accepts a decimal number, "exp(-k)" or "e^-k".
double ParseDelta(const std::string& text);

// Parses "run" arguments (no program name, no subcommand). Throws
// ConfigError on semantic problems; CLI11 parse errors propagate as
// CLI::ParseError.
RunOptions ParseRunArgs(const std::vector<std::string>& args);

// Validates options and derives the experiment. Throws ConfigError naming
// the offending key.
ResolvedConfig Resolve(const RunOptions& options);

nlohmann::json OptionsToJson(const RunOptions& options);
RunOptions OptionsFromJson(const nlohmann::json& json);

// Bound for the configured algorithm at step t; nullopt where undefined.
std::optional<double> BoundAt(const ResolvedConfig& config, std::uint64_t t);

std::string FormatNumber(double value);

void WriteCsv(std::ostream& out, const ResolvedConfig& config,
              const ExperimentSummary& summary);

nlohmann::json SummaryJson(const ResolvedConfig& config, const ExperimentSummary& summary);

// Writes <out>.csv and/or <out>.json per options.format. Throws
// std::runtime_error on I/O failure.
void EmitResults(const ResolvedConfig& config, const ExperimentSummary& summary);

// Entry point shared by the binary and the tests; returns the exit code.
int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dpbandit::cli

#endif  // DPBANDIT_CLI_H_
