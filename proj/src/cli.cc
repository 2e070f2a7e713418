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

#include <charconv>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "dpbandit/accountant.h"
#include "dpbandit/bounds.h"
#include "dpbandit/errors.h"
#include "dpbandit/kernels.h"

namespace dpbandit::cli {
namespace {

void AddRunOptions(CLI::App& app, RunOptions& o) {
  app.add_option("--algo", o.algorithm, "ucb | dp-ucb-bound | dp-ucb | dp-ucb-int")
      ->required();
  app.add_option("--arms", o.arms, "Comma-separated Bernoulli means")
      ->delimiter(',')
      ->required();
  app.add_option("-T,--T,--horizon", o.horizon, "Steps per run")->capture_default_str();
  app.add_option("--runs", o.runs, "Independent runs")->capture_default_str();
  app.add_option("--seed", o.seed, "Master seed")->capture_default_str();
  app.add_option("--eps", o.epsilon, "Mechanism epsilon");
  app.add_option("--target-eps", o.target_epsilon,
                 "Target epsilon' (calibrated for dp-ucb-int)");
  app.add_option("--delta", o.delta, "delta', a number or exp(-k)")->capture_default_str();
  app.add_option("--v", o.v, "Release exponent in (1, 1.5]")->capture_default_str();
  app.add_option("--schedule", o.schedule, "simple | adaptive-x | adaptive-y")
      ->capture_default_str();
  app.add_option("--lambda0", o.lambda0, "lambda0 of the dp-ucb-bound bound")
      ->capture_default_str();
  app.add_option("--bound", o.bound, "Emit the theoretical bound column")
      ->capture_default_str();
  app.add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  app.add_option("--out", o.out, "Output path prefix")->capture_default_str();
  app.add_option("--format", o.format, "csv | json | both")->capture_default_str();
  app.set_config("--config", "", "key = value config file with the same keys");
}

std::vector<std::string> Reversed(const std::vector<std::string>& args) {
  return {args.rbegin(), args.rend()};
}

std::vector<double> ParseTape(const std::string& text) {
  std::vector<double> tape;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) tape.push_back(std::stod(item));
  return tape;
}

}  // namespace

double ParseDelta(const std::string& text) {
  static const std::regex kExpForm(R"(^\s*(?:exp\(\s*|e\^\(?\s*)(-?[0-9.]+(?:[eE][-+]?[0-9]+)?)\s*\)?\s*$)");
  std::smatch match;
  double value = 0.0;
  try {
    if (std::regex_match(text, match, kExpForm)) {
      value = std::exp(std::stod(match[1].str()));
    } else {
      std::size_t used = 0;
      value = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing characters");
    }
  } catch (const std::logic_error&) {
    throw ConfigError("delta", "cannot parse '" + text + "' (use a number or exp(-k))");
  }
  if (!(value > 0.0 && value <= 1.0)) {
    throw ConfigError("delta", "delta must lie in (0, 1], got " + text);
  }
  return value;
}

RunOptions ParseRunArgs(const std::vector<std::string>& args) {
  RunOptions options;
  CLI::App app{"dpbandit run"};
  AddRunOptions(app, options);
  std::vector<std::string> reversed = Reversed(args);
  app.parse(reversed);
  return options;
}

ResolvedConfig Resolve(const RunOptions& options) {
  ResolvedConfig resolved;
  resolved.options = options;
  const Algorithm algorithm = ParseAlgorithm(options.algorithm);

  if (options.arms.empty()) throw ConfigError("arms", "at least one arm mean is required");
  for (double m : options.arms) {
    if (!(m >= 0.0 && m <= 1.0)) {
      throw ConfigError("arms", "arm means must lie in [0, 1], got " + FormatNumber(m));
    }
  }
  if (options.runs == 0) throw ConfigError("runs", "runs must be at least 1");
  if (options.horizon == 0) throw ConfigError("T", "horizon must be at least 1");
  if (!(options.v > 1.0 && options.v <= 1.5)) {
    throw ConfigError("v", "v must lie in (1, 1.5], got " + FormatNumber(options.v));
  }
  if (!(options.lambda0 > 0.0 && options.lambda0 < 1.0)) {
    throw ConfigError("lambda0", "lambda0 must lie in (0, 1)");
  }
  if (options.format != "csv" && options.format != "json" && options.format != "both") {
    throw ConfigError("format", "expected csv, json or both, got '" + options.format + "'");
  }
  resolved.delta = ParseDelta(options.delta);
  const ScheduleVariant schedule = ParseScheduleVariant(options.schedule);

  if (options.epsilon && options.target_epsilon) {
    throw ConfigError("eps", "give either --eps or --target-eps, not both");
  }
  if (algorithm != Algorithm::kUcb) {
    if (!options.epsilon && !options.target_epsilon) {
      throw ConfigError("eps", std::string(AlgorithmName(algorithm)) +
                                   " needs --eps or --target-eps");
    }
    const double given = options.epsilon ? *options.epsilon : *options.target_epsilon;
    const char* key = options.epsilon ? "eps" : "target-eps";
    if (!(given > 0.0) || !std::isfinite(given)) {
      throw ConfigError(key, "epsilon must be positive");
    }
    if (algorithm == Algorithm::kDpUcbInt) {
      if (!(given <= 1.0)) throw ConfigError(key, "dp-ucb-int needs epsilon in (0, 1]");
      resolved.mechanism_epsilon =
          options.epsilon ? given : CalibrateEpsilon(given, resolved.delta, options.v);
    } else {
      resolved.mechanism_epsilon = given;
    }
  }

  ExperimentConfig& experiment = resolved.experiment;
  experiment.instance.means = options.arms;
  experiment.horizon = options.horizon;
  experiment.runs = options.runs;
  experiment.master_seed = options.seed;
  experiment.threads = options.threads;
  experiment.policy.algorithm = algorithm;
  experiment.policy.arms = options.arms.size();
  experiment.policy.epsilon = algorithm == Algorithm::kUcb ? 1.0 : resolved.mechanism_epsilon;
  experiment.policy.v = options.v;
  experiment.policy.schedule = schedule;

  std::uint64_t init_steps = options.arms.size();
  if (algorithm == Algorithm::kDpUcbInt) {
    resolved.first_interval =
        ReleaseSchedule(schedule, resolved.mechanism_epsilon, options.v).FirstInterval();
    init_steps *= resolved.first_interval;
  }
  if (options.horizon < init_steps) {
    throw ConfigError("T", "horizon " + std::to_string(options.horizon) +
                               " is shorter than the initialisation phase of " +
                               std::to_string(init_steps) + " steps");
  }
  return resolved;
}

nlohmann::json OptionsToJson(const RunOptions& o) {
  nlohmann::json j;
  j["algo"] = o.algorithm;
  j["arms"] = o.arms;
  j["T"] = o.horizon;
  j["runs"] = o.runs;
  j["seed"] = o.seed;
  j["eps"] = o.epsilon ? nlohmann::json(*o.epsilon) : nlohmann::json(nullptr);
  j["target_eps"] =
      o.target_epsilon ? nlohmann::json(*o.target_epsilon) : nlohmann::json(nullptr);
  j["delta"] = o.delta;
  j["v"] = o.v;
  j["schedule"] = o.schedule;
  j["lambda0"] = o.lambda0;
  j["bound"] = o.bound;
  j["threads"] = o.threads;
  j["out"] = o.out;
  j["format"] = o.format;
  return j;
}

RunOptions OptionsFromJson(const nlohmann::json& j) {
  RunOptions o;
  try {
    o.algorithm = j.at("algo").get<std::string>();
    o.arms = j.at("arms").get<std::vector<double>>();
    o.horizon = j.at("T").get<std::uint64_t>();
    o.runs = j.at("runs").get<std::uint64_t>();
    o.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("eps").is_null()) o.epsilon = j.at("eps").get<double>();
    if (!j.at("target_eps").is_null()) o.target_epsilon = j.at("target_eps").get<double>();
    o.delta = j.at("delta").get<std::string>();
    o.v = j.at("v").get<double>();
    o.schedule = j.at("schedule").get<std::string>();
    o.lambda0 = j.at("lambda0").get<double>();
    o.bound = j.at("bound").get<bool>();
    o.threads = j.at("threads").get<unsigned>();
    o.out = j.at("out").get<std::string>();
    o.format = j.at("format").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config", std::string("malformed config echo: ") + e.what());
  }
  return o;
}

std::optional<double> BoundAt(const ResolvedConfig& config, std::uint64_t t) {
  if (t < 2) return std::nullopt;
  const GapProfile gaps(config.options.arms);
  double value = 0.0;
  switch (config.experiment.policy.algorithm) {
    case Algorithm::kUcb:
      value = RegretBoundUcb(t, gaps);
      break;
    case Algorithm::kDpUcbInt:
      value = RegretBoundInterval(t, config.first_interval, gaps);
      break;
    case Algorithm::kDpUcb:
      value = RegretBoundDpUcb(t, config.mechanism_epsilon, gaps);
      break;
    case Algorithm::kDpUcbBound:
      value = RegretBoundDpUcbBound(t, config.mechanism_epsilon, config.options.lambda0, gaps);
      break;
  }
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

std::string FormatNumber(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

void WriteCsv(std::ostream& out, const ResolvedConfig& config,
              const ExperimentSummary& summary) {
  const bool with_bound = config.options.bound;
  out << "t,mean_regret,min_regret,max_regret";
  if (with_bound) out << ",bound";
  out << '\n';
  for (std::uint64_t t : summary.logged_steps) {
    const std::size_t i = t - 1;
    out << t << ',' << FormatNumber(summary.mean_regret[i]) << ','
        << FormatNumber(summary.min_regret[i]) << ',' << FormatNumber(summary.max_regret[i]);
    if (with_bound) {
      out << ',';
      if (auto bound = BoundAt(config, t)) out << FormatNumber(*bound);
    }
    out << '\n';
  }
}

nlohmann::json SummaryJson(const ResolvedConfig& config, const ExperimentSummary& summary) {
  nlohmann::json j;
  j["config"] = OptionsToJson(config.options);
  j["seed"] = config.options.seed;

  nlohmann::json derived;
  derived["delta"] = config.delta;
  derived["mechanism_epsilon"] = config.experiment.policy.algorithm == Algorithm::kUcb
                                     ? nlohmann::json(nullptr)
                                     : nlohmann::json(config.mechanism_epsilon);
  if (config.experiment.policy.algorithm == Algorithm::kDpUcbInt) {
    derived["first_interval"] = config.first_interval;
  }
  j["derived"] = derived;

  nlohmann::json privacy;
  switch (config.experiment.policy.algorithm) {
    case Algorithm::kUcb:
      privacy["model"] = "none";
      break;
    case Algorithm::kDpUcb:
    case Algorithm::kDpUcbBound:
      privacy["model"] = "pure";
      privacy["epsilon"] = config.mechanism_epsilon;
      break;
    case Algorithm::kDpUcbInt: {
      PrivacySpec spec;
      spec.epsilon = config.mechanism_epsilon;
      spec.v = config.options.v;
      spec.target_epsilon = config.options.target_epsilon.value_or(1.0);
      spec.delta = config.delta;
      privacy["model"] = "approximate";
      privacy["t"] = summary.horizon;
      privacy["delta"] = config.delta;
      if (config.options.target_epsilon) privacy["target_epsilon"] = *config.options.target_epsilon;
      privacy["total_privacy_exact"] = TotalPrivacyExact(summary.horizon, spec);
      privacy["total_privacy_closed"] = TotalPrivacyClosed(spec, summary.horizon);
      break;
    }
  }
  j["privacy"] = privacy;

  nlohmann::json s;
  s["runs"] = summary.runs;
  s["T"] = summary.horizon;
  s["final_mean_regret"] = summary.mean_regret.back();
  s["final_min_regret"] = summary.min_regret.back();
  s["final_max_regret"] = summary.max_regret.back();
  s["final_spread"] = summary.FinalSpread();
  s["final_standard_error"] = summary.FinalStandardError();
  s["final_mean_empirical_regret"] = summary.mean_empirical_regret.back();
  j["summary"] = s;
  j["simd"] = std::string(kernels::IsaName(kernels::ActiveIsa()));
  return j;
}

void EmitResults(const ResolvedConfig& config, const ExperimentSummary& summary) {
  const std::string& format = config.options.format;
  if (format == "csv" || format == "both") {
    const std::string path = config.options.out + ".csv";
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path + " for writing");
    WriteCsv(file, config, summary);
    if (!file.flush()) throw std::runtime_error("failed writing " + path);
  }
  if (format == "json" || format == "both") {
    const std::string path = config.options.out + ".json";
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path + " for writing");
    file << SummaryJson(config, summary).dump(2) << '\n';
    if (!file.flush()) throw std::runtime_error("failed writing " + path);
  }
}

int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differentially private UCB bandits: experiments and accounting"};
  app.require_subcommand(1);

  RunOptions run_options;
  std::string replay_path;
  std::string replay_out;
  // `run` hands its arguments to a standalone parser: CLI11 only reads
  // config files for the top-level app.
  CLI::App* run = app.add_subcommand("run", "Run a multi-run regret experiment "
                                            "(see `run --help`)");
  run->prefix_command();
  run->set_help_flag();
  CLI::App* replay = app.add_subcommand("replay", "Rerun the experiment echoed in a JSON sidecar");
  replay->add_option("json", replay_path, "JSON sidecar written by run")->required();
  replay->add_option("--out", replay_out, "Output path prefix (default: the echoed one)");

  double cal_target = 1.0;
  std::string cal_delta = "exp(-10)";
  double cal_v = 1.1;
  CLI::App* calibrate = app.add_subcommand("calibrate", "Mechanism epsilon for a target (eps', delta')");
  calibrate->add_option("--target-eps", cal_target)->required();
  calibrate->add_option("--delta", cal_delta)->capture_default_str();
  calibrate->add_option("--v", cal_v)->capture_default_str();

  std::string audit_algo = "dp-ucb-int";
  std::optional<double> audit_eps;
  std::optional<double> audit_target;
  std::string audit_delta = "exp(-10)";
  double audit_v = 1.1;
  std::size_t audit_arms = 2;
  std::string audit_tape = "1,1,1,1";
  std::size_t audit_flip = 0;
  std::uint64_t audit_samples = 100000;
  std::uint64_t audit_seed = 1;
  CLI::App* audit = app.add_subcommand("audit", "Monte-Carlo privacy audit on neighbouring tapes");
  audit->add_option("--algo", audit_algo)->capture_default_str();
  audit->add_option("--eps", audit_eps);
  audit->add_option("--target-eps", audit_target);
  audit->add_option("--delta", audit_delta)->capture_default_str();
  audit->add_option("--v", audit_v)->capture_default_str();
  audit->add_option("--arms", audit_arms, "Number of arms")->capture_default_str();
  audit->add_option("--tape", audit_tape, "Comma-separated rewards, at most 6")->capture_default_str();
  audit->add_option("--flip", audit_flip, "0-based step whose reward is flipped")->capture_default_str();
  audit->add_option("--samples", audit_samples)->capture_default_str();
  audit->add_option("--seed", audit_seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (run->parsed()) {
    CLI::App run_app{"dpbandit run: multi-run regret experiment", "dpbandit run"};
    AddRunOptions(run_app, run_options);
    try {
      run_app.parse(Reversed(run->remaining()));
    } catch (const CLI::ParseError& e) {
      return run_app.exit(e, out, err);
    }
  }

  try {
    if (run->parsed() || replay->parsed()) {
      RunOptions options = run_options;
      if (replay->parsed()) {
        std::ifstream file(replay_path);
        if (!file) throw std::runtime_error("cannot read " + replay_path);
        const nlohmann::json echoed = nlohmann::json::parse(file);
        options = OptionsFromJson(echoed.at("config"));
        if (!replay_out.empty()) options.out = replay_out;
      }
      const ResolvedConfig config = Resolve(options);
      const ExperimentSummary summary = RunExperiment(config.experiment);
      EmitResults(config, summary);
      out << "algo=" << options.algorithm << " runs=" << summary.runs
          << " T=" << summary.horizon
          << " final_mean_regret=" << FormatNumber(summary.mean_regret.back());
      if (config.experiment.policy.algorithm != Algorithm::kUcb) {
        out << " mechanism_epsilon=" << FormatNumber(config.mechanism_epsilon);
      }
      out << '\n';
    } else if (calibrate->parsed()) {
      const double delta = ParseDelta(cal_delta);
      out << FormatNumber(CalibrateEpsilon(cal_target, delta, cal_v)) << '\n';
    } else if (audit->parsed()) {
      AuditConfig audit_config;
      audit_config.policy.algorithm = ParseAlgorithm(audit_algo);
      audit_config.policy.arms = audit_arms;
      audit_config.policy.v = audit_v;
      if (audit_eps && audit_target) throw ConfigError("eps", "give either --eps or --target-eps");
      if (audit_config.policy.algorithm == Algorithm::kDpUcbInt && audit_target) {
        audit_config.policy.epsilon = CalibrateEpsilon(*audit_target, ParseDelta(audit_delta), audit_v);
      } else if (audit_eps || audit_target) {
        audit_config.policy.epsilon = audit_eps ? *audit_eps : *audit_target;
      }
      audit_config.tape = ParseTape(audit_tape);
      if (audit_flip >= audit_config.tape.size()) throw ConfigError("flip", "flip index outside tape");
      audit_config.neighbour_tape = audit_config.tape;
      audit_config.neighbour_tape[audit_flip] = 1.0 - audit_config.tape[audit_flip];
      audit_config.samples = audit_samples;
      audit_config.seed = audit_seed;
      const AuditResult result = EmpiricalPrivacyAudit(audit_config);
      nlohmann::json j;
      j["max_log_ratio"] = std::isfinite(result.max_log_ratio)
                               ? nlohmann::json(result.max_log_ratio)
                               : nlohmann::json("inf");
      j["support_mismatch"] = result.support_mismatch;
      j["mechanism_epsilon"] = audit_config.policy.epsilon;
      j["warnings"] = result.warnings;
      out << j.dump(2) << '\n';
    }
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace dpbandit::cli
