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

// Bernoulli bandit simulation: single episodes, multi-run experiments with
// deterministic aggregation, and a Monte-Carlo privacy audit over
// neighbouring reward tapes.

#ifndef DPBANDIT_HARNESS_H_
#define DPBANDIT_HARNESS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "dpbandit/bounds.h"
#include "dpbandit/policies.h"

namespace dpbandit {

struct BanditInstance {
  std::vector<double> means;

  void Validate() const;
  double best_mean() const;
  std::vector<double> gaps() const;
};

struct RunResult {
  std::uint64_t seed = 0;
  std::uint64_t run = 0;
  std::vector<std::uint32_t> actions;
  std::vector<double> rewards;
  // Cumulative sum of gaps of the pulled arms.
  std::vector<double> pseudo_regret;
  // t * mu_star - cumulative reward.
  std::vector<double> empirical_regret;
  std::vector<std::uint64_t> final_pulls;
};

// Plays `horizon` steps of Bernoulli rewards. Rewards for run `run` come from
// the stream (seed, run, environment); the policy's noise from (seed, run,
// mechanism, arm). Throws ConfigError when horizon does not cover the
// policy's round-robin initialisation.
RunResult RunEpisode(const PolicyConfig& policy, const BanditInstance& instance,
                     std::uint64_t horizon, std::uint64_t seed, std::uint64_t run = 0);

// t = 1..10, 20, 30, ..., 100, 200, ..., each decade in steps of its base,
// capped at and always ending with the horizon.
std::vector<std::uint64_t> LoggingSteps(std::uint64_t horizon);

struct ExperimentConfig {
  PolicyConfig policy;
  BanditInstance instance;
  std::uint64_t horizon = 1000;
  std::uint64_t runs = 1;
  std::uint64_t master_seed = 0;
  // 0 = hardware concurrency. Results do not depend on this.
  unsigned threads = 0;

  void Validate() const;
};

struct ExperimentSummary {
  std::uint64_t runs = 0;
  std::uint64_t horizon = 0;
  // Per step (index t - 1), pseudo-regret across runs.
  std::vector<double> mean_regret;
  std::vector<double> min_regret;
  std::vector<double> max_regret;
  // Per step mean of the empirical regret.
  std::vector<double> mean_empirical_regret;
  // Steps from LoggingSteps(horizon) and, per run, the pseudo-regret there.
  std::vector<std::uint64_t> logged_steps;
  std::vector<std::vector<double>> run_regret_at_logged;
  std::vector<double> final_pseudo_regret;
  std::vector<double> final_empirical_regret;

  // max - min pseudo-regret at the horizon.
  double FinalSpread() const;
  // Standard error of the mean final pseudo-regret.
  double FinalStandardError() const;
};

ExperimentSummary RunExperiment(const ExperimentConfig& config);

struct AuditConfig {
  PolicyConfig policy;
  // Rewards fed at steps 1..T, regardless of the arm pulled.
  std::vector<double> tape;
  std::vector<double> neighbour_tape;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
};

struct AuditResult {
  // max over steps and actions of |ln(p / p')| (add-one smoothed), or
  // +infinity when an action has solid support under one tape and none
  // under the other.
  double max_log_ratio = 0.0;
  bool support_mismatch = false;
  // counts[tape][step][arm]
  std::vector<std::vector<std::vector<std::uint64_t>>> counts;
  std::vector<std::string> warnings;
};

inline constexpr std::uint64_t kMaxAuditHorizon = 6;

AuditResult EmpiricalPrivacyAudit(const AuditConfig& config);

}  // namespace dpbandit

#endif  // DPBANDIT_HARNESS_H_
