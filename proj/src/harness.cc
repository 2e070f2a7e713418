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

#include "dpbandit/harness.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "dpbandit/errors.h"
#include "dpbandit/kernels.h"

namespace dpbandit {

void BanditInstance::Validate() const {
  if (means.empty()) throw ConfigError("arms", "at least one arm is required");
  for (double m : means) {
    if (!(m >= 0.0 && m <= 1.0)) {
      throw ConfigError("arms", "arm means must lie in [0, 1], got " + std::to_string(m));
    }
  }
}

double BanditInstance::best_mean() const {
  return *std::max_element(means.begin(), means.end());
}

std::vector<double> BanditInstance::gaps() const {
  const double best = best_mean();
  std::vector<double> out;
  out.reserve(means.size());
  for (double m : means) out.push_back(best - m);
  return out;
}

RunResult RunEpisode(const PolicyConfig& policy_config, const BanditInstance& instance,
                     std::uint64_t horizon, std::uint64_t seed, std::uint64_t run) {
  instance.Validate();
  if (policy_config.arms != instance.means.size()) {
    throw ConfigError("arms", "policy arm count does not match the instance");
  }
  std::unique_ptr<Policy> policy = MakePolicy(policy_config, seed, run);
  if (horizon < policy->InitSteps()) {
    throw ConfigError("T", "horizon " + std::to_string(horizon) +
                               " is shorter than the initialisation phase of " +
                               std::to_string(policy->InitSteps()) + " steps");
  }

  RngStream environment(seed, MakeStreamId(run, StreamRole::kEnvironment, 0));
  const std::vector<double> gaps = instance.gaps();
  const double best = instance.best_mean();

  RunResult result;
  result.seed = seed;
  result.run = run;
  result.actions.reserve(horizon);
  result.rewards.reserve(horizon);
  result.pseudo_regret.reserve(horizon);
  result.empirical_regret.reserve(horizon);

  double pseudo = 0.0;
  double collected = 0.0;
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    const std::size_t arm = policy->SelectAction();
    const double reward = environment.NextUniform() < instance.means[arm] ? 1.0 : 0.0;
    policy->Update(arm, reward);
    pseudo += gaps[arm];
    collected += reward;
    result.actions.push_back(static_cast<std::uint32_t>(arm));
    result.rewards.push_back(reward);
    result.pseudo_regret.push_back(pseudo);
    result.empirical_regret.push_back(static_cast<double>(t) * best - collected);
  }
  result.final_pulls.resize(instance.means.size());
  for (std::size_t a = 0; a < instance.means.size(); ++a) {
    result.final_pulls[a] = policy->pulls(a);
  }
  return result;
}

std::vector<std::uint64_t> LoggingSteps(std::uint64_t horizon) {
  std::vector<std::uint64_t> steps;
  std::uint64_t stride = 1;
  std::uint64_t t = 1;
  while (t <= horizon) {
    steps.push_back(t);
    if (t == 10 * stride) stride *= 10;
    t += stride;
  }
  if (steps.empty() || steps.back() != horizon) steps.push_back(horizon);
  return steps;
}

void ExperimentConfig::Validate() const {
  instance.Validate();
  policy.Validate();
  if (runs == 0) throw ConfigError("runs", "runs must be at least 1");
  if (horizon == 0) throw ConfigError("T", "horizon must be at least 1");
  if (policy.arms != instance.means.size()) {
    throw ConfigError("arms", "policy arm count does not match the instance");
  }
}

double ExperimentSummary::FinalSpread() const {
  if (max_regret.empty()) return 0.0;
  return max_regret.back() - min_regret.back();
}

double ExperimentSummary::FinalStandardError() const {
  const std::size_t n = final_pseudo_regret.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double x : final_pseudo_regret) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : final_pseudo_regret) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

ExperimentSummary RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  const std::uint64_t horizon = config.horizon;

  ExperimentSummary summary;
  summary.runs = config.runs;
  summary.horizon = horizon;
  summary.mean_regret.assign(horizon, 0.0);
  summary.min_regret.assign(horizon, std::numeric_limits<double>::infinity());
  summary.max_regret.assign(horizon, -std::numeric_limits<double>::infinity());
  summary.mean_empirical_regret.assign(horizon, 0.0);
  summary.logged_steps = LoggingSteps(horizon);
  std::vector<double> scratch_min(horizon);
  std::vector<double> scratch_max(horizon);

  unsigned threads = config.threads;
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, config.runs));

  // Runs execute in batches of `threads`; each batch is reduced in run order
  // so the result does not depend on the worker count.
  std::vector<RunResult> batch(threads);
  for (std::uint64_t first = 0; first < config.runs; first += threads) {
    const std::uint64_t count = std::min<std::uint64_t>(threads, config.runs - first);
    auto work = [&](std::uint64_t slot) {
      batch[slot] = RunEpisode(config.policy, config.instance, horizon,
                               config.master_seed, first + slot);
    };
    if (count == 1) {
      work(0);
    } else {
      std::vector<std::jthread> workers;
      workers.reserve(count);
      for (std::uint64_t slot = 0; slot < count; ++slot) workers.emplace_back(work, slot);
    }
    for (std::uint64_t slot = 0; slot < count; ++slot) {
      const RunResult& run = batch[slot];
      kernels::AccumulateSumMinMax(run.pseudo_regret, summary.mean_regret,
                                   summary.min_regret, summary.max_regret);
      kernels::AccumulateSumMinMax(run.empirical_regret, summary.mean_empirical_regret,
                                   scratch_min, scratch_max);
      std::vector<double> at_logged;
      at_logged.reserve(summary.logged_steps.size());
      for (std::uint64_t t : summary.logged_steps) at_logged.push_back(run.pseudo_regret[t - 1]);
      summary.run_regret_at_logged.push_back(std::move(at_logged));
      summary.final_pseudo_regret.push_back(run.pseudo_regret.back());
      summary.final_empirical_regret.push_back(run.empirical_regret.back());
      batch[slot] = RunResult{};
    }
  }
  const double runs = static_cast<double>(config.runs);
  for (std::uint64_t i = 0; i < horizon; ++i) {
    // Rounding in the sum can push a mean of equal values one ulp outside
    // [min, max]; clamp so the band always contains the mean.
    summary.mean_regret[i] = std::clamp(summary.mean_regret[i] / runs,
                                        summary.min_regret[i], summary.max_regret[i]);
    summary.mean_empirical_regret[i] /= runs;
  }
  return summary;
}

AuditResult EmpiricalPrivacyAudit(const AuditConfig& config) {
  const std::uint64_t horizon = config.tape.size();
  if (horizon == 0 || horizon > kMaxAuditHorizon) {
    throw ConfigError("T_small", "audit horizon must lie in [1, " +
                                     std::to_string(kMaxAuditHorizon) + "]");
  }
  if (config.neighbour_tape.size() != horizon) {
    throw ConfigError("tape", "neighbouring tapes must have equal length");
  }
  std::size_t differing = 0;
  for (std::uint64_t t = 0; t < horizon; ++t) {
    if (config.tape[t] != config.neighbour_tape[t]) ++differing;
  }
  if (differing > 1) throw ConfigError("tape", "tapes must differ in at most one step");
  if (config.samples == 0) throw ConfigError("samples", "samples must be positive");
  config.policy.Validate();

  const std::size_t arms = config.policy.arms;
  AuditResult result;
  result.counts.assign(2, std::vector<std::vector<std::uint64_t>>(
                              horizon, std::vector<std::uint64_t>(arms, 0)));
  if (config.samples < 10000) {
    result.warnings.push_back("fewer than 1e4 samples: log-ratio estimates are coarse");
  }

  for (int which = 0; which < 2; ++which) {
    const std::vector<double>& tape = which == 0 ? config.tape : config.neighbour_tape;
    for (std::uint64_t s = 0; s < config.samples; ++s) {
      // Disjoint run indices keep the two tapes' noise independent.
      const std::uint64_t run = static_cast<std::uint64_t>(which) * config.samples + s;
      std::unique_ptr<Policy> policy = MakePolicy(config.policy, config.seed, run);
      for (std::uint64_t t = 0; t < horizon; ++t) {
        const std::size_t arm = policy->SelectAction();
        ++result.counts[which][t][arm];
        policy->Update(arm, tape[t]);
      }
    }
  }

  // Zero under one tape against at least 0.1% of samples under the other is
  // treated as a support mismatch rather than sampling noise.
  const std::uint64_t support_threshold =
      std::max<std::uint64_t>(10, config.samples / 1000);
  const double denominator = static_cast<double>(config.samples + arms);
  for (std::uint64_t t = 0; t < horizon; ++t) {
    for (std::size_t a = 0; a < arms; ++a) {
      const std::uint64_t c0 = result.counts[0][t][a];
      const std::uint64_t c1 = result.counts[1][t][a];
      if (std::min(c0, c1) == 0 && std::max(c0, c1) >= support_threshold) {
        result.support_mismatch = true;
      }
      const double p0 = (static_cast<double>(c0) + 1.0) / denominator;
      const double p1 = (static_cast<double>(c1) + 1.0) / denominator;
      result.max_log_ratio = std::max(result.max_log_ratio, std::fabs(std::log(p0 / p1)));
    }
  }
  if (result.support_mismatch) {
    result.max_log_ratio = std::numeric_limits<double>::infinity();
  }
  return result;
}

}  // namespace dpbandit
