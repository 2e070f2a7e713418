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

#include "dpbandit/policies.h"

#include <cmath>
#include <string>

#include "dpbandit/errors.h"
#include "dpbandit/kernels.h"

namespace dpbandit {
namespace {

void CheckReward(double reward) {
  if (!(reward >= 0.0 && reward <= 1.0)) {
    throw DomainError("reward must lie in [0, 1], got " + std::to_string(reward));
  }
}

double ConfidenceNumerator(std::uint64_t t) {
  return 2.0 * std::log(static_cast<double>(t));
}

std::vector<RngStream> MakeArmStreams(std::size_t arms, std::uint64_t seed,
                                      std::uint64_t run) {
  std::vector<RngStream> streams;
  streams.reserve(arms);
  for (std::size_t a = 0; a < arms; ++a) {
    streams.emplace_back(seed, MakeStreamId(run, StreamRole::kMechanism,
                                            static_cast<std::uint32_t>(a)));
  }
  return streams;
}

}  // namespace

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kUcb:
      return "ucb";
    case Algorithm::kDpUcbBound:
      return "dp-ucb-bound";
    case Algorithm::kDpUcb:
      return "dp-ucb";
    case Algorithm::kDpUcbInt:
      return "dp-ucb-int";
  }
  return "ucb";
}

Algorithm ParseAlgorithm(std::string_view name) {
  if (name == "ucb") return Algorithm::kUcb;
  if (name == "dp-ucb-bound") return Algorithm::kDpUcbBound;
  if (name == "dp-ucb") return Algorithm::kDpUcb;
  if (name == "dp-ucb-int") return Algorithm::kDpUcbInt;
  throw ConfigError("algo", "unknown algorithm '" + std::string(name) +
                                "' (expected ucb, dp-ucb-bound, dp-ucb or dp-ucb-int)");
}

void PolicyConfig::Validate() const {
  if (arms == 0) throw InvalidParameterError("at least one arm is required");
  if (algorithm == Algorithm::kUcb) return;
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameterError("epsilon must be positive");
  }
  if (algorithm == Algorithm::kDpUcbInt) {
    // Range checks for epsilon and v live in ReleaseSchedule.
    ReleaseSchedule(schedule, epsilon, v);
  }
}

double NuBonus(std::uint64_t pulls, std::uint64_t t, double epsilon) {
  if (pulls == 0 || t == 0) throw InvalidParameterError("pulls and t must be >= 1");
  if (!(epsilon > 0.0)) throw InvalidParameterError("epsilon must be positive");
  // ln(4 t^4) without forming t^4.
  const double log_term = std::log(4.0) + 4.0 * std::log(static_cast<double>(t));
  const double scale = std::sqrt(8.0) / epsilon * log_term;
  if (IsPowerOfTwo(pulls)) return scale;
  return scale * std::log(static_cast<double>(pulls)) + scale;
}

Policy::Policy(const PolicyConfig& config)
    : config_(config),
      pulls_(config.arms, 0),
      pulls_real_(config.arms, 0.0),
      sums_(config.arms, 0.0),
      index_(config.arms, 0.0) {
  config_.Validate();
}

std::uint64_t Policy::InitSteps() const { return config_.arms; }

void Policy::RecordPull(std::size_t arm, double reward) {
  if (arm >= config_.arms) throw InvalidParameterError("arm index out of range");
  CheckReward(reward);
  ++step_;
  ++pulls_[arm];
  pulls_real_[arm] += 1.0;
  sums_[arm] += reward;
}

UcbPolicy::UcbPolicy(const PolicyConfig& config) : Policy(config) {}

std::size_t UcbPolicy::SelectAction() {
  const std::uint64_t t = step_ + 1;
  if (t <= InitSteps()) return static_cast<std::size_t>(t - 1);
  kernels::UcbIndices(sums_, pulls_real_, {}, ConfidenceNumerator(t), index_);
  return kernels::ArgMax(index_);
}

void UcbPolicy::Update(std::size_t arm, double reward) { RecordPull(arm, reward); }

HybridUcbPolicy::HybridUcbPolicy(const PolicyConfig& config, std::uint64_t seed,
                                 std::uint64_t run)
    : Policy(config),
      streams_(MakeArmStreams(config.arms, seed, run)),
      private_sums_(config.arms, 0.0),
      bonus_(config.arms, 0.0) {
  if (config.algorithm != Algorithm::kDpUcbBound &&
      config.algorithm != Algorithm::kDpUcb) {
    throw InvalidParameterError("HybridUcbPolicy serves dp-ucb-bound and dp-ucb");
  }
  mechanisms_.reserve(config.arms);
  for (std::size_t a = 0; a < config.arms; ++a) {
    mechanisms_.emplace_back(config.epsilon, config.noise);
  }
}

std::size_t HybridUcbPolicy::SelectAction() {
  const std::uint64_t t = step_ + 1;
  if (t <= InitSteps()) return static_cast<std::size_t>(t - 1);
  for (std::size_t a = 0; a < arms(); ++a) private_sums_[a] = mechanisms_[a].Query();
  std::span<const double> bonus;
  if (config_.algorithm == Algorithm::kDpUcbBound && !config_.zero_nu_for_testing) {
    for (std::size_t a = 0; a < arms(); ++a) {
      bonus_[a] = NuBonus(pulls_[a], t, config_.epsilon);
    }
    bonus = bonus_;
  }
  kernels::UcbIndices(private_sums_, pulls_real_, bonus, ConfidenceNumerator(t), index_);
  return kernels::ArgMax(index_);
}

void HybridUcbPolicy::Update(std::size_t arm, double reward) {
  RecordPull(arm, reward);
  if (config_.algorithm == Algorithm::kDpUcb) {
    for (std::size_t a = 0; a < arms(); ++a) {
      mechanisms_[a].Insert(a == arm ? reward : 0.0, streams_[a]);
    }
  } else {
    mechanisms_[arm].Insert(reward, streams_[arm]);
  }
}

IntervalUcbPolicy::IntervalUcbPolicy(const PolicyConfig& config, std::uint64_t seed,
                                     std::uint64_t run)
    : Policy(config),
      streams_(MakeArmStreams(config.arms, seed, run)),
      bonus_step_(config.arms, 0) {
  if (config.algorithm != Algorithm::kDpUcbInt) {
    throw InvalidParameterError("IntervalUcbPolicy serves dp-ucb-int");
  }
  const ReleaseSchedule schedule(config.schedule, config.epsilon, config.v);
  first_interval_ = schedule.FirstInterval();
  states_.reserve(config.arms);
  for (std::size_t a = 0; a < config.arms; ++a) states_.emplace_back(schedule, config.noise);
}

std::uint64_t IntervalUcbPolicy::InitSteps() const { return arms() * first_interval_; }

double IntervalUcbPolicy::Index(std::size_t arm, std::uint64_t t) const {
  const IntervalMeanState& state = states_[arm];
  if (!state.cached_release()) throw EmptyStateError("arm has no release yet");
  const std::uint64_t bonus_step = state.pulls() == state.pulls_at_release()
                                       ? t
                                       : bonus_step_[arm];
  return *state.cached_release() +
         std::sqrt(ConfidenceNumerator(bonus_step) /
                   static_cast<double>(state.pulls_at_release()));
}

std::size_t IntervalUcbPolicy::SelectAction() {
  const std::uint64_t t = step_ + 1;
  if (t <= InitSteps()) return static_cast<std::size_t>((t - 1) % arms());
  for (std::size_t a = 0; a < arms(); ++a) {
    if (states_[a].pulls() == states_[a].pulls_at_release()) bonus_step_[a] = t;
    index_[a] = Index(a, t);
  }
  return kernels::ArgMax(index_);
}

void IntervalUcbPolicy::Update(std::size_t arm, double reward) {
  RecordPull(arm, reward);
  IntervalMeanState& state = states_[arm];
  state.Add(reward);
  if (state.AtCheckpoint()) state.ReleaseMean(streams_[arm]);
}

std::unique_ptr<Policy> MakePolicy(const PolicyConfig& config, std::uint64_t seed,
                                   std::uint64_t run) {
  switch (config.algorithm) {
    case Algorithm::kUcb:
      return std::make_unique<UcbPolicy>(config);
    case Algorithm::kDpUcbBound:
    case Algorithm::kDpUcb:
      return std::make_unique<HybridUcbPolicy>(config, seed, run);
    case Algorithm::kDpUcbInt:
      return std::make_unique<IntervalUcbPolicy>(config, seed, run);
  }
  throw InvalidParameterError("unknown algorithm");
}

}  // namespace dpbandit
