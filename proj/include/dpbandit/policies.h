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

// Bandit policies behind one interface:
//   ucb           non-private UCB1 with radius sqrt(2 ln t / n)
//   dp-ucb-bound  per-arm hybrid-mechanism sums plus the hybrid error bound
//                 nu_a / n_a added to the index
//   dp-ucb        hybrid-mechanism sums, every mechanism fed at every step
//                 (zeros for arms not pulled) so the noise is arm-symmetric
//   dp-ucb-int    interval-released noisy means
//
// Steps are 1-based; SelectAction() chooses the action for step t = step()+1
// and ln t in every index is taken at that t. Ties go to the lowest index.

#ifndef DPBANDIT_POLICIES_H_
#define DPBANDIT_POLICIES_H_

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "dpbandit/continual_release.h"
#include "dpbandit/interval_release.h"
#include "dpbandit/noise.h"

namespace dpbandit {

enum class Algorithm { kUcb, kDpUcbBound, kDpUcb, kDpUcbInt };

std::string_view AlgorithmName(Algorithm algorithm);
Algorithm ParseAlgorithm(std::string_view name);

struct PolicyConfig {
  Algorithm algorithm = Algorithm::kUcb;
  std::size_t arms = 2;
  // Mechanism epsilon (already calibrated for dp-ucb-int).
  double epsilon = 1.0;
  // Release exponent for dp-ucb-int.
  double v = 1.1;
  ScheduleVariant schedule = ScheduleVariant::kSimple;
  NoiseMode noise = NoiseMode::kLaplace;
  // dp-ucb-bound only: drop nu_a from the index. Oracle tests use this to
  // reduce the policy to plain UCB.
  bool zero_nu_for_testing = false;

  void Validate() const;
};

// Hybrid error bound with gamma = t^-4, divided out per arm in the
// dp-ucb-bound index. n_a a power of two (1 included) selects the short form
// sqrt(8)/eps ln(4 t^4); otherwise sqrt(8)/eps ln(4 t^4) (ln n_a + 1).
double NuBonus(std::uint64_t pulls, std::uint64_t t, double epsilon);

class Policy {
 public:
  explicit Policy(const PolicyConfig& config);
  virtual ~Policy() = default;

  Policy(const Policy&) = delete;
  Policy& operator=(const Policy&) = delete;

  // Action for step step() + 1.
  virtual std::size_t SelectAction() = 0;

  // Feeds the reward (in [0, 1]) of `arm` at the current step and advances
  // step() by one.
  virtual void Update(std::size_t arm, double reward) = 0;

  // Number of leading steps played round-robin.
  virtual std::uint64_t InitSteps() const;

  const PolicyConfig& config() const { return config_; }
  std::size_t arms() const { return config_.arms; }
  std::uint64_t step() const { return step_; }
  std::uint64_t pulls(std::size_t arm) const { return pulls_[arm]; }
  // True reward total of an arm (non-private bookkeeping).
  double reward_sum(std::size_t arm) const { return sums_[arm]; }

 protected:
  void RecordPull(std::size_t arm, double reward);

  PolicyConfig config_;
  std::uint64_t step_ = 0;
  std::vector<std::uint64_t> pulls_;
  std::vector<double> pulls_real_;
  std::vector<double> sums_;
  std::vector<double> index_;
};

class UcbPolicy final : public Policy {
 public:
  explicit UcbPolicy(const PolicyConfig& config);

  std::size_t SelectAction() override;
  void Update(std::size_t arm, double reward) override;
};

// dp-ucb-bound and dp-ucb.
class HybridUcbPolicy final : public Policy {
 public:
  HybridUcbPolicy(const PolicyConfig& config, std::uint64_t seed, std::uint64_t run);

  std::size_t SelectAction() override;
  void Update(std::size_t arm, double reward) override;

  const HybridMechanism& mechanism(std::size_t arm) const { return mechanisms_[arm]; }

 private:
  std::vector<HybridMechanism> mechanisms_;
  std::vector<RngStream> streams_;
  std::vector<double> private_sums_;
  std::vector<double> bonus_;
};

// dp-ucb-int. Each arm's noisy mean is drawn once, when its pull count hits a
// schedule checkpoint. While an arm sits on that checkpoint its confidence
// term sqrt(2 ln t / n) follows the current step; once the arm is pulled past
// the checkpoint the whole index is frozen until the next release.
class IntervalUcbPolicy final : public Policy {
 public:
  IntervalUcbPolicy(const PolicyConfig& config, std::uint64_t seed, std::uint64_t run);

  std::size_t SelectAction() override;
  void Update(std::size_t arm, double reward) override;
  std::uint64_t InitSteps() const override;

  const IntervalMeanState& state(std::size_t arm) const { return states_[arm]; }
  // Current index of an arm (valid after the init phase).
  double Index(std::size_t arm, std::uint64_t t) const;
  std::uint64_t first_interval() const { return first_interval_; }

 private:
  std::vector<IntervalMeanState> states_;
  std::vector<RngStream> streams_;
  std::vector<std::uint64_t> bonus_step_;
  std::uint64_t first_interval_;
};

// seed and run key the per-arm noise streams.
std::unique_ptr<Policy> MakePolicy(const PolicyConfig& config, std::uint64_t seed,
                                   std::uint64_t run);

}  // namespace dpbandit

#endif  // DPBANDIT_POLICIES_H_
