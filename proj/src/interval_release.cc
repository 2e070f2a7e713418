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

#include "dpbandit/interval_release.h"

#include <cmath>
#include <string>

#include "dpbandit/errors.h"

namespace dpbandit {
namespace {

void ValidateEpsilonV(double epsilon, double v) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw InvalidParameterError("interval epsilon must lie in (0, 1], got " +
                                std::to_string(epsilon));
  }
  if (!(v > 1.0 && v <= 1.5)) {
    throw InvalidParameterError("v must lie in (1, 1.5], got " + std::to_string(v));
  }
}

// Neumaier accumulator for the incremental schedule scans.
class RunningSum {
 public:
  void Add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

std::string_view ScheduleVariantName(ScheduleVariant variant) {
  switch (variant) {
    case ScheduleVariant::kSimple:
      return "simple";
    case ScheduleVariant::kAdaptiveX:
      return "adaptive-x";
    case ScheduleVariant::kAdaptiveY:
      return "adaptive-y";
  }
  return "simple";
}

ScheduleVariant ParseScheduleVariant(std::string_view name) {
  if (name == "simple") return ScheduleVariant::kSimple;
  if (name == "adaptive-x") return ScheduleVariant::kAdaptiveX;
  if (name == "adaptive-y") return ScheduleVariant::kAdaptiveY;
  throw ConfigError("schedule", "unknown schedule variant '" + std::string(name) +
                                    "' (expected simple, adaptive-x or adaptive-y)");
}

ReleaseSchedule::ReleaseSchedule(ScheduleVariant variant, double epsilon, double v)
    : variant_(variant), epsilon_(epsilon), v_(v) {
  ValidateEpsilonV(epsilon, v);
  max_gap_ = static_cast<std::uint64_t>(std::ceil(1.0 / epsilon));
}

std::uint64_t ReleaseSchedule::NextCheckpoint(std::uint64_t current) const {
  if (variant_ == ScheduleVariant::kSimple) return current + max_gap_;

  const double exponent = variant_ == ScheduleVariant::kAdaptiveX ? v_ / 2.0 : v_;
  RunningSum window;
  for (std::uint64_t x = current + 1; x < current + max_gap_; ++x) {
    const double term = std::pow(static_cast<double>(x), -exponent);
    window.Add(term);
    if (window.value() >= term / epsilon_) return x;
  }
  // The window of ceil(1/eps) terms, each at least the last, always
  // satisfies the condition.
  return current + max_gap_;
}

double PrivacyPerRelease(std::uint64_t n, double v) {
  if (n == 0) throw InvalidParameterError("n must be at least 1");
  if (!(v >= 1.0 && v <= 1.5)) throw InvalidParameterError("v must lie in [1, 1.5]");
  return std::pow(static_cast<double>(n), -v / 2.0);
}

double IntervalNoiseScale(std::uint64_t n, double v) {
  if (n == 0) throw InvalidParameterError("n must be at least 1");
  if (!(v >= 1.0 && v <= 1.5)) throw InvalidParameterError("v must lie in [1, 1.5]");
  return std::pow(static_cast<double>(n), v / 2.0 - 1.0);
}

IntervalMeanState::IntervalMeanState(ReleaseSchedule schedule, NoiseMode mode)
    : schedule_(schedule),
      mode_(mode),
      next_checkpoint_(schedule.FirstInterval()) {}

void IntervalMeanState::Add(double reward) {
  if (!(reward >= 0.0 && reward <= 1.0)) {
    throw DomainError("reward must lie in [0, 1], got " + std::to_string(reward));
  }
  sum_ += reward;
  ++pulls_;
}

double IntervalMeanState::ReleaseMean(RngStream& rng) {
  if (pulls_ == 0) throw EmptyStateError("no pulls recorded; mean undefined");
  double mean = sum_ / static_cast<double>(pulls_);
  if (mode_ == NoiseMode::kLaplace) {
    mean += SampleLaplace({0.0, IntervalNoiseScale(pulls_, schedule_.v())}, rng);
  }
  cached_release_ = mean;
  pulls_at_release_ = pulls_;
  ++releases_;
  if (AtCheckpoint()) next_checkpoint_ = schedule_.NextCheckpoint(next_checkpoint_);
  return mean;
}

}  // namespace dpbandit
