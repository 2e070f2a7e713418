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

#include "dpbandit/bounds.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dpbandit/accountant.h"
#include "dpbandit/errors.h"

namespace dpbandit {
namespace {

void CheckHorizon(std::uint64_t t) {
  if (t < 2) throw InvalidParameterError("bounds need t >= 2, got " + std::to_string(t));
}

double Zeta15() {
  static const double value = Zeta(1.5);
  return value;
}

}  // namespace

GapProfile::GapProfile(std::vector<double> means) : means_(std::move(means)) {
  if (means_.empty()) throw InvalidParameterError("gap profile needs at least one arm");
  for (double m : means_) {
    if (!(m >= 0.0 && m <= 1.0)) {
      throw InvalidParameterError("arm means must lie in [0, 1], got " + std::to_string(m));
    }
  }
  best_ = *std::max_element(means_.begin(), means_.end());
  gaps_.reserve(means_.size());
  for (double m : means_) gaps_.push_back(best_ - m);
}

double LambertWNeg1Approx(double b) {
  if (!(b > 1.0)) throw DomainError("W_{-1} approximation needs B > 1");
  return b * (std::log(b) + 7.0);
}

double RegretBoundDpUcbBound(std::uint64_t t, double epsilon, double lambda0,
                             const GapProfile& gaps, BoundBForm form) {
  CheckHorizon(t);
  if (!(epsilon > 0.0)) throw InvalidParameterError("epsilon must be positive");
  if (!(lambda0 > 0.0 && lambda0 < 1.0)) {
    throw InvalidParameterError("lambda0 must lie in (0, 1)");
  }
  const double log_t = std::log(static_cast<double>(t));
  const double log_4t4 = std::log(4.0) + 4.0 * log_t;
  double total = 0.0;
  for (double gap : gaps.gaps()) {
    if (!(gap > 0.0)) continue;
    double b = std::sqrt(8.0) * log_4t4 / (epsilon * (1.0 - lambda0));
    if (form == BoundBForm::kPerArmGap) b /= gap;
    const double privacy_pulls = LambertWNeg1Approx(b);
    const double ucb_pulls = 8.0 / (lambda0 * lambda0 * gap) * log_t;
    total += std::max(privacy_pulls, ucb_pulls) + gap +
             2.0 * std::numbers::pi * std::numbers::pi * gap / 3.0;
  }
  return total;
}

double DpUcbConstant(std::uint64_t t, double epsilon) {
  if (t < 1) throw InvalidParameterError("t must be at least 1");
  if (!(epsilon > 0.0)) throw InvalidParameterError("epsilon must be positive");
  return 56.0 * (2.0 + std::sqrt(3.5)) * std::sqrt(std::log(static_cast<double>(t))) /
         epsilon;
}

double RegretBoundDpUcb(std::uint64_t t, double epsilon, const GapProfile& gaps) {
  CheckHorizon(t);
  const double c = DpUcbConstant(t, epsilon);
  const double log_t = std::log(static_cast<double>(t));
  const double privacy_pulls = c * c * (std::log(c) + 7.0) * (std::log(c) + 7.0);
  double total = 0.0;
  for (double gap : gaps.gaps()) {
    if (!(gap > 0.0)) continue;
    total += gap * (std::max(privacy_pulls, 8.0 / (gap * gap) * log_t) + 1.0 +
                    4.0 * Zeta15());
  }
  return total;
}

double RegretBoundInterval(std::uint64_t t, std::uint64_t f0, const GapProfile& gaps) {
  CheckHorizon(t);
  const double log_t = std::log(static_cast<double>(t));
  double total = 0.0;
  for (double gap : gaps.gaps()) {
    if (!(gap > 0.0)) continue;
    total += gap * (static_cast<double>(f0) + 8.0 / (gap * gap) * log_t + 1.0 +
                    4.0 * Zeta15());
  }
  return total;
}

double RegretBoundUcb(std::uint64_t t, const GapProfile& gaps) {
  return RegretBoundInterval(t, 0, gaps);
}

}  // namespace dpbandit
