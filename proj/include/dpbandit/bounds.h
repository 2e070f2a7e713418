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

// Closed-form regret upper bounds for the four policies. "log" in every
// bound is the natural logarithm.

#ifndef DPBANDIT_BOUNDS_H_
#define DPBANDIT_BOUNDS_H_

#include <cstdint>
#include <span>
#include <vector>

namespace dpbandit {

class GapProfile {
 public:
  // means in [0, 1], nonempty.
  explicit GapProfile(std::vector<double> means);

  const std::vector<double>& means() const { return means_; }
  const std::vector<double>& gaps() const { return gaps_; }
  double best_mean() const { return best_; }

 private:
  std::vector<double> means_;
  std::vector<double> gaps_;
  double best_;
};

// B (ln B + 7): the simplification of -B W_{-1}(-1/(e B)), the smallest n
// with n >= B ln n + B. Requires B > 1.
double LambertWNeg1Approx(double b);

// Which B enters the dp-ucb-bound max(). kPerArmGap carries the 1/Delta_a
// factor of the full derivation (the default); kUnscaled is the form without
// it.
enum class BoundBForm { kPerArmGap, kUnscaled };

// sum_{a: Delta_a > 0} [ max(B_a (ln B_a + 7), 8 ln t / (lambda0^2 Delta_a))
//                        + Delta_a + 2 pi^2 Delta_a / 3 ]
// B_a = sqrt(8) ln(4 t^4) / (eps (1 - lambda0) Delta_a)
double RegretBoundDpUcbBound(std::uint64_t t, double epsilon, double lambda0,
                             const GapProfile& gaps,
                             BoundBForm form = BoundBForm::kPerArmGap);

// sum_a Delta_a [ max(C^2 (ln C + 7)^2, 8 ln t / Delta_a^2) + 1 + 4 zeta(1.5) ]
// C = 56 (2 + sqrt 3.5) sqrt(ln t) / eps
double RegretBoundDpUcb(std::uint64_t t, double epsilon, const GapProfile& gaps);

// C of RegretBoundDpUcb.
double DpUcbConstant(std::uint64_t t, double epsilon);

// sum_a Delta_a [ f0 + 8 ln t / Delta_a^2 + 1 + 4 zeta(1.5) ]
double RegretBoundInterval(std::uint64_t t, std::uint64_t f0, const GapProfile& gaps);

// Non-private UCB1 reference: RegretBoundInterval with f0 = 0.
double RegretBoundUcb(std::uint64_t t, const GapProfile& gaps);

}  // namespace dpbandit

#endif  // DPBANDIT_BOUNDS_H_
