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

// Privacy accounting for the interval-release policy (DP-UCB-Int): exact
// k-fold adaptive composition sums, their zeta-function closed forms, and the
// inversion that picks the mechanism epsilon for a target (eps', delta').

#ifndef DPBANDIT_ACCOUNTANT_H_
#define DPBANDIT_ACCOUNTANT_H_

#include <cstdint>

namespace dpbandit {

struct PrivacySpec {
  // Mechanism epsilon, in (0, 1].
  double epsilon = 1.0;
  // Release exponent, in (1, 1.5].
  double v = 1.1;
  // Target epsilon' in (0, 1]; informational, the sums only use epsilon.
  double target_epsilon = 1.0;
  // delta' in (0, 1].
  double delta = 1.0;

  void Validate() const;
};

// Riemann zeta for real v > 1, absolute error below 1e-12 on (1, 50].
double Zeta(double v);

// Both arguments of the min() in a composition bound.
struct PrivacyBranches {
  // Basic composition: sum of per-release epsilons.
  double basic;
  // Advanced composition with slack delta'.
  double advanced;

  double value() const { return basic < advanced ? basic : advanced; }
};

// Exact sums over every step n = 1..t:
//   basic    = sum eps n^(-v/2)
//   advanced = eps sum n^(-v/2) (e^(n^(-v/2)) - 1)
//              + sqrt(eps sum 2 ln(1/delta') n^(-v))
PrivacyBranches TotalPrivacyExactBranches(std::uint64_t t, const PrivacySpec& spec);
double TotalPrivacyExact(std::uint64_t t, const PrivacySpec& spec);

// Closed forms (integral test and e^x <= 1 + 2x on [0, 1]):
//   basic    = eps (t^(1 - v/2) - v/2) / (1 - v/2)
//   advanced = 2 eps zeta(v) + sqrt(2 eps zeta(v) ln(1/delta'))
PrivacyBranches TotalPrivacyClosedBranches(const PrivacySpec& spec, std::uint64_t t);
double TotalPrivacyClosed(const PrivacySpec& spec, std::uint64_t t);

// Mechanism epsilon whose closed-form advanced branch equals target_epsilon:
//   eps = (sqrt((L + 4 eps') / (8 zeta(v))) - sqrt(L / (8 zeta(v))))^2,
//   L = ln(1/delta').
double CalibrateEpsilon(double target_epsilon, double delta, double v);

}  // namespace dpbandit

#endif  // DPBANDIT_ACCOUNTANT_H_
