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

#include "dpbandit/accountant.h"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "dpbandit/errors.h"
#include "dpbandit/kernels.h"

namespace dpbandit {
namespace {

void CheckUnitInterval(double x, const char* name) {
  if (!(x > 0.0 && x <= 1.0)) {
    throw InvalidParameterError(std::string(name) + " must lie in (0, 1], got " +
                                std::to_string(x));
  }
}

// sum_{n=1}^{t} term(n), compensated, in fixed-size chunks.
template <typename Term>
double SumSeries(std::uint64_t t, Term term) {
  constexpr std::uint64_t kChunk = 4096;
  std::vector<double> buffer;
  std::vector<double> chunk_sums;
  buffer.reserve(kChunk);
  for (std::uint64_t start = 1; start <= t; start += kChunk) {
    const std::uint64_t stop = std::min(t, start + kChunk - 1);
    buffer.clear();
    for (std::uint64_t n = start; n <= stop; ++n) buffer.push_back(term(n));
    chunk_sums.push_back(kernels::CompensatedSum(buffer));
  }
  return kernels::CompensatedSum(chunk_sums);
}

// Euler-Maclaurin tail for sum_{n >= N} n^(-v), through the B_12 term.
double ZetaTail(double v, double big_n, double* last_term) {
  static constexpr std::array<double, 6> kBernoulliOverFactorial = {
      1.0 / 6.0 / 2.0,
      -1.0 / 30.0 / 24.0,
      1.0 / 42.0 / 720.0,
      -1.0 / 30.0 / 40320.0,
      5.0 / 66.0 / 3628800.0,
      -691.0 / 2730.0 / 479001600.0,
  };
  double tail = std::pow(big_n, 1.0 - v) / (v - 1.0) + 0.5 * std::pow(big_n, -v);
  // rising = v (v+1) ... (v+2k-2); power = N^(-v-2k+1)
  double rising = v;
  double power = std::pow(big_n, -v - 1.0);
  double term = 0.0;
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    if (k > 0) {
      rising *= (v + 2.0 * k - 1.0) * (v + 2.0 * k);
      power /= big_n * big_n;
    }
    term = kBernoulliOverFactorial[k] * rising * power;
    tail += term;
  }
  *last_term = std::fabs(term);
  return tail;
}

}  // namespace

void PrivacySpec::Validate() const {
  CheckUnitInterval(epsilon, "epsilon");
  CheckUnitInterval(target_epsilon, "target epsilon");
  CheckUnitInterval(delta, "delta");
  if (!(v > 1.0 && v <= 1.5)) {
    throw InvalidParameterError("v must lie in (1, 1.5], got " + std::to_string(v));
  }
}

double Zeta(double v) {
  if (!(v > 1.0)) {
    throw DomainError("zeta diverges for v <= 1, got " + std::to_string(v));
  }
  // Grow N until the last Euler-Maclaurin correction is negligible.
  for (std::uint64_t big_n = 16;; big_n *= 2) {
    double last_term = 0.0;
    const double tail = ZetaTail(v, static_cast<double>(big_n), &last_term);
    if (last_term < 1e-15 || big_n >= (1ULL << 20)) {
      const double head = SumSeries(big_n - 1, [v](std::uint64_t n) {
        return std::pow(static_cast<double>(n), -v);
      });
      return head + tail;
    }
  }
}

PrivacyBranches TotalPrivacyExactBranches(std::uint64_t t, const PrivacySpec& spec) {
  spec.Validate();
  if (t == 0) throw InvalidParameterError("t must be at least 1");
  const double half_v = spec.v / 2.0;
  const double log_inv_delta = -std::log(spec.delta);

  const double per_release = SumSeries(t, [half_v](std::uint64_t n) {
    return std::pow(static_cast<double>(n), -half_v);
  });
  const double second_order = SumSeries(t, [half_v](std::uint64_t n) {
    const double e = std::pow(static_cast<double>(n), -half_v);
    return e * std::expm1(e);
  });
  const double squares = SumSeries(t, [&spec, log_inv_delta](std::uint64_t n) {
    return 2.0 * log_inv_delta * std::pow(static_cast<double>(n), -spec.v);
  });
  return {spec.epsilon * per_release,
          spec.epsilon * second_order + std::sqrt(spec.epsilon * squares)};
}

double TotalPrivacyExact(std::uint64_t t, const PrivacySpec& spec) {
  return TotalPrivacyExactBranches(t, spec).value();
}

PrivacyBranches TotalPrivacyClosedBranches(const PrivacySpec& spec, std::uint64_t t) {
  spec.Validate();
  if (t == 0) throw InvalidParameterError("t must be at least 1");
  const double half_v = spec.v / 2.0;
  if (half_v == 1.0) throw InvalidParameterError("v = 2 makes the integral bound singular");
  const double basic = spec.epsilon *
                       (std::pow(static_cast<double>(t), 1.0 - half_v) - half_v) /
                       (1.0 - half_v);
  const double zeta_term = 2.0 * spec.epsilon * Zeta(spec.v);
  const double advanced = zeta_term + std::sqrt(zeta_term * -std::log(spec.delta));
  return {basic, advanced};
}

double TotalPrivacyClosed(const PrivacySpec& spec, std::uint64_t t) {
  return TotalPrivacyClosedBranches(spec, t).value();
}

double CalibrateEpsilon(double target_epsilon, double delta, double v) {
  CheckUnitInterval(target_epsilon, "target epsilon");
  CheckUnitInterval(delta, "delta");
  if (!(v > 1.0 && v <= 1.5)) {
    throw InvalidParameterError("v must lie in (1, 1.5], got " + std::to_string(v));
  }
  const double log_inv_delta = -std::log(delta);
  // sqrt(L + 4e') - sqrt(L), rewritten to avoid cancellation for large L.
  const double root_gap = 4.0 * target_epsilon /
                          (std::sqrt(log_inv_delta + 4.0 * target_epsilon) +
                           std::sqrt(log_inv_delta));
  return root_gap * root_gap / (8.0 * Zeta(v));
}

}  // namespace dpbandit
