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

#include <cmath>

#include "dpbandit/kernels.h"

namespace dpbandit::kernels::scalar {

void UcbIndices(std::span<const double> sums, std::span<const double> pulls,
                std::span<const double> bonus, double confidence_numerator,
                std::span<double> out) {
  const std::size_t n = out.size();
  for (std::size_t a = 0; a < n; ++a) {
    double index = sums[a] / pulls[a] + std::sqrt(confidence_numerator / pulls[a]);
    if (!bonus.empty()) index = index + bonus[a] / pulls[a];
    out[a] = index;
  }
}

std::size_t ArgMax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

void AccumulateSumMinMax(std::span<const double> x, std::span<double> sum,
                         std::span<double> min, std::span<double> max) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum[i] += x[i];
    min[i] = x[i] < min[i] ? x[i] : min[i];
    max[i] = x[i] > max[i] ? x[i] : max[i];
  }
}

void AccumulateSquares(std::span<const double> x, std::span<double> sq) {
  for (std::size_t i = 0; i < x.size(); ++i) sq[i] += x[i] * x[i];
}

double CompensatedSum(std::span<const double> x) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : x) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

}  // namespace dpbandit::kernels::scalar
