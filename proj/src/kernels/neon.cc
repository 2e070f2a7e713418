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

#include <arm_neon.h>

#include <cmath>

#include "dpbandit/kernels.h"

namespace dpbandit::kernels::neon {

void UcbIndices(std::span<const double> sums, std::span<const double> pulls,
                std::span<const double> bonus, double confidence_numerator,
                std::span<double> out) {
  const std::size_t n = out.size();
  const float64x2_t numer = vdupq_n_f64(confidence_numerator);
  std::size_t a = 0;
  for (; a + 2 <= n; a += 2) {
    const float64x2_t s = vld1q_f64(sums.data() + a);
    const float64x2_t p = vld1q_f64(pulls.data() + a);
    float64x2_t index = vaddq_f64(vdivq_f64(s, p), vsqrtq_f64(vdivq_f64(numer, p)));
    if (!bonus.empty()) {
      index = vaddq_f64(index, vdivq_f64(vld1q_f64(bonus.data() + a), p));
    }
    vst1q_f64(out.data() + a, index);
  }
  for (; a < n; ++a) {
    double index = sums[a] / pulls[a] + std::sqrt(confidence_numerator / pulls[a]);
    if (!bonus.empty()) index = index + bonus[a] / pulls[a];
    out[a] = index;
  }
}

std::size_t ArgMax(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 4) return scalar::ArgMax(values);
  float64x2_t best = vld1q_f64(values.data());
  std::size_t i = 2;
  for (; i + 2 <= n; i += 2) best = vmaxq_f64(best, vld1q_f64(values.data() + i));
  double max = vmaxvq_f64(best);
  for (; i < n; ++i) max = values[i] > max ? values[i] : max;
  for (std::size_t j = 0; j < n; ++j) {
    if (values[j] == max) return j;
  }
  return 0;
}

void AccumulateSumMinMax(std::span<const double> x, std::span<double> sum,
                         std::span<double> min, std::span<double> max) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v = vld1q_f64(x.data() + i);
    vst1q_f64(sum.data() + i, vaddq_f64(vld1q_f64(sum.data() + i), v));
    vst1q_f64(min.data() + i, vminq_f64(v, vld1q_f64(min.data() + i)));
    vst1q_f64(max.data() + i, vmaxq_f64(v, vld1q_f64(max.data() + i)));
  }
  for (; i < n; ++i) {
    sum[i] += x[i];
    min[i] = x[i] < min[i] ? x[i] : min[i];
    max[i] = x[i] > max[i] ? x[i] : max[i];
  }
}

void AccumulateSquares(std::span<const double> x, std::span<double> sq) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v = vld1q_f64(x.data() + i);
    // vmulq then vaddq, not vfmaq: must round like the scalar path.
    vst1q_f64(sq.data() + i, vaddq_f64(vld1q_f64(sq.data() + i), vmulq_f64(v, v)));
  }
  for (; i < n; ++i) sq[i] += x[i] * x[i];
}

double CompensatedSum(std::span<const double> x) {
  const std::size_t n = x.size();
  float64x2_t sum = vdupq_n_f64(0.0);
  float64x2_t carry = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v = vld1q_f64(x.data() + i);
    const float64x2_t t = vaddq_f64(sum, v);
    const uint64x2_t sum_bigger = vcgeq_f64(vabsq_f64(sum), vabsq_f64(v));
    const float64x2_t if_sum = vaddq_f64(vsubq_f64(sum, t), v);
    const float64x2_t if_v = vaddq_f64(vsubq_f64(v, t), sum);
    carry = vaddq_f64(carry, vbslq_f64(sum_bigger, if_sum, if_v));
    sum = t;
  }
  double s = 0.0;
  double c = 0.0;
  auto add = [&](double v) {
    const double t = s + v;
    if (std::fabs(s) >= std::fabs(v)) {
      c += (s - t) + v;
    } else {
      c += (v - t) + s;
    }
    s = t;
  };
  add(vgetq_lane_f64(sum, 0));
  add(vgetq_lane_f64(sum, 1));
  for (; i < n; ++i) add(x[i]);
  c += vgetq_lane_f64(carry, 0);
  c += vgetq_lane_f64(carry, 1);
  return s + c;
}

}  // namespace dpbandit::kernels::neon
