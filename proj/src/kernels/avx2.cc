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

// Compiled with -mavx2; only reached after DetectIsa() confirms support.

#include <immintrin.h>

#include <cmath>

#include "dpbandit/kernels.h"

namespace dpbandit::kernels::avx2 {

void UcbIndices(std::span<const double> sums, std::span<const double> pulls,
                std::span<const double> bonus, double confidence_numerator,
                std::span<double> out) {
  const std::size_t n = out.size();
  const __m256d numer = _mm256_set1_pd(confidence_numerator);
  std::size_t a = 0;
  for (; a + 4 <= n; a += 4) {
    const __m256d s = _mm256_loadu_pd(sums.data() + a);
    const __m256d p = _mm256_loadu_pd(pulls.data() + a);
    __m256d index = _mm256_add_pd(_mm256_div_pd(s, p),
                                  _mm256_sqrt_pd(_mm256_div_pd(numer, p)));
    if (!bonus.empty()) {
      const __m256d b = _mm256_loadu_pd(bonus.data() + a);
      index = _mm256_add_pd(index, _mm256_div_pd(b, p));
    }
    _mm256_storeu_pd(out.data() + a, index);
  }
  for (; a < n; ++a) {
    double index = sums[a] / pulls[a] + std::sqrt(confidence_numerator / pulls[a]);
    if (!bonus.empty()) index = index + bonus[a] / pulls[a];
    out[a] = index;
  }
}

std::size_t ArgMax(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 8) return scalar::ArgMax(values);
  __m256d best = _mm256_loadu_pd(values.data());
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) {
    best = _mm256_max_pd(_mm256_loadu_pd(values.data() + i), best);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double max = lanes[0];
  for (int l = 1; l < 4; ++l) max = lanes[l] > max ? lanes[l] : max;
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
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x.data() + i);
    _mm256_storeu_pd(sum.data() + i,
                     _mm256_add_pd(_mm256_loadu_pd(sum.data() + i), v));
    _mm256_storeu_pd(min.data() + i,
                     _mm256_min_pd(v, _mm256_loadu_pd(min.data() + i)));
    _mm256_storeu_pd(max.data() + i,
                     _mm256_max_pd(v, _mm256_loadu_pd(max.data() + i)));
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
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x.data() + i);
    _mm256_storeu_pd(sq.data() + i, _mm256_add_pd(_mm256_loadu_pd(sq.data() + i),
                                                  _mm256_mul_pd(v, v)));
  }
  for (; i < n; ++i) sq[i] += x[i] * x[i];
}

double CompensatedSum(std::span<const double> x) {
  const std::size_t n = x.size();
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d sum = _mm256_setzero_pd();
  __m256d carry = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x.data() + i);
    const __m256d t = _mm256_add_pd(sum, v);
    const __m256d sum_bigger = _mm256_cmp_pd(_mm256_andnot_pd(sign_mask, sum),
                                             _mm256_andnot_pd(sign_mask, v),
                                             _CMP_GE_OQ);
    const __m256d if_sum = _mm256_add_pd(_mm256_sub_pd(sum, t), v);
    const __m256d if_v = _mm256_add_pd(_mm256_sub_pd(v, t), sum);
    carry = _mm256_add_pd(carry, _mm256_blendv_pd(if_v, if_sum, sum_bigger));
    sum = t;
  }
  alignas(32) double partial[8];
  _mm256_store_pd(partial, sum);
  _mm256_store_pd(partial + 4, carry);
  // Fold lanes and the tail through the scalar accumulator.
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
  for (int l = 0; l < 4; ++l) add(partial[l]);
  for (; i < n; ++i) add(x[i]);
  for (int l = 4; l < 8; ++l) c += partial[l];
  return s + c;
}

}  // namespace dpbandit::kernels::avx2
