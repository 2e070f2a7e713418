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

// Data-parallel inner loops. Each kernel has a scalar reference
// implementation and vector variants (AVX2 on x86-64, NEON on AArch64);
// the widest variant the CPU supports is selected once at startup.
//
// Contract shared by all variants:
//   * UcbIndices and the Accumulate* kernels are bit-identical to the scalar
//     reference (same operation order per element, no FMA contraction).
//   * CompensatedSum agrees with the scalar reference to a few ulps; the lane
//     split changes the rounding sequence but both are compensated.

#ifndef DPBANDIT_KERNELS_H_
#define DPBANDIT_KERNELS_H_

#include <cstddef>
#include <span>
#include <string_view>

namespace dpbandit::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view IsaName(Isa isa);

// Best variant available on this machine (and compiled in).
Isa DetectIsa();

// Currently selected variant. DPBANDIT_SIMD=scalar in the environment forces
// the reference path.
Isa ActiveIsa();

// Overrides the active variant; throws if `isa` is not available here.
void SetActiveIsa(Isa isa);

bool IsaAvailable(Isa isa);

// out[a] = sums[a] / pulls[a] + sqrt(confidence_numerator / pulls[a])
//          + bonus[a] / pulls[a]
// `bonus` may be empty, meaning all zero. pulls[a] must be > 0.
void UcbIndices(std::span<const double> sums, std::span<const double> pulls,
                std::span<const double> bonus, double confidence_numerator,
                std::span<double> out);

// First index of the maximum (lowest index wins ties). values nonempty.
std::size_t ArgMax(std::span<const double> values);

// Elementwise running aggregates: sum[i] += x[i]; min/max likewise.
void AccumulateSumMinMax(std::span<const double> x, std::span<double> sum,
                         std::span<double> min, std::span<double> max);

// Elementwise sum of squares accumulation: sq[i] += x[i] * x[i].
void AccumulateSquares(std::span<const double> x, std::span<double> sq);

// Neumaier-compensated sum.
double CompensatedSum(std::span<const double> x);

// Direct access to individual variants, for equivalence tests.
namespace scalar {
void UcbIndices(std::span<const double> sums, std::span<const double> pulls,
                std::span<const double> bonus, double confidence_numerator,
                std::span<double> out);
std::size_t ArgMax(std::span<const double> values);
void AccumulateSumMinMax(std::span<const double> x, std::span<double> sum,
                         std::span<double> min, std::span<double> max);
void AccumulateSquares(std::span<const double> x, std::span<double> sq);
double CompensatedSum(std::span<const double> x);
}  // namespace scalar

#define DPBANDIT_DECLARE_VARIANT(ns)                                          \
  namespace ns {                                                              \
  void UcbIndices(std::span<const double> sums, std::span<const double> pulls, \
                  std::span<const double> bonus, double confidence_numerator, \
                  std::span<double> out);                                     \
  std::size_t ArgMax(std::span<const double> values);                         \
  void AccumulateSumMinMax(std::span<const double> x, std::span<double> sum,  \
                           std::span<double> min, std::span<double> max);    \
  void AccumulateSquares(std::span<const double> x, std::span<double> sq);    \
  double CompensatedSum(std::span<const double> x);                           \
  }

#if defined(__x86_64__) || defined(_M_X64)
#define DPBANDIT_HAVE_AVX2_VARIANT 1
DPBANDIT_DECLARE_VARIANT(avx2)
#endif
#if defined(__aarch64__)
#define DPBANDIT_HAVE_NEON_VARIANT 1
DPBANDIT_DECLARE_VARIANT(neon)
#endif

#undef DPBANDIT_DECLARE_VARIANT

}  // namespace dpbandit::kernels

#endif  // DPBANDIT_KERNELS_H_
