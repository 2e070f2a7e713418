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

#include <atomic>
#include <cstdlib>
#include <string>
#include <string_view>

#include "dpbandit/errors.h"
#include "dpbandit/kernels.h"

namespace dpbandit::kernels {
namespace {

Isa InitialIsa() {
  const char* env = std::getenv("DPBANDIT_SIMD");
  if (env != nullptr && std::string_view(env) == "scalar") return Isa::kScalar;
  return DetectIsa();
}

std::atomic<Isa>& ActiveSlot() {
  static std::atomic<Isa> active{InitialIsa()};
  return active;
}

}  // namespace

std::string_view IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

bool IsaAvailable(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(DPBANDIT_HAVE_AVX2_VARIANT)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(DPBANDIT_HAVE_NEON_VARIANT)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa DetectIsa() {
  if (IsaAvailable(Isa::kAvx2)) return Isa::kAvx2;
  if (IsaAvailable(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

Isa ActiveIsa() { return ActiveSlot().load(std::memory_order_relaxed); }

void SetActiveIsa(Isa isa) {
  if (!IsaAvailable(isa)) {
    throw InvalidParameterError("SIMD variant not available: " +
                                std::string(IsaName(isa)));
  }
  ActiveSlot().store(isa, std::memory_order_relaxed);
}

#if defined(DPBANDIT_HAVE_AVX2_VARIANT)
#define DPBANDIT_AVX2_CASE(call) \
  case Isa::kAvx2:               \
    return avx2::call;
#else
#define DPBANDIT_AVX2_CASE(call)
#endif
#if defined(DPBANDIT_HAVE_NEON_VARIANT)
#define DPBANDIT_NEON_CASE(call) \
  case Isa::kNeon:               \
    return neon::call;
#else
#define DPBANDIT_NEON_CASE(call)
#endif

#define DPBANDIT_DISPATCH(call)  \
  switch (ActiveIsa()) {         \
    DPBANDIT_AVX2_CASE(call)     \
    DPBANDIT_NEON_CASE(call)     \
    default:                     \
      return scalar::call;       \
  }

void UcbIndices(std::span<const double> sums, std::span<const double> pulls,
                std::span<const double> bonus, double confidence_numerator,
                std::span<double> out) {
  DPBANDIT_DISPATCH(UcbIndices(sums, pulls, bonus, confidence_numerator, out))
}

std::size_t ArgMax(std::span<const double> values) {
  DPBANDIT_DISPATCH(ArgMax(values))
}

void AccumulateSumMinMax(std::span<const double> x, std::span<double> sum,
                         std::span<double> min, std::span<double> max) {
  DPBANDIT_DISPATCH(AccumulateSumMinMax(x, sum, min, max))
}

void AccumulateSquares(std::span<const double> x, std::span<double> sq) {
  DPBANDIT_DISPATCH(AccumulateSquares(x, sq))
}

double CompensatedSum(std::span<const double> x) {
  DPBANDIT_DISPATCH(CompensatedSum(x))
}

}  // namespace dpbandit::kernels
