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

#include "dpbandit/noise.h"

#include <cmath>
#include <string>

#include "dpbandit/errors.h"

namespace dpbandit {
namespace {

constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kPhiloxW0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kPhiloxW1 = 0xBB67AE8584CAA73BULL;

inline void MulHiLo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
  const unsigned __int128 product =
      static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
  hi = static_cast<std::uint64_t>(product >> 64);
  lo = static_cast<std::uint64_t>(product);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : key_{seed, stream_id} {}

RngStream::Block RngStream::Philox(Block counter, Key key) {
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, lo0, hi1, lo1;
    MulHiLo(kPhiloxM0, counter[0], hi0, lo0);
    MulHiLo(kPhiloxM1, counter[2], hi1, lo1);
    counter = {hi1 ^ counter[1] ^ key[0], lo1, hi0 ^ counter[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return counter;
}

std::uint64_t RngStream::NextU64() {
  if (buffered_ == 0) {
    buffer_ = Philox({block_index_, 0, 0, 0}, key_);
    ++block_index_;
    buffered_ = 4;
  }
  return buffer_[4 - buffered_--];
}

double RngStream::NextUniform() {
  // Midpoint of one of 2^53 equal cells: never exactly 0 or 1.
  return (static_cast<double>(NextU64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t MakeStreamId(std::uint64_t run, StreamRole role,
                           std::uint32_t arm) {
  return (run << 32) | (static_cast<std::uint64_t>(role) << 24) |
         (static_cast<std::uint64_t>(arm) & 0xFFFFFFULL);
}

void LaplaceParams::Validate() const {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidParameterError("laplace scale must be positive and finite, got " +
                                std::to_string(scale));
  }
  if (!std::isfinite(location)) {
    throw InvalidParameterError("laplace location must be finite");
  }
}

double LaplaceInverseCdf(const LaplaceParams& params, double u) {
  params.Validate();
  if (!(u > 0.0 && u < 1.0)) {
    throw InvalidParameterError("uniform draw must lie in (0, 1)");
  }
  const double centered = u - 0.5;
  if (centered == 0.0) return params.location;
  const double magnitude = -params.scale * std::log1p(-2.0 * std::fabs(centered));
  return params.location + (centered < 0.0 ? -magnitude : magnitude);
}

double SampleLaplace(const LaplaceParams& params, RngStream& rng) {
  return LaplaceInverseCdf(params, rng.NextUniform());
}

double LaplaceTailThreshold(double scale, double gamma) {
  if (!(scale > 0.0)) {
    throw InvalidParameterError("scale must be positive");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw InvalidParameterError("gamma must lie in (0, 1]");
  }
  return -scale * std::log(gamma);
}

}  // namespace dpbandit
