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

#ifndef DPBANDIT_NOISE_H_
#define DPBANDIT_NOISE_H_

#include <array>
#include <cstdint>

namespace dpbandit {

// Counter-based generator (Philox4x64-10). The key is (seed, stream_id) and
// the counter is the block index, so every (seed, stream_id) pair is an
// independent stream and the output is identical on every platform.
class RngStream {
 public:
  using Block = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return key_[0]; }
  std::uint64_t stream_id() const { return key_[1]; }

  std::uint64_t NextU64();

  // Uniform on the open interval (0, 1), 53 bits of resolution.
  double NextUniform();

  // Raw Philox4x64-10 bijection; exposed for known-answer tests.
  static Block Philox(Block counter, Key key);

 private:
  Key key_;
  std::uint64_t block_index_ = 0;
  Block buffer_{};
  int buffered_ = 0;
};

// Packs (run, role, arm) into a stream id. Layout: bits 63..32 run index,
// bits 31..24 role, bits 23..0 arm.
enum class StreamRole : std::uint8_t {
  kEnvironment = 0,
  kMechanism = 1,
  kLogMechanism = 2,
  kAudit = 3,
};

std::uint64_t MakeStreamId(std::uint64_t run, StreamRole role,
                           std::uint32_t arm);

// Mechanisms accept kDisabledForTesting only so oracle tests can compare the
// noiseless statistic with a brute-force reference.
enum class NoiseMode { kLaplace, kDisabledForTesting };

struct LaplaceParams {
  double location = 0.0;
  double scale = 1.0;

  void Validate() const;
};

// Inverse CDF of Laplace(location, scale) at u in (0, 1).
double LaplaceInverseCdf(const LaplaceParams& params, double u);

// One draw by inverse CDF; consumes exactly one uniform from `rng`.
double SampleLaplace(const LaplaceParams& params, RngStream& rng);

// b ln(1/gamma): Pr(|Y| >= threshold) = gamma for Y ~ Laplace(b).
double LaplaceTailThreshold(double scale, double gamma);

}  // namespace dpbandit

#endif  // DPBANDIT_NOISE_H_
