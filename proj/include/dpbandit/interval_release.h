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

// Interval (lazy) release of a per-arm private mean: the mean is re-released
// only at checkpoints of a release schedule, each release adding Laplace
// noise of scale n^(v/2 - 1), which is n^(-v/2)-DP for a mean over n values
// in [0, 1].

#ifndef DPBANDIT_INTERVAL_RELEASE_H_
#define DPBANDIT_INTERVAL_RELEASE_H_

#include <cstdint>
#include <optional>
#include <string_view>

#include "dpbandit/noise.h"

namespace dpbandit {

enum class ScheduleVariant { kSimple, kAdaptiveX, kAdaptiveY };

std::string_view ScheduleVariantName(ScheduleVariant variant);
ScheduleVariant ParseScheduleVariant(std::string_view name);

// Checkpoints W_0 = 0 < W_1 < ... in units of an arm's pull count.
//   simple:     W_{n+1} = W_n + ceil(1/eps)
//   adaptive-x: smallest x >= W_n + 1 with
//               sum_{i=W_n+1}^{x} i^(-v/2) >= (1/eps) x^(-v/2)
//   adaptive-y: the same with exponent v instead of v/2.
// Every gap lies in [1, ceil(1/eps)].
class ReleaseSchedule {
 public:
  ReleaseSchedule(ScheduleVariant variant, double epsilon, double v);

  std::uint64_t NextCheckpoint(std::uint64_t current) const;

  // W_1, the length of the first interval.
  std::uint64_t FirstInterval() const { return NextCheckpoint(0); }

  std::uint64_t MaxGap() const { return max_gap_; }
  ScheduleVariant variant() const { return variant_; }
  double epsilon() const { return epsilon_; }
  double v() const { return v_; }

 private:
  ScheduleVariant variant_;
  double epsilon_;
  double v_;
  std::uint64_t max_gap_;
};

// n^(-v/2): privacy of one release over n pulls.
double PrivacyPerRelease(std::uint64_t n, double v);

// n^(v/2 - 1): Laplace scale of one release over n pulls.
double IntervalNoiseScale(std::uint64_t n, double v);

class IntervalMeanState {
 public:
  IntervalMeanState(ReleaseSchedule schedule,
                    NoiseMode mode = NoiseMode::kLaplace);

  // Records one reward in [0, 1].
  void Add(double reward);

  // Whether the pull count sits exactly on the next schedule checkpoint.
  bool AtCheckpoint() const { return pulls_ == next_checkpoint_; }

  // s/n + Laplace(n^(v/2 - 1)), not clamped. Caches the value and, if the
  // state is at a checkpoint, moves on to the following one.
  double ReleaseMean(RngStream& rng);

  std::optional<double> cached_release() const { return cached_release_; }
  double sum() const { return sum_; }
  std::uint64_t pulls() const { return pulls_; }
  std::uint64_t next_checkpoint() const { return next_checkpoint_; }
  std::uint64_t releases() const { return releases_; }
  // Pull count at the time of the cached release.
  std::uint64_t pulls_at_release() const { return pulls_at_release_; }
  const ReleaseSchedule& schedule() const { return schedule_; }

 private:
  ReleaseSchedule schedule_;
  NoiseMode mode_;
  double sum_ = 0.0;
  std::uint64_t pulls_ = 0;
  std::uint64_t next_checkpoint_;
  std::uint64_t releases_ = 0;
  std::uint64_t pulls_at_release_ = 0;
  std::optional<double> cached_release_;
};

}  // namespace dpbandit

#endif  // DPBANDIT_INTERVAL_RELEASE_H_
