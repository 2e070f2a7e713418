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

#include "dpbandit/continual_release.h"

#include <bit>
#include <cmath>
#include <string>

#include "dpbandit/errors.h"

namespace dpbandit {

bool IsPowerOfTwo(std::uint64_t n) { return std::has_single_bit(n); }

BinaryMechanism::BinaryMechanism(double epsilon, std::uint64_t block_length,
                                 NoiseMode mode)
    : epsilon_(epsilon), block_length_(block_length), mode_(mode) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameterError("binary mechanism epsilon must be positive");
  }
  if (!IsPowerOfTwo(block_length)) {
    throw InvalidParameterError("block length must be a power of two, got " +
                                std::to_string(block_length));
  }
  levels_ = std::countr_zero(block_length);
  node_noise_scale_ = static_cast<double>(levels_) / epsilon_;
  completed_.assign(levels_, 0.0);
  last_noisy_.assign(levels_, 0.0);
  if (mode_ == NoiseMode::kDisabledForTesting) completed_true_.resize(levels_);
}

void BinaryMechanism::Insert(double value, RngStream& rng) {
  if (items_seen_ + 1 >= block_length_) {
    throw DomainError("binary mechanism block is full");
  }
  const std::uint64_t position = ++items_seen_;
  const int level = std::countr_zero(position);
  true_sum_ += value;

  // completed_[j] for j < level are the last completed nodes at those
  // levels; together with this leaf they form the new node at `level`.
  double node = value;
  for (int j = 0; j < level; ++j) {
    if (mode_ == NoiseMode::kDisabledForTesting) completed_true_[j].push_back(node);
    node += completed_[j];
    completed_[j] = 0.0;
  }
  if (mode_ == NoiseMode::kDisabledForTesting) completed_true_[level].push_back(node);
  completed_[level] = node;

  double noisy = node;
  if (mode_ == NoiseMode::kLaplace) {
    noisy += SampleLaplace({0.0, node_noise_scale_}, rng);
  }
  last_noisy_[level] = noisy;
}

double BinaryMechanism::Query() const {
  double sum = 0.0;
  for (int j = levels_ - 1; j >= 0; --j) {
    if ((items_seen_ >> j) & 1U) sum += last_noisy_[j];
  }
  return sum;
}

double BinaryMechanism::TrueSum() const { return true_sum_; }

int BinaryMechanism::NoisyNodesInQuery() const {
  return std::popcount(items_seen_);
}

double BinaryMechanism::CompletedNodeTrueSum(int level,
                                             std::uint64_t index) const {
  if (mode_ != NoiseMode::kDisabledForTesting) {
    throw DomainError("node sums are only retained in noise-off mode");
  }
  if (level < 0 || level >= levels_ || index >= completed_true_[level].size()) {
    throw InvalidParameterError("node not completed");
  }
  return completed_true_[level][index];
}

HybridMechanism::HybridMechanism(double epsilon, NoiseMode mode)
    : epsilon_(epsilon), mode_(mode), block_(epsilon > 0.0 ? epsilon : 1.0, 1, mode) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameterError("hybrid mechanism epsilon must be positive");
  }
}

void HybridMechanism::Insert(double r, RngStream& rng) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw DomainError("inserted statistic must lie in [0, 1], got " +
                      std::to_string(r));
  }
  ++count_;
  true_sum_ += r;
  if (IsPowerOfTwo(count_)) {
    log_snapshot_ = true_sum_;
    if (mode_ == NoiseMode::kLaplace) {
      log_snapshot_ += SampleLaplace({0.0, 1.0 / epsilon_}, rng);
    }
    block_ = BinaryMechanism(epsilon_, count_, mode_);
  } else {
    block_.Insert(r, rng);
  }
}

double HybridMechanism::Query() const {
  if (count_ == 0) throw EmptyStateError("hybrid mechanism has no items");
  return log_snapshot_ + block_.Query();
}

int HybridMechanism::NoisyTermsInQuery() const {
  if (count_ == 0) return 0;
  return 1 + block_.NoisyNodesInQuery();
}

double HybridErrorBound(double epsilon, double gamma, double n) {
  if (!(epsilon > 0.0)) throw InvalidParameterError("epsilon must be positive");
  // Meaningful for gamma < 1; accepted up to 4, where ln(4/gamma) hits 0.
  if (!(gamma > 0.0 && gamma < 4.0)) {
    throw InvalidParameterError("gamma must lie in (0, 4)");
  }
  if (!(n >= 1.0)) throw InvalidParameterError("n must be at least 1");
  const double scale = std::sqrt(8.0) / epsilon * std::log(4.0 / gamma);
  return scale * std::log(n) + scale;
}

}  // namespace dpbandit
