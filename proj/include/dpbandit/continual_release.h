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

// Continual release of a private running sum over a stream of values in
// [0, 1]: the binary (tree) mechanism, and the hybrid mechanism that
// releases a fresh Laplace-noised total at every power-of-two count and uses
// a binary mechanism for the items in between.

#ifndef DPBANDIT_CONTINUAL_RELEASE_H_
#define DPBANDIT_CONTINUAL_RELEASE_H_

#include <cstdint>
#include <vector>

#include "dpbandit/noise.h"

namespace dpbandit {

bool IsPowerOfTwo(std::uint64_t n);

// Binary mechanism for the block [m, 2m) of a hybrid mechanism, m =
// `block_length` a power of two. The block's first item is covered by the
// hybrid's power-of-two release, so the tree holds at most m - 1 leaves and
// its root never completes: each item lies in at most levels = log2(m)
// released nodes, and every node is noised with Laplace(levels / epsilon).
//
// Node noise is drawn once, when the node's span completes, and cached. Of
// the nodes completing at a given leaf only the largest can ever appear in a
// prefix decomposition, so exactly one Laplace variate is drawn per insert.
class BinaryMechanism {
 public:
  BinaryMechanism(double epsilon, std::uint64_t block_length,
                  NoiseMode mode = NoiseMode::kLaplace);

  // Adds `value` as the next leaf. Throws once m - 1 leaves are filled.
  void Insert(double value, RngStream& rng);

  // Noisy sum of all items inserted so far (sum of the completed nodes in
  // the binary decomposition of items_seen()).
  double Query() const;

  // Exact sum of the items inserted so far.
  double TrueSum() const;

  std::uint64_t items_seen() const { return items_seen_; }
  std::uint64_t block_length() const { return block_length_; }
  int levels() const { return levels_; }
  double node_noise_scale() const { return node_noise_scale_; }

  // Laplace draws contributing to Query(): popcount(items_seen()).
  int NoisyNodesInQuery() const;

  // True (pre-noise) sum of the node at `level` covering leaves
  // [index * 2^level, (index + 1) * 2^level). Only completed nodes.
  double CompletedNodeTrueSum(int level, std::uint64_t index) const;

 private:
  double epsilon_;
  std::uint64_t block_length_;
  int levels_;
  double node_noise_scale_;
  NoiseMode mode_;
  std::uint64_t items_seen_ = 0;
  // Per level: true and noisy sums of the most recently completed node.
  std::vector<double> completed_;
  std::vector<double> last_noisy_;
  double true_sum_ = 0.0;
  // Noise-off mode only: true sums of every completed node, per level.
  std::vector<std::vector<double>> completed_true_;
};

class HybridMechanism {
 public:
  explicit HybridMechanism(double epsilon,
                           NoiseMode mode = NoiseMode::kLaplace);

  // r must lie in [0, 1]; values outside are rejected, not clamped.
  void Insert(double r, RngStream& rng);

  // Released private sum of everything inserted; deterministic given state.
  double Query() const;

  double TrueSum() const { return true_sum_; }
  std::uint64_t count() const { return count_; }
  double epsilon() const { return epsilon_; }

  // Laplace draws contributing to Query() (1 from the last power-of-two
  // release plus the tree nodes).
  int NoisyTermsInQuery() const;

  const BinaryMechanism& current_block() const { return block_; }

 private:
  double epsilon_;
  NoiseMode mode_;
  std::uint64_t count_ = 0;
  double true_sum_ = 0.0;
  double log_snapshot_ = 0.0;
  BinaryMechanism block_;
};

// With probability at least 1 - gamma the hybrid mechanism's error after n
// items is below (sqrt(8)/eps) ln(4/gamma) ln(n) + (sqrt(8)/eps) ln(4/gamma).
// n is real-valued so the bound can be evaluated off the integers.
double HybridErrorBound(double epsilon, double gamma, double n);

}  // namespace dpbandit

#endif  // DPBANDIT_CONTINUAL_RELEASE_H_
