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
#include <vector>

#include "dpbandit/errors.h"
#include "dpbandit/noise.h"
#include "gtest/gtest.h"

namespace dpbandit {
namespace {

TEST(IsPowerOfTwoTest, Basics) {
  EXPECT_FALSE(IsPowerOfTwo(0));
  EXPECT_TRUE(IsPowerOfTwo(1));
  EXPECT_TRUE(IsPowerOfTwo(2));
  EXPECT_FALSE(IsPowerOfTwo(3));
  EXPECT_TRUE(IsPowerOfTwo(1ULL << 40));
  EXPECT_FALSE(IsPowerOfTwo((1ULL << 40) + 1));
}

TEST(HybridMechanismTest, NoiseOffSmallExamples) {
  RngStream rng(1, 1);
  HybridMechanism h(1.0, NoiseMode::kDisabledForTesting);
  h.Insert(1, rng);
  EXPECT_EQ(h.Query(), 1.0);
  h.Insert(1, rng);
  h.Insert(1, rng);
  EXPECT_EQ(h.Query(), 3.0);

  HybridMechanism g(1.0, NoiseMode::kDisabledForTesting);
  for (double r : {1, 0, 1, 1, 0, 1}) g.Insert(r, rng);
  EXPECT_EQ(g.count(), 6u);
  EXPECT_EQ(g.Query(), 4.0);
}

// Brute force over every {0,1} sequence of length <= 16: each prefix query
// must equal the exact prefix sum.
TEST(HybridMechanismTest, NoiseOffMatchesPrefixSumsExhaustively) {
  RngStream rng(1, 1);
  for (int len = 1; len <= 16; ++len) {
    for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
      HybridMechanism h(0.5, NoiseMode::kDisabledForTesting);
      int prefix = 0;
      for (int i = 0; i < len; ++i) {
        const int r = (bits >> i) & 1;
        prefix += r;
        h.Insert(r, rng);
        // Full sequences only check the final query to keep this fast;
        // shorter lengths already covered every earlier prefix.
        if (i == len - 1) {
          ASSERT_EQ(h.Query(), prefix) << len << " " << bits;
        }
      }
    }
  }
}

TEST(HybridMechanismTest, QueryIsDeterministicBetweenInserts) {
  RngStream rng(11, 2);
  HybridMechanism h(1.0);
  for (int i = 0; i < 37; ++i) h.Insert(0.5, rng);
  const double q = h.Query();
  EXPECT_EQ(h.Query(), q);
  EXPECT_EQ(h.Query(), q);
}

TEST(HybridMechanismTest, ZeroInsertsLeaveTrueSumUnchanged) {
  RngStream rng(3, 3);
  HybridMechanism h(1.0);
  h.Insert(0.7, rng);
  h.Insert(0.2, rng);
  const double before = h.TrueSum();
  for (int i = 0; i < 20; ++i) h.Insert(0.0, rng);
  EXPECT_EQ(h.TrueSum(), before);
  EXPECT_EQ(h.count(), 22u);
}

TEST(HybridMechanismTest, BlockRestartsAtPowersOfTwo) {
  RngStream rng(3, 3);
  HybridMechanism h(1.0, NoiseMode::kDisabledForTesting);
  for (std::uint64_t n = 1; n <= 300; ++n) {
    h.Insert(1.0, rng);
    if (IsPowerOfTwo(n)) {
      EXPECT_EQ(h.current_block().items_seen(), 0u) << n;
      EXPECT_EQ(h.current_block().block_length(), n);
    } else {
      EXPECT_EQ(h.current_block().items_seen(), n - std::bit_floor(n));
    }
  }
}

TEST(HybridMechanismTest, NoiseTermsPerQueryAreLogarithmic) {
  RngStream rng(5, 5);
  HybridMechanism h(1.0);
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    h.Insert(0.25, rng);
    const BinaryMechanism& block = h.current_block();
    const int limit = std::bit_width(block.block_length()) - 1 + 1;
    ASSERT_LE(h.NoisyTermsInQuery(), limit) << n;
    ASSERT_EQ(block.NoisyNodesInQuery(), std::popcount(block.items_seen()));
  }
}

TEST(HybridMechanismTest, EachInsertDrawsAtMostOneLaplace) {
  // A Laplace draw consumes one uniform; compare stream positions with a
  // shadow stream advanced once per insert.
  RngStream rng(8, 8);
  HybridMechanism h(1.0);
  std::uint64_t draws = 0;
  for (int i = 0; i < 100; ++i) {
    h.Insert(1.0, rng);
    ++draws;
  }
  RngStream shadow(8, 8);
  for (std::uint64_t i = 0; i < draws; ++i) shadow.NextUniform();
  EXPECT_EQ(rng.NextU64(), shadow.NextU64());
}

TEST(HybridMechanismTest, RejectsOutOfRangeRewards) {
  RngStream rng(1, 1);
  HybridMechanism h(1.0);
  EXPECT_THROW(h.Insert(-0.01, rng), DomainError);
  EXPECT_THROW(h.Insert(1.01, rng), DomainError);
  EXPECT_THROW(h.Insert(std::nan(""), rng), DomainError);
  EXPECT_EQ(h.count(), 0u);
}

TEST(HybridMechanismTest, QueryOnEmptyThrows) {
  HybridMechanism h(1.0);
  EXPECT_THROW(h.Query(), EmptyStateError);
}

TEST(HybridMechanismTest, RejectsNonPositiveEpsilon) {
  EXPECT_THROW(HybridMechanism(0.0), InvalidParameterError);
  EXPECT_THROW(HybridMechanism(-1.0), InvalidParameterError);
}

TEST(HybridMechanismTest, CoverageAtN1024) {
  const double bound = HybridErrorBound(1.0, 0.01, 1024);
  int covered = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    RngStream rng(2024, static_cast<std::uint64_t>(trial));
    HybridMechanism h(1.0);
    for (int i = 0; i < 1024; ++i) h.Insert(1.0, rng);
    if (std::fabs(h.Query() - 1024.0) <= bound) ++covered;
  }
  EXPECT_GE(covered, 985);
}

TEST(BinaryMechanismTest, NodeSumsAreConsistent) {
  RngStream rng(4, 4);
  RngStream values(4, 5);
  BinaryMechanism b(1.0, 64, NoiseMode::kDisabledForTesting);
  EXPECT_EQ(b.levels(), 6);
  for (int i = 0; i < 63; ++i) b.Insert(values.NextUniform(), rng);
  // Leaves are level 0; every completed parent is the sum of its children.
  for (int level = 1; level < b.levels(); ++level) {
    const std::uint64_t nodes = 63 >> level;
    for (std::uint64_t i = 0; i < nodes; ++i) {
      EXPECT_NEAR(b.CompletedNodeTrueSum(level, i),
                  b.CompletedNodeTrueSum(level - 1, 2 * i) +
                      b.CompletedNodeTrueSum(level - 1, 2 * i + 1),
                  1e-12);
    }
  }
  EXPECT_NEAR(b.Query(), b.TrueSum(), 1e-12);
}

TEST(BinaryMechanismTest, NodeScaleIsLevelsOverEpsilon) {
  BinaryMechanism b(0.5, 1024);
  EXPECT_EQ(b.levels(), 10);
  EXPECT_DOUBLE_EQ(b.node_noise_scale(), 20.0);
}

TEST(BinaryMechanismTest, FullBlockThrows) {
  RngStream rng(1, 1);
  BinaryMechanism b(1.0, 4);
  for (int i = 0; i < 3; ++i) b.Insert(1.0, rng);
  EXPECT_THROW(b.Insert(1.0, rng), DomainError);
}

TEST(HybridErrorBoundTest, Examples) {
  const double gamma = 4.0 / std::exp(1.0);
  EXPECT_NEAR(HybridErrorBound(1.0, gamma, std::exp(1.0)), 2 * std::sqrt(8.0), 1e-12);
  EXPECT_NEAR(HybridErrorBound(1.0, gamma, 1.0), std::sqrt(8.0), 1e-12);
  // High-precision evaluation of sqrt(8)/0.1 * ln(400) * (ln(1024) + 1).
  EXPECT_NEAR(HybridErrorBound(0.1, 0.01, 1024), 1344.10059114109, 1e-9);
}

TEST(HybridErrorBoundTest, RejectsInvalidRanges) {
  EXPECT_THROW(HybridErrorBound(0.0, 0.1, 10), InvalidParameterError);
  EXPECT_THROW(HybridErrorBound(1.0, 0.0, 10), InvalidParameterError);
  EXPECT_THROW(HybridErrorBound(1.0, 0.1, 0.5), InvalidParameterError);
}

}  // namespace
}  // namespace dpbandit
