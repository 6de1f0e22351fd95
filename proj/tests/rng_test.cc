// Copyright 2026 The agsbm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "agsbm/rng.h"

#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

namespace agsbm {
namespace {

TEST(RngTest, SameKeySameSequence) {
  Rng a(42, Stream::kEdges, 3);
  Rng b(42, Stream::kEdges, 3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(RngTest, StreamsAndIndicesDiffer) {
  EXPECT_NE(DeriveSeed(1, Stream::kEdges, 0), DeriveSeed(1, Stream::kLabels, 0));
  EXPECT_NE(DeriveSeed(1, Stream::kEdges, 0), DeriveSeed(1, Stream::kEdges, 1));
  EXPECT_NE(DeriveSeed(1, Stream::kEdges, 0), DeriveSeed(2, Stream::kEdges, 0));
}

TEST(RngTest, UniformInUnitInterval) {
  Rng rng(7);
  double sum = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // Mean of U(0,1) has standard error 1/sqrt(12·draws).
  EXPECT_NEAR(sum / draws, 0.5, 4.0 / std::sqrt(12.0 * draws));
}

TEST(RngTest, BelowIsUnbiasedAndInRange) {
  Rng rng(11);
  std::vector<int> counts(7, 0);
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) {
    const uint64_t x = rng.Below(7);
    ASSERT_LT(x, 7u);
    ++counts[x];
  }
  const double expected = draws / 7.0;
  const double sd = std::sqrt(draws * (1.0 / 7) * (6.0 / 7));
  for (int c : counts) EXPECT_NEAR(c, expected, 4 * sd);
}

TEST(RngTest, BelowOneIsZero) {
  Rng rng(3);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(rng.Below(1), 0u);
}

}  // namespace
}  // namespace agsbm
