// Copyright 2026 The tracedup Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tracedup/baselines.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.h"
#include "test_support.h"
#include "tracedup/error.h"
#include "tracedup/tracesim.h"

namespace tracedup {
namespace {

using testing::MakeTrace;
using testing::RandomIndex;
using testing::RandomTokens;
using testing::RandomUnit;
using V = std::vector<std::string>;

TEST(PrefixMatchTest, Examples) {
  EXPECT_EQ(PrefixMatch(MakeTrace(V{"x", "y"}), MakeTrace(V{"x", "y"})), 1.0);
  EXPECT_EQ(PrefixMatch(MakeTrace(V{"x", "y"}), MakeTrace(V{"z", "y"})), 0.0);
  EXPECT_DOUBLE_EQ(
      PrefixMatch(MakeTrace(V{"x", "y", "z"}), MakeTrace(V{"x", "y", "q"})),
      2.0 / 3.0);
  EXPECT_DOUBLE_EQ(PrefixMatch(MakeTrace(V{"x"}), MakeTrace(V{"x", "y", "z"})),
                   1.0 / 3.0);
}

TEST(PlainLevenshteinTest, Examples) {
  EXPECT_EQ(PlainLevenshteinSim(MakeTrace(V{"a", "b"}), MakeTrace(V{"a", "b"})),
            1.0);
  EXPECT_EQ(PlainLevenshteinSim(MakeTrace(V{"a", "b"}), MakeTrace(V{"c", "d"})),
            0.0);
  EXPECT_NEAR(
      PlainLevenshteinSim(MakeTrace(V{"x", "y"}), MakeTrace(V{"x", "z", "y"})),
      1.0 - 1.0 / 3.0, 1e-15);
}

TEST(PlainLevenshteinTest, MatchesTextbookDistance) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 300; ++k) {
    const auto a = RandomTokens(rng, 1, 9, 4);
    const auto b = RandomTokens(rng, 1, 9, 4);
    const double expected =
        1.0 - static_cast<double>(oracle::TextbookLevenshtein(a, b, 1)) /
                  static_cast<double>(std::max(a.size(), b.size()));
    EXPECT_EQ(PlainLevenshteinSim(MakeTrace(a), MakeTrace(b)), expected);
  }
}

TEST(CosineSimTest, ExamplesAndOracle) {
  const CorpusIndex index = CorpusIndex::FromCounts(4, {{"x", 1}, {"y", 2}});
  EXPECT_NEAR(CosineSim(MakeTrace(V{"x", "y"}), MakeTrace(V{"x", "y"}), index,
                        true),
              1.0, 1e-15);
  EXPECT_EQ(CosineSim(MakeTrace(V{"x"}), MakeTrace(V{"y"}), index, false), 0.0);
  // {x, y} vs {x, z}, unit weights: 1 / (sqrt2 * sqrt2).
  EXPECT_NEAR(
      CosineSim(MakeTrace(V{"x", "y"}), MakeTrace(V{"x", "z"}), index, false),
      0.5, 1e-15);

  std::mt19937_64 rng(12);
  const CorpusIndex random = RandomIndex(rng, 9);
  for (int k = 0; k < 300; ++k) {
    const auto a = RandomTokens(rng, 1, 10, 9);
    const auto b = RandomTokens(rng, 1, 10, 9);
    const auto idf = [&](int t) { return random.Idf("f" + std::to_string(t)); };
    EXPECT_NEAR(CosineSim(MakeTrace(a), MakeTrace(b), random, true),
                oracle::MapCosine(a, b, idf), 1e-12);
    EXPECT_NEAR(CosineSim(MakeTrace(a), MakeTrace(b), random, false),
                oracle::MapCosine(a, b, [](int) { return 1.0; }), 1e-12);
  }
}

TEST(CosineSimTest, PlainCosineIgnoresTheIndex) {
  const CorpusIndex one = CorpusIndex::FromCounts(4, {{"x", 1}, {"y", 2}});
  const CorpusIndex other = CorpusIndex::FromCounts(400, {{"x", 7}, {"y", 3}});
  const StackTrace a = MakeTrace(V{"x", "y", "y"});
  const StackTrace b = MakeTrace(V{"y", "x", "z"});
  EXPECT_EQ(CosineSim(a, b, one, false), CosineSim(a, b, other, false));
}

TEST(CosineSimTest, ZeroIdfVectors) {
  const CorpusIndex index = CorpusIndex::FromCounts(2, {{"x", 2}, {"y", 2}});
  EXPECT_EQ(CosineSim(MakeTrace(V{"x"}), MakeTrace(V{"x"}), index, true), 1.0);
  EXPECT_EQ(CosineSim(MakeTrace(V{"x"}), MakeTrace(V{"y"}), index, true), 0.0);
}

TEST(LerchSimTest, SameAsSoePath) {
  std::mt19937_64 rng(6);
  const CorpusIndex index = RandomIndex(rng, 8);
  for (int k = 0; k < 100; ++k) {
    const StackTrace a = MakeTrace(RandomTokens(rng, 1, 10, 8));
    const StackTrace b = MakeTrace(RandomTokens(rng, 1, 10, 8));
    EXPECT_EQ(LerchSim(a, b, index), SoeSimilarity(a, b, index));
  }
}

TEST(RebucketSimTest, Examples) {
  const RebucketParams p{.c = 0.0, .o = 1.0};
  EXPECT_EQ(RebucketSim(MakeTrace(V{"x", "y"}), MakeTrace(V{"x", "y"}), p), 1.0);
  EXPECT_EQ(RebucketSim(MakeTrace(V{"x"}), MakeTrace(V{"y"}), p), 0.0);
  EXPECT_NEAR(RebucketSim(MakeTrace(V{"x", "y"}), MakeTrace(V{"y", "x"}), p),
              std::exp(-1.0) / 2.0, 1e-15);
  EXPECT_NEAR(RebucketSim(MakeTrace(V{"x", "y"}), MakeTrace(V{"y", "x"}), p),
              0.18394, 1e-5);
}

TEST(RebucketSimTest, MatchesAlignmentEnumeration) {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 300; ++k) {
    const auto a = RandomTokens(rng, 1, 6, 3);
    const auto b = RandomTokens(rng, 1, 6, 3);
    const double c = 2 * RandomUnit(rng);
    const double o = 2 * RandomUnit(rng);
    double normalizer = 0.0;
    for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      normalizer += std::exp(-c * static_cast<double>(i));
    }
    EXPECT_NEAR(RebucketSim(MakeTrace(a), MakeTrace(b), {.c = c, .o = o}),
                oracle::BruteForceAlignment(a, b, c, o) / normalizer, 1e-12);
  }
}

TEST(RebucketSimTest, NoDecayIsLcsOverShorterLength) {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 300; ++k) {
    const auto a = RandomTokens(rng, 1, 6, 3);
    const auto b = RandomTokens(rng, 1, 6, 3);
    const double lcs = static_cast<double>(oracle::BruteForceLcs(a, b));
    EXPECT_NEAR(RebucketSim(MakeTrace(a), MakeTrace(b), {.c = 0.0, .o = 0.0}),
                lcs / static_cast<double>(std::min(a.size(), b.size())), 1e-12);
  }
}

TEST(RebucketSimTest, RejectsNegativeParams) {
  EXPECT_THROW(ValidateRebucketParams({.c = -0.1, .o = 0.0}), Error);
  EXPECT_THROW(ValidateRebucketParams({.c = 0.0, .o = NAN}), Error);
  EXPECT_NO_THROW(ValidateRebucketParams({}));
}

TEST(HarmonicMixTest, Values) {
  EXPECT_NEAR(HarmonicMix(0.37, 0.37, 0.2), 0.37, 1e-15);
  EXPECT_EQ(HarmonicMix(0.0, 0.9, 0.5), 0.0);
  EXPECT_EQ(HarmonicMix(0.9, 0.0, 0.5), 0.0);
  EXPECT_NEAR(HarmonicMix(0.5, 1.0, 0.5), 2.0 / 3.0, 1e-15);
}

TEST(MorooSimTest, CombinesRebucketAndLerch) {
  std::mt19937_64 rng(41);
  const CorpusIndex index = RandomIndex(rng, 6);
  for (int k = 0; k < 100; ++k) {
    const StackTrace a = MakeTrace(RandomTokens(rng, 1, 8, 6));
    const StackTrace b = MakeTrace(RandomTokens(rng, 1, 8, 6));
    const RebucketParams p{.c = 0.3, .o = 0.7};
    const double w = RandomUnit(rng);
    EXPECT_EQ(MorooSim(a, b, index, p, w),
              HarmonicMix(RebucketSim(a, b, p), LerchSim(a, b, index), w));
  }
}

}  // namespace
}  // namespace tracedup
