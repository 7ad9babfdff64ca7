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

#include "tracedup/tracesim.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "oracles.h"
#include "test_support.h"
#include "tracedup/error.h"
#include "tracedup/sequence_metrics.h"

namespace tracedup {
namespace {

using testing::MakeTrace;
using testing::RandomIndex;
using testing::RandomTokens;
using testing::RandomWeights;

constexpr char kSoe[] = "java.lang.StackOverflowError";

WeightedTrace Weighted(std::vector<std::string> tokens,
                       std::vector<double> weights) {
  return {std::move(tokens), std::move(weights)};
}

std::vector<std::string> Names(const std::vector<int>& tokens) {
  std::vector<std::string> out;
  for (int t : tokens) out.push_back("f" + std::to_string(t));
  return out;
}

TEST(LocalWeightTest, Values) {
  EXPECT_EQ(LocalWeight(1, 2.7), 1.0);
  EXPECT_EQ(LocalWeight(2, 1.0), 0.5);
  EXPECT_EQ(LocalWeight(17, 0.0), 1.0);
  for (int64_t r = 1; r < 50; ++r) {
    EXPECT_GT(LocalWeight(r, 0.7), LocalWeight(r + 1, 0.7));
  }
}

TEST(LocalWeightTest, RankBelowOneIsInvalid) {
  try {
    LocalWeight(0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidRank);
  }
}

TEST(GlobalWeightTest, Values) {
  EXPECT_EQ(GlobalWeight(1.3, 5.0, 1.3), 0.5);
  EXPECT_EQ(GlobalWeight(4.0, 0.0, 1.0), 0.5);
  EXPECT_NEAR(GlobalWeight(3.0, 2.0, 1.0), oracle::LogisticReference(4.0),
              1e-15);
  EXPECT_NEAR(GlobalWeight(3.0, 2.0, 1.0), 0.982014, 1e-6);
}

TEST(GlobalWeightTest, MonotoneInIdfAndGamma) {
  for (double idf = 0.0; idf < 8.0; idf += 0.25) {
    EXPECT_LT(GlobalWeight(idf, 1.5, 2.0), GlobalWeight(idf + 0.25, 1.5, 2.0));
    EXPECT_GE(GlobalWeight(idf, 1.5, 2.0), GlobalWeight(idf, 1.5, 2.5));
  }
}

TEST(SigmoidTest, StableAtExtremes) {
  EXPECT_EQ(Sigmoid(-1000.0), 0.0);
  EXPECT_EQ(Sigmoid(1000.0), 1.0);
  EXPECT_FALSE(std::isnan(Sigmoid(-std::numeric_limits<double>::infinity())));
  for (double x = -30; x <= 30; x += 0.5) {
    EXPECT_NEAR(Sigmoid(x), oracle::LogisticReference(x), 1e-15);
  }
}

TEST(FrameWeightsTest, CompositionAndRatios) {
  const CorpusIndex all = CorpusIndex::Build(
      std::vector<StackTrace>{MakeTrace(std::vector<std::string>{"x"})});
  const WeightedTrace one =
      FrameWeights(MakeTrace(std::vector<std::string>{"x"}), all,
                   {.alpha = 3.0, .beta = 1.0, .gamma = 0.0});
  ASSERT_EQ(one.weights.size(), 1u);
  EXPECT_EQ(one.weights[0], 0.5);

  const WeightedTrace two =
      FrameWeights(MakeTrace(std::vector<std::string>{"x", "x"}), all,
                   {.alpha = 1.0, .beta = 2.0, .gamma = 0.3});
  EXPECT_EQ(two.weights[0], 2.0 * two.weights[1]);
}

TEST(FrameWeightsTest, MatchesHandComputation) {
  const CorpusIndex index =
      CorpusIndex::FromCounts(10, {{"a", 1}, {"b", 5}, {"c", 10}});
  const Hyperparams hp{.alpha = 0.5, .beta = 1.5, .gamma = 1.0};
  const WeightedTrace w =
      FrameWeights(MakeTrace(std::vector<std::string>{"a", "b", "c"}), index, hp);
  const double idf[] = {std::log(10.0), std::log(2.0), 0.0};
  for (int i = 0; i < 3; ++i) {
    const double lw = 1.0 / std::pow(i + 1.0, 0.5);
    const double gw = oracle::LogisticReference(1.5 * (idf[i] - 1.0));
    EXPECT_NEAR(w.weights[i], lw * gw, 1e-15) << i;
  }
  EXPECT_EQ(w.tokens, (std::vector<std::string>{"a", "b", "c"}));
}

TEST(FrameWeightsTest, AblationSwitchesReplaceFactorsByOne) {
  const CorpusIndex index = CorpusIndex::FromCounts(10, {{"a", 3}});
  const Hyperparams hp{.alpha = 1.0, .beta = 2.0, .gamma = 0.5};
  const double gw = GlobalWeight(index.Idf("a"), 2.0, 0.5);
  EXPECT_EQ(FrameWeight(3, index.Idf("a"), hp, {.use_local_weight = false}), gw);
  EXPECT_EQ(FrameWeight(3, index.Idf("a"), hp, {.use_global_weight = false}),
            0.25);
}

TEST(FrameWeightsTest, WeightsStayPositive) {
  const Hyperparams hp{.alpha = 3.0, .beta = 10.0, .gamma = 1000.0};
  const double w = FrameWeight(10000, 0.0, hp);
  EXPECT_GT(w, 0.0);
  EXPECT_LE(w, 1.0);
}

TEST(WeightedLevenshteinTest, Examples) {
  EXPECT_EQ(WeightedLevenshtein(Weighted({"a", "b"}, {0.3, 0.9}),
                                Weighted({"a", "b"}, {0.1, 0.2})),
            0.0);
  EXPECT_DOUBLE_EQ(WeightedLevenshtein(Weighted({}, {}),
                                       Weighted({"a", "b"}, {0.25, 0.5})),
                   0.75);
  EXPECT_DOUBLE_EQ(
      WeightedLevenshtein(Weighted({"x"}, {0.8}), Weighted({"y"}, {0.6})), 1.4);
}

TEST(WeightedLevenshteinTest, MatchesEditScriptEnumeration) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 300; ++k) {
    const auto a = RandomTokens(rng, 0, 6, 4);
    const auto b = RandomTokens(rng, 0, 6, 4);
    const auto wa = RandomWeights(rng, a.size());
    const auto wb = RandomWeights(rng, b.size());
    const double dp =
        WeightedLevenshtein(Weighted(Names(a), wa), Weighted(Names(b), wb));
    EXPECT_NEAR(dp, oracle::BruteForceWeightedEdit(a, wa, b, wb), 1e-12);
    double total = 0.0;
    for (double w : wa) total += w;
    for (double w : wb) total += w;
    EXPECT_LE(dp, total + 1e-12);
  }
}

TEST(NormalizedSimilarityTest, Examples) {
  EXPECT_EQ(NormalizedSimilarity(Weighted({"a"}, {0.4}), Weighted({"a"}, {0.4})),
            1.0);
  EXPECT_EQ(NormalizedSimilarity(Weighted({"x"}, {0.3}), Weighted({"y"}, {0.6})),
            0.0);
  EXPECT_DOUBLE_EQ(NormalizedSimilarity(Weighted({"x", "y"}, {0.5, 0.25}),
                                        Weighted({"x"}, {0.5})),
                   0.8);
  EXPECT_EQ(NormalizedSimilarity(Weighted({}, {}), Weighted({}, {})), 1.0);
}

TEST(NormalizedSimilarityTest, UnitWeightsReduceToClassicEditDistance) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 500; ++k) {
    const auto a = RandomTokens(rng, 1, 8, 5);
    const auto b = RandomTokens(rng, 1, 8, 5);
    const WeightedTrace wa = Weighted(Names(a), std::vector<double>(a.size(), 1.0));
    const WeightedTrace wb = Weighted(Names(b), std::vector<double>(b.size(), 1.0));
    const double n = static_cast<double>(a.size() + b.size());
    const long d = oracle::TextbookLevenshtein(a, b, 2);
    EXPECT_EQ(NormalizedSimilarity(wa, wb), 1.0 - static_cast<double>(d) / n);
    EXPECT_EQ(static_cast<size_t>(d),
              a.size() + b.size() - 2 * oracle::BruteForceLcs(a, b));
  }
}

TEST(IsSoeTest, SuffixRule) {
  EXPECT_TRUE(IsSoe(MakeTrace(std::vector<int>{1}, kSoe)));
  EXPECT_TRUE(IsSoe(MakeTrace(std::vector<int>{1}, "java.util.StackOverflowError")));
  EXPECT_FALSE(IsSoe(MakeTrace(std::vector<int>{1}, "java.lang.NullPointerException")));
  EXPECT_FALSE(IsSoe(MakeTrace(std::vector<int>{1}, "StackOverflowErrorX")));
}

TEST(SoeSimilarityTest, Examples) {
  const CorpusIndex index =
      CorpusIndex::FromCounts(10, {{"x", 1}, {"y", 1}, {"z", 1}});
  const StackTrace a = MakeTrace(std::vector<std::string>{"x", "x", "y"}, kSoe);
  const StackTrace b = MakeTrace(std::vector<std::string>{"x", "y"}, kSoe);
  const StackTrace c = MakeTrace(std::vector<std::string>{"z"}, kSoe);
  EXPECT_NEAR(SoeSimilarity(a, a, index), 1.0, 1e-15);
  EXPECT_EQ(SoeSimilarity(a, c, index), 0.0);
  EXPECT_NEAR(SoeSimilarity(a, b, index), 3.0 / (std::sqrt(5.0) * std::sqrt(2.0)),
              1e-12);
  EXPECT_NEAR(SoeSimilarity(a, b, index), 0.948683, 1e-6);
}

TEST(SoeSimilarityTest, MatchesMapCosine) {
  std::mt19937_64 rng(8);
  const CorpusIndex index = RandomIndex(rng, 10);
  for (int k = 0; k < 300; ++k) {
    const auto a = RandomTokens(rng, 1, 12, 10);
    const auto b = RandomTokens(rng, 1, 12, 10);
    const auto idf = [&](int t) { return index.Idf("f" + std::to_string(t)); };
    EXPECT_NEAR(SoeSimilarity(MakeTrace(a, kSoe), MakeTrace(b, kSoe), index),
                oracle::MapCosine(a, b, idf), 1e-12);
  }
}

TEST(RemoveRecursionTest, Examples) {
  const auto run = [](std::vector<std::string> tokens) {
    return FrameTokens(RemoveRecursion(MakeTrace(tokens)));
  };
  using V = std::vector<std::string>;
  EXPECT_EQ(run({"a", "b", "a", "b", "a", "b", "c"}), (V{"a", "b", "c"}));
  EXPECT_EQ(run({"a", "b", "c"}), (V{"a", "b", "c"}));
  EXPECT_EQ(run({"a", "a", "a", "b", "a"}), (V{"a", "b", "a"}));
}

TEST(RemoveRecursionTest, KeepsFramesOfFirstCopy) {
  StackTrace t = MakeTrace(std::vector<std::string>{"a", "b", "a", "b"});
  t.frames[0].line = 1;
  t.frames[2].line = 3;
  const StackTrace out = RemoveRecursion(t);
  ASSERT_EQ(out.frames.size(), 2u);
  EXPECT_EQ(out.frames[0].line, 1);
  EXPECT_EQ(out.exception_type, t.exception_type);
}

TEST(RemoveRecursionTest, ReachesAnIrreducibleCollapse) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 400; ++k) {
    const auto tokens = RandomTokens(rng, 0, 9, 3);
    const size_t block = 1 + rng() % 3;
    const StackTrace once = RemoveRecursion(MakeTrace(tokens), block);
    std::vector<int> out;
    for (const Frame& f : once.frames) out.push_back(std::stoi(f.qualifier.substr(1)));
    const auto closure = oracle::CollapseClosure(tokens, block);
    EXPECT_TRUE(closure.count(out)) << "not reachable by collapses";
    EXPECT_FALSE(oracle::HasAdjacentRepeat(out, block));
    EXPECT_LE(out.size(), tokens.size());
    EXPECT_EQ(RemoveRecursion(once, block), once);
  }
}

TEST(TraceSimTest, RoutingAndIdentity) {
  std::mt19937_64 rng(2);
  const CorpusIndex index = RandomIndex(rng, 8);
  const Hyperparams hp = DefaultHyperparams(index);
  const StackTrace soe = MakeTrace(std::vector<int>{1, 2, 1, 2}, kSoe);
  const StackTrace plain = MakeTrace(std::vector<int>{1, 2, 1, 2});
  EXPECT_EQ(TraceSim(soe, plain, index, hp), 0.0);
  EXPECT_EQ(TraceSim(plain, soe, index, hp), 0.0);
  EXPECT_NEAR(TraceSim(soe, soe, index, hp), 1.0, 1e-15);
  EXPECT_EQ(TraceSim(plain, plain, index, hp), 1.0);
  EXPECT_EQ(TraceSim(plain, MakeTrace(std::vector<int>{3, 4}), index, hp), 0.0);
  EXPECT_EQ(TraceSim(soe, plain, index, hp, {.soe_path = false}), 1.0);
}

TEST(TraceSimTest, RecursionRemovalOption) {
  const CorpusIndex index = CorpusIndex::FromCounts(4, {{"f1", 1}, {"f2", 1}});
  const Hyperparams hp{.alpha = 0.0, .beta = 1.0, .gamma = 0.0};
  const StackTrace a = MakeTrace(std::vector<int>{1, 2, 2, 2, 2});
  const StackTrace b = MakeTrace(std::vector<int>{1, 2});
  EXPECT_LT(TraceSim(a, b, index, hp), 1.0);
  EXPECT_EQ(TraceSim(a, b, index, hp, {.remove_recursion = true}), 1.0);
}

TEST(TraceSimTest, SymmetricAndBounded) {
  std::mt19937_64 rng(17);
  const CorpusIndex index = RandomIndex(rng, 10);
  for (int k = 0; k < 500; ++k) {
    const StackTrace a = MakeTrace(RandomTokens(rng, 1, 15, 10),
                                   rng() % 5 == 0 ? kSoe : "E");
    const StackTrace b = MakeTrace(RandomTokens(rng, 1, 15, 10),
                                   rng() % 5 == 0 ? kSoe : "E");
    const Hyperparams hp{.alpha = 3 * testing::RandomUnit(rng),
                         .beta = 10 * testing::RandomUnit(rng),
                         .gamma = 3 * testing::RandomUnit(rng)};
    const double ab = TraceSim(a, b, index, hp);
    EXPECT_EQ(ab, TraceSim(b, a, index, hp));
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0);
  }
}

TEST(HyperparamsTest, DefaultsAndJson) {
  const CorpusIndex index =
      CorpusIndex::FromCounts(8, {{"a", 1}, {"b", 2}, {"c", 4}});
  const Hyperparams hp = DefaultHyperparams(index);
  EXPECT_EQ(hp.alpha, 1.0);
  EXPECT_EQ(hp.beta, 2.0);
  EXPECT_DOUBLE_EQ(hp.gamma, std::log(4.0));
  const Hyperparams back = HyperparamsFromJson(
      HyperparamsToJson({.alpha = 0.5, .beta = 1.25, .gamma = 3.0}));
  EXPECT_EQ(back, (Hyperparams{.alpha = 0.5, .beta = 1.25, .gamma = 3.0}));
  EXPECT_THROW(ValidateHyperparams({.alpha = -1.0}), Error);
  EXPECT_THROW(HyperparamsFromJson("{\"alpha\": -2, \"beta\": 1, \"gamma\": 0}"),
               Error);
  EXPECT_THROW(HyperparamsFromJson("[]"), Error);
}

TEST(SequenceKernelsTest, CollapseRepeatsZeroBlockIsIdentity) {
  const std::vector<int> v = {1, 1, 1};
  EXPECT_EQ(seq::CollapseRepeats<int>(v, 0).size(), 3u);
}

}  // namespace
}  // namespace tracedup
