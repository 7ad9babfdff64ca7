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

#include "tracedup/tuning.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "test_support.h"
#include "tracedup/error.h"
#include "tracedup/scoring.h"

namespace tracedup {
namespace {

using testing::MakeTrace;

SearchSpace TwoDims() {
  SearchSpace space;
  space.params = {{"x", 0.0, 1.0, Scale::kLinear},
                  {"y", 0.01, 100.0, Scale::kLog}};
  return space;
}

double Bowl(const ParamPoint& p) {
  const double dx = p.at("x") - 0.3;
  const double dy = std::log10(p.at("y")) - 1.0;
  return 1.0 - dx * dx - 0.1 * dy * dy;
}

TEST(TuneTest, PointsStayInRangeAndBestIsMax) {
  for (Strategy s : {Strategy::kRandom, Strategy::kTpe}) {
    const TuneResult r = Tune(Bowl, TwoDims(), 40, 7, s);
    ASSERT_EQ(r.trials.size(), 40u);
    double best = -1e9;
    for (const Trial& t : r.trials) {
      EXPECT_GE(t.params.at("x"), 0.0);
      EXPECT_LE(t.params.at("x"), 1.0);
      EXPECT_GE(t.params.at("y"), 0.01);
      EXPECT_LE(t.params.at("y"), 100.0);
      EXPECT_EQ(t.auc, Bowl(t.params));
      best = std::max(best, t.auc);
    }
    EXPECT_EQ(r.best_auc, best);
    EXPECT_EQ(Bowl(r.best_params), best);
  }
}

TEST(TuneTest, SameSeedSameJson) {
  for (Strategy s : {Strategy::kRandom, Strategy::kTpe}) {
    EXPECT_EQ(Tune(Bowl, TwoDims(), 30, 3, s).ToJson(),
              Tune(Bowl, TwoDims(), 30, 3, s).ToJson());
    EXPECT_NE(Tune(Bowl, TwoDims(), 30, 3, s).ToJson(),
              Tune(Bowl, TwoDims(), 30, 4, s).ToJson());
  }
}

TEST(TuneTest, RandomScheduleExtendsWithBudget) {
  const TuneResult small = Tune(Bowl, TwoDims(), 10, 5, Strategy::kRandom);
  const TuneResult large = Tune(Bowl, TwoDims(), 25, 5, Strategy::kRandom);
  for (size_t k = 0; k < small.trials.size(); ++k) {
    EXPECT_EQ(small.trials[k].params, large.trials[k].params);
  }
  EXPECT_GE(large.best_auc, small.best_auc);
}

TEST(TuneTest, TpeConvergesOnASmoothObjective) {
  const TuneResult r = Tune(Bowl, TwoDims(), 80, 11, Strategy::kTpe);
  EXPECT_NEAR(r.best_params.at("x"), 0.3, 0.1);
  EXPECT_GT(r.best_auc, 0.99);
}

TEST(TuneTest, PinnedRangeIsConstant) {
  SearchSpace space = TwoDims();
  space.Override({"x", 0.25, 0.25, Scale::kLinear});
  const TuneResult r = Tune(Bowl, space, 15, 1, Strategy::kTpe);
  for (const Trial& t : r.trials) EXPECT_EQ(t.params.at("x"), 0.25);
}

TEST(TuneTest, Errors) {
  EXPECT_THROW(Tune(Bowl, TwoDims(), 0, 1, Strategy::kRandom), Error);
  SearchSpace bad = TwoDims();
  bad.params[1].min = 0.0;
  try {
    Tune(Bowl, bad, 5, 1, Strategy::kRandom);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidSpace);
  }
  EXPECT_THROW(SearchSpace{}.Validate(), Error);
  SearchSpace dup = TwoDims();
  dup.params.push_back(dup.params[0]);
  EXPECT_THROW(dup.Validate(), Error);
  SearchSpace inverted = TwoDims();
  inverted.params[0].min = 2.0;
  EXPECT_THROW(inverted.Validate(), Error);
}

TEST(ParamRangeTest, Parsing) {
  const ParamRange r = ParseParamRange("beta=0.5:20:log");
  EXPECT_EQ(r.name, "beta");
  EXPECT_EQ(r.min, 0.5);
  EXPECT_EQ(r.max, 20.0);
  EXPECT_EQ(r.scale, Scale::kLog);
  EXPECT_EQ(ParseParamRange("alpha=0:3").scale, Scale::kLinear);
  for (const char* bad : {"alpha", "alpha=1", "=0:1", "a=x:1", "a=0:1:cubic"}) {
    EXPECT_THROW(ParseParamRange(bad), Error) << bad;
  }
}

TEST(ParamsTest, ApplyAndJson) {
  MethodConfig base;
  const MethodConfig out =
      ApplyParams(base, {{"alpha", 0.5}, {"c", 1.5}, {"weight", 0.25}});
  EXPECT_EQ(out.hyperparams.alpha, 0.5);
  EXPECT_EQ(out.rebucket.c, 1.5);
  EXPECT_EQ(out.moroo_weight, 0.25);
  EXPECT_THROW(ApplyParams(base, {{"delta", 1.0}}), Error);

  const ParamPoint flat =
      ParamPointFromJson("{\"alpha\": 1, \"beta\": 2.5, \"note\": \"x\"}");
  EXPECT_EQ(flat, (ParamPoint{{"alpha", 1.0}, {"beta", 2.5}}));
  const TuneResult r = Tune(Bowl, TwoDims(), 5, 1, Strategy::kRandom);
  EXPECT_EQ(ParamPointFromJson(r.ToJson()).size(), 2u);
  EXPECT_THROW(ParamPointFromJson("[1, 2]"), Error);
}

TEST(DefaultSearchSpaceTest, Shapes) {
  const CorpusIndex index = CorpusIndex::FromCounts(20, {{"a", 1}, {"b", 20}});
  const SearchSpace ts = DefaultSearchSpace(Method::kTraceSim, index);
  ASSERT_EQ(ts.params.size(), 3u);
  EXPECT_EQ(ts.params[2].name, "gamma");
  EXPECT_DOUBLE_EQ(ts.params[2].max, std::log(20.0));
  EXPECT_EQ(DefaultSearchSpace(Method::kMoroo, index).params.size(), 3u);
  EXPECT_THROW(DefaultSearchSpace(Method::kPrefix, index), Error);
}

TEST(TuneMethodTest, ImprovesOnTrainPairs) {
  std::vector<CrashReport> reports;
  std::vector<LabeledPair> pairs;
  std::mt19937_64 rng(2);
  // Buckets share a common tail; duplicates agree on the top frames.
  for (int b = 0; b < 12; ++b) {
    for (int m = 0; m < 3; ++m) {
      std::vector<std::string> tokens = {"top" + std::to_string(b),
                                         "mid" + std::to_string(b)};
      if (rng() % 2) tokens.push_back("noise" + std::to_string(rng() % 30));
      for (int t = 0; t < 6; ++t) tokens.push_back("common" + std::to_string(t));
      reports.push_back(
          {"b" + std::to_string(b) + "m" + std::to_string(m), MakeTrace(tokens), {}});
    }
  }
  for (size_t i = 0; i < reports.size(); ++i) {
    for (size_t j = i + 1; j < reports.size(); ++j) {
      pairs.push_back({reports[i].id, reports[j].id, i / 3 == j / 3});
    }
  }
  const CorpusIndex index = CorpusIndex::Build(reports);
  const PreparedCorpus corpus(reports, index);
  MethodConfig base;
  base.hyperparams = {.alpha = 0.0, .beta = 0.1, .gamma = 0.0};
  const TuneResult r =
      TuneMethod(corpus, pairs, base,
                 DefaultSearchSpace(Method::kTraceSim, index), 20, 1,
                 Strategy::kTpe, 2);
  EXPECT_EQ(r.trials.size(), 20u);
  EXPECT_GT(r.best_auc, 0.95);
  EXPECT_EQ(r.ToJson(), TuneMethod(corpus, pairs, base,
                                   DefaultSearchSpace(Method::kTraceSim, index),
                                   20, 1, Strategy::kTpe, 1)
                            .ToJson());
}

TEST(StrategyTest, Names) {
  EXPECT_EQ(ParseStrategy("tpe"), Strategy::kTpe);
  EXPECT_EQ(ParseStrategy(StrategyName(Strategy::kRandom)), Strategy::kRandom);
  EXPECT_FALSE(ParseStrategy("grid").has_value());
}

}  // namespace
}  // namespace tracedup
