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

#include "tracedup/corpus_index.h"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "test_support.h"
#include "tracedup/error.h"

namespace tracedup {
namespace {

using testing::MakeTrace;
using testing::RandomTokens;
using testing::TempDir;

TEST(CorpusIndexTest, CountsDocumentsNotOccurrences) {
  const std::vector<StackTrace> corpus = {
      MakeTrace(std::vector<std::string>{"A.a", "A.a", "A.a", "B.b"}),
      MakeTrace(std::vector<std::string>{"B.b"}),
      MakeTrace(std::vector<std::string>{"C.c"}),
      MakeTrace(std::vector<std::string>{"B.b", "C.c"}),
  };
  const CorpusIndex index = CorpusIndex::Build(corpus);
  EXPECT_EQ(index.total_traces(), 4u);
  EXPECT_EQ(index.DocumentFrequency("A.a"), 1u);
  EXPECT_EQ(index.DocumentFrequency("B.b"), 3u);
  EXPECT_EQ(index.DocumentFrequency("nope"), 0u);
  EXPECT_DOUBLE_EQ(index.Idf("A.a"), std::log(4.0));
  EXPECT_NEAR(index.Idf("A.a"), 1.386294, 1e-6);
}

TEST(CorpusIndexTest, IdfEdgeCases) {
  std::vector<StackTrace> corpus;
  for (int k = 0; k < 100; ++k) {
    corpus.push_back(MakeTrace(std::vector<std::string>{"all"}));
  }
  const CorpusIndex index = CorpusIndex::Build(corpus);
  EXPECT_EQ(index.Idf("all"), 0.0);
  EXPECT_NEAR(index.Idf("unseen"), 4.60517, 1e-5);
}

TEST(CorpusIndexTest, EmptyCorpusIsAnError) {
  try {
    CorpusIndex::Build(std::vector<StackTrace>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCorpus);
  }
}

TEST(CorpusIndexTest, MatchesNaiveDoubleLoop) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 50; ++round) {
    std::vector<std::vector<int>> docs;
    std::vector<StackTrace> corpus;
    const int n = 1 + static_cast<int>(rng() % 20);
    for (int k = 0; k < n; ++k) {
      docs.push_back(RandomTokens(rng, 1, 10, 12));
      corpus.push_back(MakeTrace(docs.back()));
    }
    const CorpusIndex index = CorpusIndex::Build(corpus);
    for (int t = 0; t < 12; ++t) {
      uint64_t df = 0;
      for (const auto& doc : docs) {
        bool found = false;
        for (int x : doc) found = found || x == t;
        df += found ? 1 : 0;
      }
      EXPECT_EQ(index.DocumentFrequency("f" + std::to_string(t)), df);
    }
    EXPECT_EQ(index.total_traces(), static_cast<uint64_t>(n));
  }
}

TEST(CorpusIndexTest, AddIsMonotone) {
  std::mt19937_64 rng(9);
  CorpusIndex index = CorpusIndex::Build(
      std::vector<StackTrace>{MakeTrace(RandomTokens(rng, 1, 5, 8))});
  for (int k = 0; k < 100; ++k) {
    const CorpusIndex before = index;
    index.Add(MakeTrace(RandomTokens(rng, 1, 8, 8)));
    EXPECT_EQ(index.total_traces(), before.total_traces() + 1);
    for (const auto& [token, df] : before.document_frequencies()) {
      EXPECT_GE(index.DocumentFrequency(token), df);
    }
  }
}

TEST(CorpusIndexTest, IdfIsAntitoneInDf) {
  CorpusIndex::DfMap df;
  for (uint64_t k = 1; k <= 50; ++k) df["t" + std::to_string(k)] = k;
  const CorpusIndex index = CorpusIndex::FromCounts(50, df);
  for (uint64_t k = 1; k < 50; ++k) {
    EXPECT_GT(index.Idf("t" + std::to_string(k)),
              index.Idf("t" + std::to_string(k + 1)));
  }
}

TEST(CorpusIndexTest, MedianAndMax) {
  const CorpusIndex index =
      CorpusIndex::FromCounts(8, {{"a", 1}, {"b", 2}, {"c", 4}, {"d", 8}});
  EXPECT_DOUBLE_EQ(index.MaxIdf(), std::log(8.0));
  EXPECT_DOUBLE_EQ(index.MedianIdf(), (std::log(4.0) + std::log(2.0)) / 2);
  EXPECT_EQ(CorpusIndex().MedianIdf(), 0.0);
}

TEST(CorpusIndexTest, FromCountsValidates) {
  EXPECT_THROW(CorpusIndex::FromCounts(0, {}), Error);
  EXPECT_THROW(CorpusIndex::FromCounts(3, {{"a", 4}}), Error);
  EXPECT_THROW(CorpusIndex::FromCounts(3, {{"a", 0}}), Error);
}

TEST(CorpusIndexTest, SaveLoadRoundTrip) {
  std::mt19937_64 rng(1);
  std::vector<StackTrace> corpus;
  for (int k = 0; k < 30; ++k) corpus.push_back(MakeTrace(RandomTokens(rng, 1, 9, 20)));
  const CorpusIndex index = CorpusIndex::Build(corpus);
  TempDir dir("index");
  index.Save(dir / "index.json");
  EXPECT_EQ(CorpusIndex::Load(dir / "index.json"), index);
  EXPECT_EQ(CorpusIndex::FromJson(index.ToJson()), index);
}

TEST(CorpusIndexTest, LoadErrors) {
  TempDir dir("index_bad");
  const std::string json = CorpusIndex::FromCounts(3, {{"a", 1}}).ToJson();
  std::ofstream(dir / "truncated.json") << json.substr(0, json.size() / 2);
  std::ofstream(dir / "schema.json") << "{\"total_traces\": 2, \"df\": {\"a\": 3}}";
  std::ofstream(dir / "types.json") << "{\"total_traces\": \"x\", \"df\": {}}";
  for (const char* name : {"truncated.json", "schema.json", "types.json"}) {
    try {
      CorpusIndex::Load(dir / name);
      FAIL() << name;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kCorruptIndex) << name;
    }
  }
  for (const std::filesystem::path& path :
       {std::filesystem::path(), dir / "missing.json"}) {
    try {
      CorpusIndex::Load(path);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kIoFailure);
    }
  }
}

}  // namespace
}  // namespace tracedup
