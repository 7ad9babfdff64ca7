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


#include <benchmark/benchmark.h>

#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tracedup/corpus_index.h"
#include "tracedup/evaluation.h"
#include "tracedup/report.h"
#include "tracedup/scoring.h"
#include "tracedup/synth.h"
#include "tracedup/tracesim.h"

namespace {

using tracedup::CorpusIndex;
using tracedup::StackTrace;

StackTrace RandomTrace(std::mt19937_64& rng, size_t length, int vocabulary,
                       const std::string& type) {
  std::uniform_int_distribution<int> pick(0, vocabulary - 1);
  StackTrace trace;
  trace.exception_type = type;
  for (size_t i = 0; i < length; ++i) {
    trace.frames.push_back(
        {"org.bench.C" + std::to_string(pick(rng)) + ".run", std::nullopt,
         std::nullopt});
  }
  return trace;
}

tracedup::WeightedTrace RandomWeighted(std::mt19937_64& rng, size_t length) {
  std::uniform_int_distribution<int> pick(0, 49);
  std::uniform_real_distribution<double> weight(0.01, 1.0);
  tracedup::WeightedTrace trace;
  for (size_t i = 0; i < length; ++i) {
    trace.tokens.push_back("f" + std::to_string(pick(rng)));
    trace.weights.push_back(weight(rng));
  }
  return trace;
}

void BM_WeightedLevenshtein(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const size_t n = static_cast<size_t>(state.range(0));
  const auto a = RandomWeighted(rng, n);
  const auto b = RandomWeighted(rng, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tracedup::WeightedLevenshtein(a, b));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WeightedLevenshtein)->RangeMultiplier(4)->Range(16, 1024)
    ->Complexity(benchmark::oNSquared);

void BM_TraceSimPair(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const size_t n = static_cast<size_t>(state.range(0));
  std::vector<StackTrace> traces;
  for (int i = 0; i < 64; ++i) {
    traces.push_back(RandomTrace(rng, n, 200, "java.lang.IllegalStateException"));
  }
  const CorpusIndex index = CorpusIndex::Build(traces);
  const auto hp = tracedup::DefaultHyperparams(index);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        tracedup::TraceSim(traces[0], traces[1], index, hp));
  }
}
BENCHMARK(BM_TraceSimPair)->Arg(20)->Arg(60)->Arg(200);

void BM_SoePair(benchmark::State& state) {
  std::mt19937_64 rng(13);
  std::vector<StackTrace> traces;
  for (int i = 0; i < 16; ++i) {
    traces.push_back(
        RandomTrace(rng, 1000, 400, "java.lang.StackOverflowError"));
  }
  const CorpusIndex index = CorpusIndex::Build(traces);
  const auto hp = tracedup::DefaultHyperparams(index);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        tracedup::TraceSim(traces[0], traces[1], index, hp));
  }
}
BENCHMARK(BM_SoePair)->Unit(benchmark::kMicrosecond);

void BM_RocAuc(benchmark::State& state) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> score(0.0, 1.0);
  std::vector<tracedup::ScoredLabel> scores(
      static_cast<size_t>(state.range(0)));
  for (size_t i = 0; i < scores.size(); ++i) {
    // Coarse scores produce ties.
    scores[i] = {static_cast<int>(score(rng) * 100) / 100.0, i % 2 == 0};
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(tracedup::RocAuc(scores));
  }
}
BENCHMARK(BM_RocAuc)->Arg(2000)->Arg(200000);

void BM_ScoreAll(benchmark::State& state) {
  tracedup::GeneratorConfig config;
  config.seed = 3;
  const auto corpus = tracedup::GenerateCorpus(config);
  const auto pairs = tracedup::DerivePairs(corpus.reports, corpus.truth, {},
                                           corpus.family);
  const CorpusIndex index = CorpusIndex::Build(corpus.reports);
  const tracedup::PreparedCorpus prepared(corpus.reports, index);
  std::vector<tracedup::IndexPair> indices;
  for (const auto& pair : tracedup::ResolvePairs(prepared, pairs)) {
    indices.push_back(pair.indices);
  }
  tracedup::MethodConfig method;
  method.hyperparams = tracedup::DefaultHyperparams(index);
  const tracedup::PairScorer scorer(prepared, method);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(scorer.ScoreAll(indices, threads));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(indices.size()));
}
BENCHMARK(BM_ScoreAll)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)
    ->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
