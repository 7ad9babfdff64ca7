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

#ifndef TRACEDUP_SCORING_H_
#define TRACEDUP_SCORING_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tracedup/baselines.h"
#include "tracedup/corpus_index.h"
#include "tracedup/report.h"
#include "tracedup/sequence_metrics.h"
#include "tracedup/tracesim.h"

namespace tracedup {

enum class Method {
  kTraceSim,
  kPrefix,
  kLevenshtein,
  kCosine,
  kCosineIdf,
  kLerch,
  kRebucket,
  kMoroo,
};

// "tracesim", "prefix", "levenshtein", "cosine", "cosine-idf", "lerch",
// "rebucket", "moroo".
std::string_view MethodName(Method method);
std::optional<Method> ParseMethod(std::string_view name);
std::span<const Method> AllMethods();

struct MethodConfig {
  Method method = Method::kTraceSim;
  Hyperparams hyperparams;
  TraceSimOptions tracesim;
  RebucketParams rebucket;
  double moroo_weight = 0.5;
  // Row name in reports; MethodName(method) when empty.
  std::string label;

  std::string DisplayName() const;
};

// Throws Error(kInvalidArgument) for out-of-range parameters.
void ValidateMethodConfig(const MethodConfig& config);

// A corpus with frame tokens interned to dense ids, per-token IDF looked up
// once, and per-trace term counts. Immutable after construction.
class PreparedCorpus {
 public:
  PreparedCorpus(std::span<const CrashReport> reports, const CorpusIndex& index);

  size_t size() const { return ids_.size(); }
  const std::string& id(size_t i) const { return ids_[i]; }
  std::optional<size_t> Find(std::string_view id) const;

  std::span<const uint32_t> tokens(size_t i) const { return tokens_[i]; }
  const seq::TermCounts<uint32_t>& term_counts(size_t i) const {
    return counts_[i];
  }
  bool is_soe(size_t i) const { return soe_[i] != 0; }
  double idf(uint32_t token) const { return idf_[token]; }
  size_t vocabulary_size() const { return idf_.size(); }
  const CorpusIndex& index() const { return index_; }

 private:
  CorpusIndex index_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, size_t> by_id_;
  std::vector<std::vector<uint32_t>> tokens_;
  std::vector<seq::TermCounts<uint32_t>> counts_;
  std::vector<char> soe_;
  std::vector<double> idf_;
};

using IndexPair = std::pair<size_t, size_t>;

// Scores pairs of traces of a PreparedCorpus with one configured method.
// Produces bit-identical values to the StackTrace-based functions.
// Score() is const and thread-safe.
class PairScorer {
 public:
  PairScorer(const PreparedCorpus& corpus, MethodConfig config);

  double Score(size_t i, size_t j) const;

  // Deterministic regardless of `threads`.
  std::vector<double> ScoreAll(std::span<const IndexPair> pairs,
                               int threads = 1) const;

  const MethodConfig& config() const { return config_; }

 private:
  double TraceSimScore(size_t i, size_t j) const;
  double LerchScore(size_t i, size_t j) const;

  const PreparedCorpus& corpus_;
  MethodConfig config_;
  // TraceSim only: token sequence after optional recursion removal, and the
  // frame weights of that sequence.
  std::vector<std::vector<uint32_t>> collapsed_;
  std::vector<std::vector<double>> weights_;
};

}  // namespace tracedup

#endif  // TRACEDUP_SCORING_H_
