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

#ifndef TRACEDUP_EVALUATION_H_
#define TRACEDUP_EVALUATION_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tracedup/scoring.h"
#include "tracedup/tracesim.h"

namespace tracedup {

// label == true marks a duplicate (positive) pair.
struct LabeledPair {
  std::string a;
  std::string b;
  bool label = false;

  bool operator==(const LabeledPair&) const = default;
};

// JSON Lines: {"a": id, "b": id, "label": true|false}
std::vector<LabeledPair> ReadPairs(std::istream& in);
std::vector<LabeledPair> ReadPairs(const std::filesystem::path& path);
void WritePairs(std::ostream& out, std::span<const LabeledPair> pairs);
void WritePairs(const std::filesystem::path& path,
                std::span<const LabeledPair> pairs);

struct PairSplit {
  std::vector<LabeledPair> train;
  std::vector<LabeledPair> test;
};

// Seeded shuffle, then the first round(train_fraction * n) pairs go to
// train. Throws Error(kInvalidArgument) unless 0 < train_fraction < 1 and
// Error(kInsufficientPairs) when either side would be empty.
PairSplit SplitPairs(std::span<const LabeledPair> pairs, double train_fraction,
                     uint64_t seed);

struct ScoredLabel {
  double score = 0.0;
  bool label = false;
};

// Mann-Whitney estimate of P(score of a random positive > score of a random
// negative), ties counting 1/2. Throws Error(kDegenerateLabels) when a class
// is missing and Error(kInvalidArgument) on NaN scores.
double RocAuc(std::span<const ScoredLabel> scores);

// Percent of the remaining error (1 - worse) removed by `better`. Throws
// Error(kDivisionByZero) when worse == 1.
double ErrorReduction(double auc_better, double auc_worse);

struct EvalReport {
  std::string method;
  double roc_auc = 0.0;
  size_t num_pairs = 0;
  size_t num_positive = 0;
  size_t num_negative = 0;
  // Relative to the next row of a table sorted by decreasing AUC; absent on
  // the last row.
  std::optional<double> error_reduction;
};

struct ResolvedPair {
  IndexPair indices;
  bool label = false;
};

// Maps report ids to corpus positions. Throws Error(kUnknownReport) for ids
// not in the corpus and Error(kInvalidArgument) when a == b.
std::vector<ResolvedPair> ResolvePairs(const PreparedCorpus& corpus,
                                       std::span<const LabeledPair> pairs);

// Throws Error(kDegenerateLabels) unless both labels are present.
void RequireBothLabels(std::span<const ResolvedPair> pairs);

EvalReport EvaluateMethod(const PairScorer& scorer,
                          std::span<const ResolvedPair> pairs,
                          int threads = 1);

// One report per method, sorted by decreasing AUC (stable), with error
// reductions filled in.
std::vector<EvalReport> Evaluate(const PreparedCorpus& corpus,
                                 std::span<const LabeledPair> pairs,
                                 std::span<const MethodConfig> methods,
                                 int threads = 1);

void AssignErrorReductions(std::vector<EvalReport>& sorted_reports);

// Full TraceSim, then without the global weight, without the local weight,
// and without the SOE path, in that order.
std::vector<MethodConfig> AblationConfigs(const Hyperparams& hp);
std::vector<EvalReport> RunAblation(const PreparedCorpus& corpus,
                                    std::span<const LabeledPair> test_pairs,
                                    const Hyperparams& hp, int threads = 1);

// JSON array of reports (floats rounded to 6 significant digits) and an
// aligned plain-text table with 4-decimal AUCs.
std::string EvalReportsToJson(std::span<const EvalReport> reports);
std::string FormatEvalTable(std::span<const EvalReport> reports);

struct IssueSizeBucket {
  double lower = 0.0;
  double upper = 0.0;
  uint64_t issues = 0;
  uint64_t reports = 0;
};

// Places every issue at r = ln(size) / ln(max size) into one of the ten
// buckets [0, 0.1), ..., [0.9, 1]. Throws Error(kInvalidArgument) for an
// empty input or a zero size, and Error(kDegenerateSizes) when every size is 1.
std::array<IssueSizeBucket, 10> IssueSizeBuckets(
    std::span<const uint64_t> issue_sizes);

std::string IssueSizeBucketsToJson(
    const std::array<IssueSizeBucket, 10>& buckets);
std::string FormatIssueSizeBuckets(
    const std::array<IssueSizeBucket, 10>& buckets);

}  // namespace tracedup

#endif  // TRACEDUP_EVALUATION_H_
