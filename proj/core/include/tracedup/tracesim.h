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

#ifndef TRACEDUP_TRACESIM_H_
#define TRACEDUP_TRACESIM_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tracedup/corpus_index.h"
#include "tracedup/report.h"

namespace tracedup {

// Tunable parameters of the frame weight
//   w(frame at rank r) = 1 / r^alpha * sigmoid(beta * (idf - gamma)).
struct Hyperparams {
  double alpha = 1.0;
  double beta = 2.0;
  double gamma = 0.0;

  bool operator==(const Hyperparams&) const = default;
};

// alpha = 1, beta = 2, gamma = median IDF of `index`.
Hyperparams DefaultHyperparams(const CorpusIndex& index);

// Throws Error(kInvalidArgument) for a negative or non-finite alpha, or
// non-finite beta/gamma.
void ValidateHyperparams(const Hyperparams& hp);

// {"alpha": x, "beta": y, "gamma": z}
std::string HyperparamsToJson(const Hyperparams& hp);
Hyperparams HyperparamsFromJson(std::string_view json);
Hyperparams LoadHyperparams(const std::filesystem::path& path);

struct TraceSimOptions {
  // Ablation switches: a disabled factor is replaced by the constant 1.
  bool use_local_weight = true;
  bool use_global_weight = true;
  // When false, stack-overflow traces go through the weighted edit
  // distance like any other trace.
  bool soe_path = true;
  // Collapse recursive frame blocks before weighting (non-SOE path only).
  bool remove_recursion = false;
  size_t max_recursion_block = 5;
};

struct WeightedTrace {
  std::vector<std::string> tokens;
  std::vector<double> weights;  // each in (0, 1]
};

// Numerically stable logistic function.
double Sigmoid(double x);

// 1 / rank^alpha with rank counted from 1 at the top of the stack. Throws
// Error(kInvalidRank) when rank < 1.
double LocalWeight(int64_t rank, double alpha);

// sigmoid(beta * (idf - gamma)).
double GlobalWeight(double idf, double beta, double gamma);

// Weight of the frame at 0-based `position` with the given IDF, honoring the
// ablation switches. Clamped below at the smallest normal double so weights
// stay strictly positive.
double FrameWeight(size_t position, double idf, const Hyperparams& hp,
                   const TraceSimOptions& options = {});

WeightedTrace FrameWeights(const StackTrace& trace, const CorpusIndex& index,
                           const Hyperparams& hp,
                           const TraceSimOptions& options = {});

double WeightedLevenshtein(const WeightedTrace& a, const WeightedTrace& b);

// 1 - dist(a, b) / (sum of a's weights + sum of b's weights); 1 when both
// traces are empty. The weight total is formed as distance + matched weight,
// so identical traces give exactly 1 and token-disjoint ones exactly 0.
double NormalizedSimilarity(const WeightedTrace& a, const WeightedTrace& b);

// True iff the exception type ends with "StackOverflowError".
bool IsSoe(const StackTrace& trace);

// Cosine similarity of tf * idf vectors over frame tokens (tf = raw count).
double SoeSimilarity(const StackTrace& a, const StackTrace& b,
                     const CorpusIndex& index);

StackTrace RemoveRecursion(const StackTrace& trace, size_t max_block = 5);

// Both SOE: SoeSimilarity. Exactly one SOE: 0. Otherwise the normalized
// weighted edit-distance similarity.
double TraceSim(const StackTrace& a, const StackTrace& b,
                const CorpusIndex& index, const Hyperparams& hp,
                const TraceSimOptions& options = {});

}  // namespace tracedup

#endif  // TRACEDUP_TRACESIM_H_
