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

#ifndef TRACEDUP_SYNTH_H_
#define TRACEDUP_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tracedup/evaluation.h"
#include "tracedup/report.h"

namespace tracedup {

// Where replacement and inserted frames come from.
enum class MutationPool {
  kVocabulary,    // application frames (mostly rare, high IDF)
  kCommonFrames,  // framework frames shared by most traces (low IDF)
};

// Which part of the stack per-frame mutations hit.
enum class MutationPlacement {
  kUniform,
  kDeep,  // only the deeper half, at twice the rate
  kTop,   // only the upper half, at twice the rate
};

// Synthetic crash corpus with known buckets.
//
// Every bucket has a base trace: an application part drawn from a
// Zipf-distributed vocabulary, sprinkled with framework frames, above a
// framework "entry chain" shared by many buckets. A bucket may be spawned
// as a sibling of an earlier bucket, sharing everything but its top frames.
// Members are mutated copies of the base. Stack-overflow buckets get a
// recursive block repeated down to a random depth.
struct GeneratorConfig {
  uint64_t seed = 1;
  int num_buckets = 200;
  // P(bucket size = k) proportional to k^-size_exponent, 1 <= k <= max.
  double size_exponent = 1.5;
  int max_bucket_size = 60;
  int vocabulary_size = 3000;
  double vocabulary_skew = 1.0;  // Zipf exponent over application frames
  int common_frame_count = 40;
  int entry_chain_count = 6;
  double common_frame_fraction = 0.25;
  int min_trace_length = 8;
  int max_trace_length = 32;
  double sibling_probability = 0.5;
  int sibling_divergence = 4;  // sibling replaces 1..this many top frames
  double substitution_rate = 0.1;
  double insertion_rate = 0.1;
  double deletion_rate = 0.1;
  double truncation_rate = 0.1;  // per report: drop some deepest frames
  MutationPool mutation_pool = MutationPool::kVocabulary;
  MutationPlacement mutation_placement = MutationPlacement::kUniform;
  double soe_probability = 0.05;
  // Non-SOE buckets whose base trace contains a short repeated block.
  double recursion_probability = 0.0;
  // Each SOE report draws the length of its recursive part from
  // [min_recursion_depth, recursion_depth]; a minimum of 0 means
  // recursion_depth / 2.
  int recursion_depth = 200;
  int min_recursion_depth = 0;

  // Throws Error(kInvalidConfig).
  void Validate() const;
};

struct GeneratedCorpus {
  std::vector<CrashReport> reports;
  std::map<std::string, int> truth;  // report id -> bucket
  // bucket -> family; siblings share the family of the bucket they derive
  // from, every other bucket is its own family.
  std::map<int, int> family;
};

GeneratedCorpus GenerateCorpus(const GeneratorConfig& config);

struct PairRequest {
  size_t num_positive = 1000;
  size_t num_negative = 1000;
  // Share of negatives taken from different buckets of one family.
  double hard_negative_fraction = 0.3;
  uint64_t seed = 0;
};

// Positives are drawn uniformly from within-bucket report pairs. Hard
// negatives are drawn uniformly from cross-bucket pairs inside a family, the
// rest uniformly from all cross-bucket pairs; no pair is emitted twice.
// Buckets missing from `family` are their own family. Throws
// Error(kInsufficientData) when the requested counts are not achievable or
// a report has no bucket, Error(kInvalidArgument) for a fraction outside
// [0, 1].
std::vector<LabeledPair> DerivePairs(std::span<const CrashReport> reports,
                                     const std::map<std::string, int>& truth,
                                     const PairRequest& request,
                                     const std::map<int, int>& family = {});

// Truth map file: {"<report id>": bucket, ...}
std::string TruthToJson(const std::map<std::string, int>& truth);
std::map<std::string, int> TruthFromJson(std::string_view json);
void SaveTruth(const std::filesystem::path& path,
               const std::map<std::string, int>& truth);
std::map<std::string, int> LoadTruth(const std::filesystem::path& path);

// Number of reports per bucket, ordered by bucket id.
std::vector<uint64_t> BucketSizes(const std::map<std::string, int>& truth);

// Name of the synthetic application frame with the given id, e.g.
// "pkg3.Class14.method2".
std::string SyntheticFrameName(int id);

}  // namespace tracedup

#endif  // TRACEDUP_SYNTH_H_
