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

#ifndef TRACEDUP_BASELINES_H_
#define TRACEDUP_BASELINES_H_

#include "tracedup/corpus_index.h"
#include "tracedup/report.h"

namespace tracedup {

// Decay coefficients of the position-dependent alignment model: `c` decays
// with distance from the top of the stack, `o` with the offset between the
// aligned positions.
struct RebucketParams {
  double c = 0.2;
  double o = 0.5;

  bool operator==(const RebucketParams&) const = default;
};

// Throws Error(kInvalidArgument) unless both coefficients are finite and >= 0.
void ValidateRebucketParams(const RebucketParams& params);

// Longest common token prefix / max(|a|, |b|).
double PrefixMatch(const StackTrace& a, const StackTrace& b);

// 1 - unit-cost edit distance / max(|a|, |b|).
double PlainLevenshteinSim(const StackTrace& a, const StackTrace& b);

// Cosine over token counts, weighted by IDF when `use_idf` is set.
double CosineSim(const StackTrace& a, const StackTrace& b,
                 const CorpusIndex& index, bool use_idf);

// TF-IDF cosine; the same computation as the SOE path of TraceSim.
double LerchSim(const StackTrace& a, const StackTrace& b,
                const CorpusIndex& index);

double RebucketSim(const StackTrace& a, const StackTrace& b,
                   const RebucketParams& params);

// Weighted harmonic mean 1 / (weight / r + (1 - weight) / l), defined as 0
// when either component is 0.
double HarmonicMix(double rebucket, double lerch, double weight);

double MorooSim(const StackTrace& a, const StackTrace& b,
                const CorpusIndex& index, const RebucketParams& params,
                double weight = 0.5);

}  // namespace tracedup

#endif  // TRACEDUP_BASELINES_H_
