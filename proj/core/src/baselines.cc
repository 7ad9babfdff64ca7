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

#include <algorithm>
#include <cmath>
#include <string_view>
#include <vector>

#include "tracedup/error.h"
#include "tracedup/sequence_metrics.h"
#include "tracedup/tracesim.h"

namespace tracedup {
namespace {

std::vector<std::string_view> TokenViews(const StackTrace& trace) {
  std::vector<std::string_view> tokens;
  tokens.reserve(trace.frames.size());
  for (const Frame& frame : trace.frames) tokens.push_back(FrameToken(frame));
  return tokens;
}

double LengthRatio(size_t numerator, size_t a, size_t b) {
  const size_t longest = std::max(a, b);
  if (longest == 0) return 1.0;
  return static_cast<double>(numerator) / static_cast<double>(longest);
}

}  // namespace

void ValidateRebucketParams(const RebucketParams& params) {
  if (!std::isfinite(params.c) || !std::isfinite(params.o) || params.c < 0.0 ||
      params.o < 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "rebucket coefficients must be finite and >= 0");
  }
}

double PrefixMatch(const StackTrace& a, const StackTrace& b) {
  const auto ta = TokenViews(a);
  const auto tb = TokenViews(b);
  return LengthRatio(seq::CommonPrefixLength<std::string_view>(ta, tb),
                     ta.size(), tb.size());
}

double PlainLevenshteinSim(const StackTrace& a, const StackTrace& b) {
  const auto ta = TokenViews(a);
  const auto tb = TokenViews(b);
  return 1.0 - LengthRatio(seq::Levenshtein<std::string_view>(ta, tb),
                           ta.size(), tb.size());
}

double CosineSim(const StackTrace& a, const StackTrace& b,
                 const CorpusIndex& index, bool use_idf) {
  const auto ta = TokenViews(a);
  const auto tb = TokenViews(b);
  const auto ca = seq::CountTerms<std::string_view>(ta);
  const auto cb = seq::CountTerms<std::string_view>(tb);
  if (use_idf) {
    return seq::CosineSimilarity<std::string_view>(
        ca, cb, [&](std::string_view token) { return index.Idf(token); });
  }
  return seq::CosineSimilarity<std::string_view>(
      ca, cb, [](std::string_view) { return 1.0; });
}

double LerchSim(const StackTrace& a, const StackTrace& b,
                const CorpusIndex& index) {
  return SoeSimilarity(a, b, index);
}

double RebucketSim(const StackTrace& a, const StackTrace& b,
                   const RebucketParams& params) {
  const auto ta = TokenViews(a);
  const auto tb = TokenViews(b);
  return seq::AlignmentSimilarity<std::string_view>(ta, tb, params.c,
                                                    params.o);
}

double HarmonicMix(double rebucket, double lerch, double weight) {
  if (rebucket <= 0.0 || lerch <= 0.0) return 0.0;
  const double mixed = 1.0 / (weight / rebucket + (1.0 - weight) / lerch);
  return std::clamp(mixed, 0.0, 1.0);
}

double MorooSim(const StackTrace& a, const StackTrace& b,
                const CorpusIndex& index, const RebucketParams& params,
                double weight) {
  return HarmonicMix(RebucketSim(a, b, params), LerchSim(a, b, index), weight);
}

}  // namespace tracedup
