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

#include "tracedup/scoring.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tracedup/error.h"
#include "tracedup/parallel.h"

namespace tracedup {
namespace {

constexpr std::array<Method, 8> kAllMethods = {
    Method::kTraceSim, Method::kPrefix,    Method::kLevenshtein,
    Method::kCosine,   Method::kCosineIdf, Method::kLerch,
    Method::kRebucket, Method::kMoroo,
};

double LengthRatio(size_t numerator, size_t a, size_t b) {
  const size_t longest = std::max(a, b);
  if (longest == 0) return 1.0;
  return static_cast<double>(numerator) / static_cast<double>(longest);
}

}  // namespace

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kTraceSim:
      return "tracesim";
    case Method::kPrefix:
      return "prefix";
    case Method::kLevenshtein:
      return "levenshtein";
    case Method::kCosine:
      return "cosine";
    case Method::kCosineIdf:
      return "cosine-idf";
    case Method::kLerch:
      return "lerch";
    case Method::kRebucket:
      return "rebucket";
    case Method::kMoroo:
      return "moroo";
  }
  return "unknown";
}

std::optional<Method> ParseMethod(std::string_view name) {
  for (Method method : kAllMethods) {
    if (MethodName(method) == name) return method;
  }
  return std::nullopt;
}

std::span<const Method> AllMethods() { return kAllMethods; }

std::string MethodConfig::DisplayName() const {
  return label.empty() ? std::string(MethodName(method)) : label;
}

void ValidateMethodConfig(const MethodConfig& config) {
  ValidateHyperparams(config.hyperparams);
  ValidateRebucketParams(config.rebucket);
  if (!(config.moroo_weight >= 0.0 && config.moroo_weight <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "moroo weight must be in [0, 1]");
  }
}

PreparedCorpus::PreparedCorpus(std::span<const CrashReport> reports,
                               const CorpusIndex& index)
    : index_(index) {
  // Ids follow the lexicographic order of the tokens, so sorting by id
  // visits tokens in the same order as sorting the strings.
  std::vector<std::string_view> vocabulary;
  for (const CrashReport& report : reports) {
    for (const Frame& frame : report.trace.frames) {
      vocabulary.push_back(FrameToken(frame));
    }
  }
  std::sort(vocabulary.begin(), vocabulary.end());
  vocabulary.erase(std::unique(vocabulary.begin(), vocabulary.end()),
                   vocabulary.end());
  idf_.reserve(vocabulary.size());
  for (std::string_view token : vocabulary) idf_.push_back(index_.Idf(token));

  ids_.reserve(reports.size());
  tokens_.reserve(reports.size());
  counts_.reserve(reports.size());
  soe_.reserve(reports.size());
  for (const CrashReport& report : reports) {
    if (!by_id_.emplace(report.id, ids_.size()).second) {
      throw Error(ErrorCode::kMalformedReport,
                  "duplicate report id '" + report.id + "'");
    }
    ids_.push_back(report.id);
    std::vector<uint32_t> tokens;
    tokens.reserve(report.trace.frames.size());
    for (const Frame& frame : report.trace.frames) {
      const auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(),
                                       std::string_view(FrameToken(frame)));
      tokens.push_back(static_cast<uint32_t>(it - vocabulary.begin()));
    }
    counts_.push_back(seq::CountTerms<uint32_t>(tokens));
    tokens_.push_back(std::move(tokens));
    soe_.push_back(IsSoe(report.trace) ? 1 : 0);
  }
}

std::optional<size_t> PreparedCorpus::Find(std::string_view id) const {
  const auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

PairScorer::PairScorer(const PreparedCorpus& corpus, MethodConfig config)
    : corpus_(corpus), config_(std::move(config)) {
  ValidateMethodConfig(config_);
  if (config_.method != Method::kTraceSim) return;

  const size_t n = corpus_.size();
  collapsed_.resize(n);
  weights_.resize(n);
  for (size_t t = 0; t < n; ++t) {
    std::span<const uint32_t> tokens = corpus_.tokens(t);
    std::vector<uint32_t> sequence(tokens.begin(), tokens.end());
    const bool soe_routed = config_.tracesim.soe_path && corpus_.is_soe(t);
    if (config_.tracesim.remove_recursion && !soe_routed) {
      std::vector<uint32_t> kept_tokens;
      for (size_t k : seq::CollapseRepeats<uint32_t>(
               tokens, config_.tracesim.max_recursion_block)) {
        kept_tokens.push_back(tokens[k]);
      }
      sequence = std::move(kept_tokens);
    }
    std::vector<double> weights;
    if (!soe_routed) {
      weights.reserve(sequence.size());
      for (size_t k = 0; k < sequence.size(); ++k) {
        weights.push_back(FrameWeight(k, corpus_.idf(sequence[k]),
                                      config_.hyperparams, config_.tracesim));
      }
    }
    collapsed_[t] = std::move(sequence);
    weights_[t] = std::move(weights);
  }
}

double PairScorer::LerchScore(size_t i, size_t j) const {
  return seq::CosineSimilarity<uint32_t>(
      corpus_.term_counts(i), corpus_.term_counts(j),
      [this](uint32_t token) { return corpus_.idf(token); });
}

double PairScorer::TraceSimScore(size_t i, size_t j) const {
  if (config_.tracesim.soe_path) {
    const bool soe_i = corpus_.is_soe(i);
    const bool soe_j = corpus_.is_soe(j);
    if (soe_i && soe_j) return LerchScore(i, j);
    if (soe_i != soe_j) return 0.0;
  }
  return seq::WeightedEditSimilarity<uint32_t>(collapsed_[i], weights_[i],
                                               collapsed_[j], weights_[j]);
}

double PairScorer::Score(size_t i, size_t j) const {
  const std::span<const uint32_t> a = corpus_.tokens(i);
  const std::span<const uint32_t> b = corpus_.tokens(j);
  switch (config_.method) {
    case Method::kTraceSim:
      return TraceSimScore(i, j);
    case Method::kPrefix:
      return LengthRatio(seq::CommonPrefixLength<uint32_t>(a, b), a.size(),
                         b.size());
    case Method::kLevenshtein:
      return 1.0 - LengthRatio(seq::Levenshtein<uint32_t>(a, b), a.size(),
                               b.size());
    case Method::kCosine:
      return seq::CosineSimilarity<uint32_t>(corpus_.term_counts(i),
                                             corpus_.term_counts(j),
                                             [](uint32_t) { return 1.0; });
    case Method::kCosineIdf:
    case Method::kLerch:
      return LerchScore(i, j);
    case Method::kRebucket:
      return seq::AlignmentSimilarity<uint32_t>(a, b, config_.rebucket.c,
                                                config_.rebucket.o);
    case Method::kMoroo:
      return HarmonicMix(seq::AlignmentSimilarity<uint32_t>(
                             a, b, config_.rebucket.c, config_.rebucket.o),
                         LerchScore(i, j), config_.moroo_weight);
  }
  return 0.0;
}

std::vector<double> PairScorer::ScoreAll(std::span<const IndexPair> pairs,
                                         int threads) const {
  std::vector<double> scores(pairs.size());
  ParallelFor(pairs.size(), threads, [&](size_t begin, size_t end) {
    for (size_t k = begin; k < end; ++k) {
      scores[k] = Score(pairs[k].first, pairs[k].second);
    }
  });
  return scores;
}

}  // namespace tracedup
