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

#include "tracedup/tracesim.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "json_util.h"
#include "tracedup/error.h"
#include "tracedup/sequence_metrics.h"

namespace tracedup {
namespace {

std::vector<std::string_view> TokenViews(const StackTrace& trace) {
  std::vector<std::string_view> tokens;
  tokens.reserve(trace.frames.size());
  for (const Frame& frame : trace.frames) tokens.push_back(FrameToken(frame));
  return tokens;
}

double NumberMember(const nlohmann::json& json, const char* key) {
  const auto it = json.find(key);
  if (it == json.end() || !it->is_number()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("hyperparameter '") + key +
                    "' missing or not a number");
  }
  return it->get<double>();
}

}  // namespace

Hyperparams DefaultHyperparams(const CorpusIndex& index) {
  return Hyperparams{1.0, 2.0, index.MedianIdf()};
}

void ValidateHyperparams(const Hyperparams& hp) {
  if (!std::isfinite(hp.alpha) || hp.alpha < 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "alpha must be finite and >= 0");
  }
  if (!std::isfinite(hp.beta) || !std::isfinite(hp.gamma)) {
    throw Error(ErrorCode::kInvalidArgument, "beta and gamma must be finite");
  }
}

std::string HyperparamsToJson(const Hyperparams& hp) {
  nlohmann::ordered_json json;
  json["alpha"] = internal::Round6(hp.alpha);
  json["beta"] = internal::Round6(hp.beta);
  json["gamma"] = internal::Round6(hp.gamma);
  return json.dump();
}

Hyperparams HyperparamsFromJson(std::string_view text) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kInvalidArgument, e.what());
  }
  if (!json.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "hyperparameters must be an object");
  }
  Hyperparams hp{NumberMember(json, "alpha"), NumberMember(json, "beta"),
                 NumberMember(json, "gamma")};
  ValidateHyperparams(hp);
  return hp;
}

Hyperparams LoadHyperparams(const std::filesystem::path& path) {
  const std::string text = internal::ReadFile(path);
  try {
    return HyperparamsFromJson(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double LocalWeight(int64_t rank, double alpha) {
  if (rank < 1) {
    throw Error(ErrorCode::kInvalidRank,
                "rank must be >= 1, got " + std::to_string(rank));
  }
  if (alpha == 0.0 || rank == 1) return 1.0;
  return 1.0 / std::pow(static_cast<double>(rank), alpha);
}

double GlobalWeight(double idf, double beta, double gamma) {
  return Sigmoid(beta * (idf - gamma));
}

double FrameWeight(size_t position, double idf, const Hyperparams& hp,
                   const TraceSimOptions& options) {
  const double local =
      options.use_local_weight
          ? LocalWeight(static_cast<int64_t>(position) + 1, hp.alpha)
          : 1.0;
  const double global =
      options.use_global_weight ? GlobalWeight(idf, hp.beta, hp.gamma) : 1.0;
  return std::max(local * global, std::numeric_limits<double>::min());
}

WeightedTrace FrameWeights(const StackTrace& trace, const CorpusIndex& index,
                           const Hyperparams& hp,
                           const TraceSimOptions& options) {
  WeightedTrace weighted;
  weighted.tokens = FrameTokens(trace);
  weighted.weights.reserve(weighted.tokens.size());
  for (size_t i = 0; i < weighted.tokens.size(); ++i) {
    weighted.weights.push_back(
        FrameWeight(i, index.Idf(weighted.tokens[i]), hp, options));
  }
  return weighted;
}

double WeightedLevenshtein(const WeightedTrace& a, const WeightedTrace& b) {
  return seq::WeightedLevenshtein<std::string>(a.tokens, a.weights, b.tokens,
                                               b.weights);
}

double NormalizedSimilarity(const WeightedTrace& a, const WeightedTrace& b) {
  return seq::WeightedEditSimilarity<std::string>(a.tokens, a.weights,
                                                  b.tokens, b.weights);
}

bool IsSoe(const StackTrace& trace) {
  return std::string_view(trace.exception_type).ends_with("StackOverflowError");
}

double SoeSimilarity(const StackTrace& a, const StackTrace& b,
                     const CorpusIndex& index) {
  const std::vector<std::string_view> ta = TokenViews(a);
  const std::vector<std::string_view> tb = TokenViews(b);
  return seq::CosineSimilarity<std::string_view>(
      seq::CountTerms<std::string_view>(ta),
      seq::CountTerms<std::string_view>(tb),
      [&](std::string_view token) { return index.Idf(token); });
}

StackTrace RemoveRecursion(const StackTrace& trace, size_t max_block) {
  const std::vector<std::string_view> tokens = TokenViews(trace);
  const std::vector<size_t> kept =
      seq::CollapseRepeats<std::string_view>(tokens, max_block);
  StackTrace result;
  result.exception_type = trace.exception_type;
  result.message = trace.message;
  result.frames.reserve(kept.size());
  for (size_t i : kept) result.frames.push_back(trace.frames[i]);
  return result;
}

double TraceSim(const StackTrace& a, const StackTrace& b,
                const CorpusIndex& index, const Hyperparams& hp,
                const TraceSimOptions& options) {
  if (options.soe_path) {
    const bool soe_a = IsSoe(a);
    const bool soe_b = IsSoe(b);
    if (soe_a && soe_b) return SoeSimilarity(a, b, index);
    if (soe_a != soe_b) return 0.0;
  }
  if (options.remove_recursion) {
    return NormalizedSimilarity(
        FrameWeights(RemoveRecursion(a, options.max_recursion_block), index,
                     hp, options),
        FrameWeights(RemoveRecursion(b, options.max_recursion_block), index,
                     hp, options));
  }
  return NormalizedSimilarity(FrameWeights(a, index, hp, options),
                              FrameWeights(b, index, hp, options));
}

}  // namespace tracedup
