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

#include "tracedup/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "json_util.h"
#include "random.h"
#include "tracedup/error.h"

namespace tracedup {
namespace {

constexpr std::string_view kExceptionTypes[] = {
    "java.lang.NullPointerException",
    "java.lang.IllegalStateException",
    "java.lang.IllegalArgumentException",
    "java.lang.IndexOutOfBoundsException",
    "java.lang.ClassCastException",
    "java.util.ConcurrentModificationException",
    "java.lang.UnsupportedOperationException",
    "java.lang.AssertionError",
};
constexpr std::string_view kProducts[] = {"IDEA", "PyCharm", "WebStorm",
                                          "CLion", "GoLand"};
constexpr std::string_view kStackOverflow = "java.lang.StackOverflowError";

// Inverse-CDF sampler for P(k) proportional to (k + 1)^-exponent.
class PowerLaw {
 public:
  PowerLaw(int n, double exponent) : cdf_(n) {
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
      total += std::pow(static_cast<double>(k + 1), -exponent);
      cdf_[k] = total;
    }
    for (double& c : cdf_) c /= total;
  }

  int Sample(internal::Rng& rng) const {
    const double u = rng.Uniform();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<int>(
        std::min<ptrdiff_t>(it - cdf_.begin(), cdf_.size() - 1));
  }

 private:
  std::vector<double> cdf_;
};

// Token ids below vocabulary_size are application frames; the rest are
// framework frames.
class Generator {
 public:
  explicit Generator(const GeneratorConfig& config)
      : config_(config),
        rng_(config.seed),
        vocabulary_(config.vocabulary_size, config.vocabulary_skew),
        sizes_(config.max_bucket_size, config.size_exponent) {
    for (int c = 0; c < config_.entry_chain_count; ++c) {
      std::vector<int> chain(rng_.Between(3, 8));
      for (int& token : chain) token = CommonFrame();
      chains_.push_back(std::move(chain));
    }
  }

  GeneratedCorpus Run() {
    struct Entry {
      std::vector<int> tokens;
      int bucket;
      bool soe;
    };
    std::vector<Entry> entries;
    std::vector<std::vector<int>> bases;
    std::vector<std::string_view> types;
    std::vector<int> families;

    for (int b = 0; b < config_.num_buckets; ++b) {
      const int size = sizes_.Sample(rng_) + 1;
      if (rng_.Bernoulli(config_.soe_probability)) {
        const SoeShape shape = MakeSoeShape();
        for (int m = 0; m < size; ++m) {
          entries.push_back({ExpandSoe(shape), b, true});
        }
        bases.emplace_back();
        types.push_back(kStackOverflow);
        families.push_back(b);
        continue;
      }
      std::vector<int> base;
      std::string_view type;
      const int parent = PickSiblingParent(bases);
      if (parent >= 0) {
        base = MakeSibling(bases[parent]);
        type = rng_.Bernoulli(0.5) ? types[parent] : RandomExceptionType();
      } else {
        base = MakeBase();
        type = RandomExceptionType();
      }
      for (int m = 0; m < size; ++m) {
        entries.push_back({Mutate(base), b, false});
      }
      bases.push_back(std::move(base));
      types.push_back(type);
      families.push_back(parent >= 0 ? families[parent] : b);
    }

    rng_.Shuffle(entries);
    GeneratedCorpus corpus;
    for (int b = 0; b < config_.num_buckets; ++b) corpus.family[b] = families[b];
    corpus.reports.reserve(entries.size());
    for (size_t k = 0; k < entries.size(); ++k) {
      char id[32];
      std::snprintf(id, sizeof(id), "r%05zu", k);
      CrashReport report;
      report.id = id;
      report.trace.exception_type = std::string(types[entries[k].bucket]);
      if (!entries[k].soe && rng_.Bernoulli(0.7)) {
        report.trace.message =
            "failure code " + std::to_string(rng_.Between(1, 999));
      }
      for (int token : entries[k].tokens) {
        report.trace.frames.push_back(MakeFrame(token));
      }
      report.metadata["product"] =
          std::string(kProducts[rng_.Below(std::size(kProducts))]);
      report.metadata["build"] = "2026.1." + std::to_string(rng_.Between(1, 40));
      corpus.truth[report.id] = entries[k].bucket;
      corpus.reports.push_back(std::move(report));
    }
    return corpus;
  }

 private:
  struct SoeShape {
    std::vector<int> top;
    std::vector<int> block;
    std::vector<int> tail;
  };

  int AppFrame() { return vocabulary_.Sample(rng_); }

  int CommonFrame() {
    return config_.vocabulary_size +
           static_cast<int>(rng_.Below(config_.common_frame_count));
  }

  int PoolFrame() {
    return config_.mutation_pool == MutationPool::kCommonFrames ? CommonFrame()
                                                                : AppFrame();
  }

  std::string_view RandomExceptionType() {
    return kExceptionTypes[rng_.Below(std::size(kExceptionTypes))];
  }

  std::vector<int> RandomTail() {
    const std::vector<int>& chain = chains_[rng_.Below(chains_.size())];
    const size_t keep = rng_.Between(2, static_cast<int64_t>(chain.size()));
    return std::vector<int>(chain.end() - keep, chain.end());
  }

  std::vector<int> MakeBase() {
    const int length =
        rng_.Between(config_.min_trace_length, config_.max_trace_length);
    std::vector<int> tail = RandomTail();
    const int app_length =
        std::max(1, length - static_cast<int>(tail.size()));
    std::vector<int> base;
    base.reserve(app_length + tail.size());
    for (int i = 0; i < app_length; ++i) {
      base.push_back(i > 0 && rng_.Bernoulli(config_.common_frame_fraction)
                         ? CommonFrame()
                         : AppFrame());
    }
    if (app_length >= 2 && rng_.Bernoulli(config_.recursion_probability)) {
      const size_t block = rng_.Between(1, std::min(3, app_length));
      const size_t start = rng_.Below(app_length - block + 1);
      const std::vector<int> copy(base.begin() + start,
                                  base.begin() + start + block);
      const int repeats = static_cast<int>(rng_.Between(1, 5));
      for (int r = 0; r < repeats; ++r) {
        base.insert(base.begin() + start, copy.begin(), copy.end());
      }
    }
    base.insert(base.end(), tail.begin(), tail.end());
    return base;
  }

  int PickSiblingParent(const std::vector<std::vector<int>>& bases) {
    std::vector<int> candidates;
    for (size_t b = 0; b < bases.size(); ++b) {
      if (!bases[b].empty()) candidates.push_back(static_cast<int>(b));
    }
    if (candidates.empty() || !rng_.Bernoulli(config_.sibling_probability)) {
      return -1;
    }
    return candidates[rng_.Below(candidates.size())];
  }

  std::vector<int> MakeSibling(const std::vector<int>& parent) {
    std::vector<int> base = parent;
    const int limit = std::min<int>(config_.sibling_divergence,
                                    static_cast<int>(base.size()));
    const int replaced = static_cast<int>(rng_.Between(1, std::max(1, limit)));
    for (int i = 0; i < replaced; ++i) base[i] = AppFrame();
    return base;
  }

  SoeShape MakeSoeShape() {
    SoeShape shape;
    shape.top.resize(rng_.Between(1, 3));
    for (int& token : shape.top) token = AppFrame();
    shape.block.resize(rng_.Between(1, 5));
    for (int& token : shape.block) {
      token = static_cast<int>(rng_.Below(config_.vocabulary_size));
    }
    shape.tail = RandomTail();
    return shape;
  }

  std::vector<int> ExpandSoe(const SoeShape& shape) {
    const int lowest = config_.min_recursion_depth > 0
                           ? config_.min_recursion_depth
                           : std::max(1, config_.recursion_depth / 2);
    const int depth =
        static_cast<int>(rng_.Between(lowest, config_.recursion_depth));
    const int repeats =
        std::max(2, depth / static_cast<int>(shape.block.size()));
    std::vector<int> trace = Mutate(shape.top);
    for (int r = 0; r < repeats; ++r) {
      trace.insert(trace.end(), shape.block.begin(), shape.block.end());
    }
    const std::vector<int> tail = Mutate(shape.tail);
    trace.insert(trace.end(), tail.begin(), tail.end());
    return trace;
  }

  double RateMultiplier(size_t position, size_t length) const {
    const bool deep = 2 * position >= length;
    switch (config_.mutation_placement) {
      case MutationPlacement::kUniform:
        return 1.0;
      case MutationPlacement::kDeep:
        return deep ? 2.0 : 0.0;
      case MutationPlacement::kTop:
        return deep ? 0.0 : 2.0;
    }
    return 1.0;
  }

  std::vector<int> Mutate(const std::vector<int>& base) {
    std::vector<int> out;
    out.reserve(base.size() + 4);
    for (size_t i = 0; i < base.size(); ++i) {
      const double m = RateMultiplier(i, base.size());
      if (rng_.Bernoulli(config_.deletion_rate * m)) continue;
      out.push_back(rng_.Bernoulli(config_.substitution_rate * m) ? PoolFrame()
                                                                  : base[i]);
      if (rng_.Bernoulli(config_.insertion_rate * m)) out.push_back(PoolFrame());
    }
    if (out.size() >= 4 && rng_.Bernoulli(config_.truncation_rate)) {
      const size_t drop = rng_.Between(1, static_cast<int64_t>(out.size() / 3));
      out.resize(out.size() - drop);
    }
    if (out.empty() && !base.empty()) out.push_back(base.front());
    return out;
  }

  Frame MakeFrame(int token) {
    Frame frame;
    if (token < config_.vocabulary_size) {
      frame.qualifier = SyntheticFrameName(token);
      frame.file = "Class" + std::to_string(token / 5) + ".java";
    } else {
      const int c = token - config_.vocabulary_size;
      frame.qualifier = "fw.core" + std::to_string(c % 5) + ".Dispatcher" +
                        std::to_string(c) + ".invoke";
      frame.file = "Dispatcher" + std::to_string(c) + ".java";
    }
    if (rng_.Bernoulli(0.03)) {
      frame.file.reset();
    } else {
      frame.line = rng_.Between(1, 2000);
    }
    return frame;
  }

  const GeneratorConfig& config_;
  internal::Rng rng_;
  PowerLaw vocabulary_;
  PowerLaw sizes_;
  std::vector<std::vector<int>> chains_;
};

uint64_t ChooseTwo(uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

void CheckProbability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string(name) + " must lie in [0, 1]");
  }
}

}  // namespace

void GeneratorConfig::Validate() const {
  CheckProbability(common_frame_fraction, "common_frame_fraction");
  CheckProbability(sibling_probability, "sibling_probability");
  CheckProbability(substitution_rate, "substitution_rate");
  CheckProbability(insertion_rate, "insertion_rate");
  CheckProbability(deletion_rate, "deletion_rate");
  CheckProbability(truncation_rate, "truncation_rate");
  CheckProbability(soe_probability, "soe_probability");
  CheckProbability(recursion_probability, "recursion_probability");
  const auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kInvalidConfig, what);
  };
  require(num_buckets >= 1, "num_buckets must be >= 1");
  require(max_bucket_size >= 1, "max_bucket_size must be >= 1");
  require(std::isfinite(size_exponent) && size_exponent >= 0.0,
          "size_exponent must be finite and >= 0");
  require(vocabulary_size >= 10, "vocabulary_size must be >= 10");
  require(std::isfinite(vocabulary_skew) && vocabulary_skew >= 0.0,
          "vocabulary_skew must be finite and >= 0");
  require(common_frame_count >= 1, "common_frame_count must be >= 1");
  require(entry_chain_count >= 1, "entry_chain_count must be >= 1");
  require(min_trace_length >= 1 && min_trace_length <= max_trace_length,
          "trace lengths must satisfy 1 <= min <= max");
  require(sibling_divergence >= 1, "sibling_divergence must be >= 1");
  require(recursion_depth >= 1, "recursion_depth must be >= 1");
  require(min_recursion_depth >= 0 && min_recursion_depth <= recursion_depth,
          "min_recursion_depth must lie in [0, recursion_depth]");
}

GeneratedCorpus GenerateCorpus(const GeneratorConfig& config) {
  config.Validate();
  return Generator(config).Run();
}

std::vector<LabeledPair> DerivePairs(std::span<const CrashReport> reports,
                                     const std::map<std::string, int>& truth,
                                     const PairRequest& request,
                                     const std::map<int, int>& family) {
  if (!(request.hard_negative_fraction >= 0.0 &&
        request.hard_negative_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "hard_negative_fraction must lie in [0, 1]");
  }
  const size_t n = reports.size();
  std::vector<int> bucket_of(n);
  std::vector<int> family_of(n);
  std::map<int, std::vector<size_t>> members;
  std::map<int, std::vector<size_t>> family_members;
  for (size_t i = 0; i < n; ++i) {
    const auto it = truth.find(reports[i].id);
    if (it == truth.end()) {
      throw Error(ErrorCode::kInsufficientData,
                  "report '" + reports[i].id + "' has no bucket");
    }
    bucket_of[i] = it->second;
    const auto f = family.find(it->second);
    family_of[i] = f == family.end() ? it->second : f->second;
    members[it->second].push_back(i);
  }
  for (size_t i = 0; i < n; ++i) family_members[family_of[i]].push_back(i);

  std::vector<const std::vector<size_t>*> buckets;
  std::vector<uint64_t> bucket_pairs;
  uint64_t total_positive = 0;
  for (const auto& [bucket, indices] : members) {
    buckets.push_back(&indices);
    bucket_pairs.push_back(ChooseTwo(indices.size()));
    total_positive += bucket_pairs.back();
  }
  const uint64_t total_negative = ChooseTwo(n) - total_positive;
  const size_t num_positive = request.num_positive;
  const size_t num_negative = request.num_negative;
  const auto num_hard = static_cast<size_t>(std::llround(
      request.hard_negative_fraction * static_cast<double>(num_negative)));

  std::vector<std::pair<size_t, size_t>> hard;
  if (num_hard > 0) {
    for (const auto& [f, indices] : family_members) {
      for (size_t x = 0; x < indices.size(); ++x) {
        for (size_t y = x + 1; y < indices.size(); ++y) {
          if (bucket_of[indices[x]] != bucket_of[indices[y]]) {
            hard.push_back(std::minmax(indices[x], indices[y]));
          }
        }
      }
    }
  }
  if (num_positive > total_positive || num_negative > total_negative ||
      num_hard > hard.size()) {
    throw Error(ErrorCode::kInsufficientData,
                "requested " + std::to_string(num_positive) + " positive / " +
                    std::to_string(num_negative) + " negative (" +
                    std::to_string(num_hard) + " hard) pairs, but only " +
                    std::to_string(total_positive) + " / " +
                    std::to_string(total_negative) + " (" +
                    std::to_string(hard.size()) + ") exist");
  }

  internal::Rng rng(request.seed);
  std::set<std::pair<size_t, size_t>> used;
  std::vector<std::pair<std::pair<size_t, size_t>, bool>> chosen;
  const auto ordered = [](size_t i, size_t j) {
    return i < j ? std::make_pair(i, j) : std::make_pair(j, i);
  };

  // Dense requests enumerate and shuffle; sparse ones use rejection.
  if (2 * num_positive > total_positive) {
    std::vector<std::pair<size_t, size_t>> all;
    for (const auto* indices : buckets) {
      for (size_t x = 0; x < indices->size(); ++x) {
        for (size_t y = x + 1; y < indices->size(); ++y) {
          all.push_back(ordered((*indices)[x], (*indices)[y]));
        }
      }
    }
    rng.Shuffle(all);
    for (size_t k = 0; k < num_positive; ++k) chosen.push_back({all[k], true});
  } else {
    std::vector<double> cumulative;
    double running = 0.0;
    for (uint64_t count : bucket_pairs) {
      running += static_cast<double>(count);
      cumulative.push_back(running);
    }
    while (chosen.size() < num_positive) {
      const double u = rng.Uniform() * running;
      const size_t b = std::min<size_t>(
          std::upper_bound(cumulative.begin(), cumulative.end(), u) -
              cumulative.begin(),
          buckets.size() - 1);
      const auto& indices = *buckets[b];
      if (indices.size() < 2) continue;
      const size_t x = rng.Below(indices.size());
      size_t y = rng.Below(indices.size() - 1);
      if (y >= x) ++y;
      const auto pair = ordered(indices[x], indices[y]);
      if (used.insert(pair).second) chosen.push_back({pair, true});
    }
  }

  rng.Shuffle(hard);
  for (size_t k = 0; k < num_hard; ++k) {
    used.insert(hard[k]);
    chosen.push_back({hard[k], false});
  }
  const size_t num_easy = num_negative - num_hard;
  if (2 * num_negative > total_negative) {
    std::vector<std::pair<size_t, size_t>> all;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        if (bucket_of[i] != bucket_of[j] && !used.contains({i, j})) {
          all.push_back({i, j});
        }
      }
    }
    rng.Shuffle(all);
    for (size_t k = 0; k < num_easy; ++k) chosen.push_back({all[k], false});
  } else {
    const size_t start = chosen.size();
    while (chosen.size() - start < num_easy) {
      const size_t i = rng.Below(n);
      const size_t j = rng.Below(n);
      if (i == j || bucket_of[i] == bucket_of[j]) continue;
      const auto pair = ordered(i, j);
      if (used.insert(pair).second) chosen.push_back({pair, false});
    }
  }

  rng.Shuffle(chosen);
  std::vector<LabeledPair> pairs;
  pairs.reserve(chosen.size());
  for (const auto& [indices, label] : chosen) {
    pairs.push_back(
        {reports[indices.first].id, reports[indices.second].id, label});
  }
  return pairs;
}

std::string TruthToJson(const std::map<std::string, int>& truth) {
  nlohmann::ordered_json json = nlohmann::ordered_json::object();
  for (const auto& [id, bucket] : truth) json[id] = bucket;
  return json.dump();
}

std::map<std::string, int> TruthFromJson(std::string_view text) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kInvalidArgument, e.what());
  }
  if (!json.is_object()) {
    throw Error(ErrorCode::kInvalidArgument,
                "truth map must be an object of id -> bucket");
  }
  std::map<std::string, int> truth;
  for (const auto& [id, bucket] : json.items()) {
    if (!bucket.is_number_integer()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "bucket of '" + id + "' is not an integer");
    }
    truth[id] = bucket.get<int>();
  }
  return truth;
}

void SaveTruth(const std::filesystem::path& path,
               const std::map<std::string, int>& truth) {
  internal::WriteFile(path, TruthToJson(truth) + "\n");
}

std::map<std::string, int> LoadTruth(const std::filesystem::path& path) {
  const std::string text = internal::ReadFile(path);
  try {
    return TruthFromJson(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

std::vector<uint64_t> BucketSizes(const std::map<std::string, int>& truth) {
  std::map<int, uint64_t> counts;
  for (const auto& [id, bucket] : truth) ++counts[bucket];
  std::vector<uint64_t> sizes;
  sizes.reserve(counts.size());
  for (const auto& [bucket, count] : counts) sizes.push_back(count);
  return sizes;
}

std::string SyntheticFrameName(int id) {
  return "pkg" + std::to_string(id % 23) + ".Class" + std::to_string(id / 5) +
         ".method" + std::to_string(id % 5);
}

}  // namespace tracedup
