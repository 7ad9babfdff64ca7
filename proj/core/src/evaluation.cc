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

#include "tracedup/evaluation.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "json_util.h"
#include "random.h"
#include "tracedup/error.h"

namespace tracedup {
namespace {

std::string Fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  return buffer;
}

std::string PadRight(std::string s, size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

LabeledPair PairFromJson(const std::string& line) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kInvalidArgument, e.what());
  }
  if (!json.is_object() || !json.contains("a") || !json.contains("b") ||
      !json.contains("label") || !json["a"].is_string() ||
      !json["b"].is_string() || !json["label"].is_boolean()) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected {\"a\": id, \"b\": id, \"label\": bool}");
  }
  return LabeledPair{json["a"].get<std::string>(), json["b"].get<std::string>(),
                     json["label"].get<bool>()};
}

}  // namespace

std::vector<LabeledPair> ReadPairs(std::istream& in) {
  std::vector<LabeledPair> pairs;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      pairs.push_back(PairFromJson(line));
    } catch (const Error& e) {
      throw Error(e.code(),
                  "line " + std::to_string(line_number) + ": " + e.detail());
    }
    if (pairs.back().a == pairs.back().b) {
      throw Error(ErrorCode::kInvalidArgument,
                  "line " + std::to_string(line_number) +
                      ": pair compares report '" + pairs.back().a +
                      "' with itself");
    }
  }
  return pairs;
}

std::vector<LabeledPair> ReadPairs(const std::filesystem::path& path) {
  if (path.empty()) throw Error(ErrorCode::kIoFailure, "empty pairs path");
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot open '" + path.string() + "'");
  }
  try {
    return ReadPairs(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

void WritePairs(std::ostream& out, std::span<const LabeledPair> pairs) {
  for (const LabeledPair& pair : pairs) {
    nlohmann::ordered_json json;
    json["a"] = pair.a;
    json["b"] = pair.b;
    json["label"] = pair.label;
    out << json.dump() << '\n';
  }
}

void WritePairs(const std::filesystem::path& path,
                std::span<const LabeledPair> pairs) {
  std::ostringstream out;
  WritePairs(out, pairs);
  internal::WriteFile(path, out.str());
}

PairSplit SplitPairs(std::span<const LabeledPair> pairs, double train_fraction,
                     uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "train fraction must lie strictly between 0 and 1");
  }
  const size_t n = pairs.size();
  const auto train_size = static_cast<size_t>(
      std::llround(train_fraction * static_cast<double>(n)));
  if (train_size == 0 || train_size >= n) {
    throw Error(ErrorCode::kInsufficientPairs,
                std::to_string(n) + " pairs cannot be split " +
                    "with train fraction " + Fixed(train_fraction, 3));
  }
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  internal::Rng rng(seed);
  rng.Shuffle(order);

  PairSplit split;
  split.train.reserve(train_size);
  split.test.reserve(n - train_size);
  for (size_t k = 0; k < n; ++k) {
    (k < train_size ? split.train : split.test).push_back(pairs[order[k]]);
  }
  return split;
}

double RocAuc(std::span<const ScoredLabel> scores) {
  uint64_t positives = 0;
  for (const ScoredLabel& s : scores) {
    if (std::isnan(s.score)) {
      throw Error(ErrorCode::kInvalidArgument, "NaN score");
    }
    if (s.label) ++positives;
  }
  const uint64_t negatives = scores.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw Error(ErrorCode::kDegenerateLabels,
                "ROC AUC needs both positive and negative pairs (got " +
                    std::to_string(positives) + " positive, " +
                    std::to_string(negatives) + " negative)");
  }

  std::vector<ScoredLabel> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredLabel& x, const ScoredLabel& y) {
              return x.score < y.score;
            });
  // Twice the Mann-Whitney U statistic, accumulated exactly in integers.
  uint64_t twice_u = 0;
  uint64_t negatives_below = 0;
  size_t i = 0;
  while (i < sorted.size()) {
    size_t j = i;
    uint64_t group_pos = 0;
    uint64_t group_neg = 0;
    while (j < sorted.size() && sorted[j].score == sorted[i].score) {
      (sorted[j].label ? group_pos : group_neg) += 1;
      ++j;
    }
    twice_u += 2 * group_pos * negatives_below + group_pos * group_neg;
    negatives_below += group_neg;
    i = j;
  }
  return static_cast<double>(twice_u) /
         (2.0 * static_cast<double>(positives) * static_cast<double>(negatives));
}

double ErrorReduction(double auc_better, double auc_worse) {
  if (!(auc_better >= 0.0 && auc_better <= 1.0 && auc_worse >= 0.0 &&
        auc_worse <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "AUC values must lie in [0, 1]");
  }
  if (auc_worse == 1.0) {
    throw Error(ErrorCode::kDivisionByZero,
                "error reduction relative to a perfect AUC is undefined");
  }
  return (auc_better - auc_worse) * 100.0 / (1.0 - auc_worse);
}

std::vector<ResolvedPair> ResolvePairs(const PreparedCorpus& corpus,
                                       std::span<const LabeledPair> pairs) {
  std::vector<ResolvedPair> resolved;
  resolved.reserve(pairs.size());
  for (const LabeledPair& pair : pairs) {
    const auto a = corpus.Find(pair.a);
    const auto b = corpus.Find(pair.b);
    if (!a || !b) {
      throw Error(ErrorCode::kUnknownReport,
                  "report '" + (a ? pair.b : pair.a) + "' is not in the corpus");
    }
    if (*a == *b) {
      throw Error(ErrorCode::kInvalidArgument,
                  "pair compares report '" + pair.a + "' with itself");
    }
    resolved.push_back(ResolvedPair{{*a, *b}, pair.label});
  }
  return resolved;
}

void RequireBothLabels(std::span<const ResolvedPair> pairs) {
  size_t positives = 0;
  for (const ResolvedPair& pair : pairs) positives += pair.label ? 1 : 0;
  if (positives == 0 || positives == pairs.size()) {
    throw Error(ErrorCode::kDegenerateLabels,
                "pairs must contain both duplicate and non-duplicate labels "
                "(got " + std::to_string(positives) + " positive, " +
                    std::to_string(pairs.size() - positives) + " negative)");
  }
}

EvalReport EvaluateMethod(const PairScorer& scorer,
                          std::span<const ResolvedPair> pairs, int threads) {
  RequireBothLabels(pairs);
  std::vector<IndexPair> indices;
  indices.reserve(pairs.size());
  for (const ResolvedPair& pair : pairs) indices.push_back(pair.indices);
  const std::vector<double> scores = scorer.ScoreAll(indices, threads);

  std::vector<ScoredLabel> scored(pairs.size());
  EvalReport report;
  report.method = scorer.config().DisplayName();
  report.num_pairs = pairs.size();
  for (size_t k = 0; k < pairs.size(); ++k) {
    scored[k] = ScoredLabel{scores[k], pairs[k].label};
    (pairs[k].label ? report.num_positive : report.num_negative) += 1;
  }
  report.roc_auc = RocAuc(scored);
  return report;
}

void AssignErrorReductions(std::vector<EvalReport>& sorted_reports) {
  for (size_t k = 0; k < sorted_reports.size(); ++k) {
    sorted_reports[k].error_reduction.reset();
    if (k + 1 < sorted_reports.size() &&
        sorted_reports[k + 1].roc_auc < 1.0) {
      sorted_reports[k].error_reduction = ErrorReduction(
          sorted_reports[k].roc_auc, sorted_reports[k + 1].roc_auc);
    }
  }
}

std::vector<EvalReport> Evaluate(const PreparedCorpus& corpus,
                                 std::span<const LabeledPair> pairs,
                                 std::span<const MethodConfig> methods,
                                 int threads) {
  const std::vector<ResolvedPair> resolved = ResolvePairs(corpus, pairs);
  RequireBothLabels(resolved);
  std::vector<EvalReport> reports;
  reports.reserve(methods.size());
  for (const MethodConfig& config : methods) {
    const PairScorer scorer(corpus, config);
    reports.push_back(EvaluateMethod(scorer, resolved, threads));
  }
  std::stable_sort(reports.begin(), reports.end(),
                   [](const EvalReport& x, const EvalReport& y) {
                     return x.roc_auc > y.roc_auc;
                   });
  AssignErrorReductions(reports);
  return reports;
}

std::vector<MethodConfig> AblationConfigs(const Hyperparams& hp) {
  std::vector<MethodConfig> configs(4);
  for (MethodConfig& config : configs) {
    config.method = Method::kTraceSim;
    config.hyperparams = hp;
  }
  configs[0].label = "TraceSim";
  configs[1].label = "TraceSim without gw";
  configs[1].tracesim.use_global_weight = false;
  configs[2].label = "TraceSim without lw";
  configs[2].tracesim.use_local_weight = false;
  configs[3].label = "TraceSim without SOEs";
  configs[3].tracesim.soe_path = false;
  return configs;
}

std::vector<EvalReport> RunAblation(const PreparedCorpus& corpus,
                                    std::span<const LabeledPair> test_pairs,
                                    const Hyperparams& hp, int threads) {
  const std::vector<ResolvedPair> resolved = ResolvePairs(corpus, test_pairs);
  RequireBothLabels(resolved);
  std::vector<EvalReport> reports;
  for (const MethodConfig& config : AblationConfigs(hp)) {
    const PairScorer scorer(corpus, config);
    reports.push_back(EvaluateMethod(scorer, resolved, threads));
  }
  return reports;
}

std::string EvalReportsToJson(std::span<const EvalReport> reports) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const EvalReport& report : reports) {
    nlohmann::ordered_json row;
    row["method"] = report.method;
    row["roc_auc"] = internal::Round6(report.roc_auc);
    row["pairs"] = report.num_pairs;
    row["positive"] = report.num_positive;
    row["negative"] = report.num_negative;
    if (report.error_reduction) {
      row["error_reduction"] = internal::Round6(*report.error_reduction);
    } else {
      row["error_reduction"] = nullptr;
    }
    rows.push_back(std::move(row));
  }
  return rows.dump(2);
}

std::string FormatEvalTable(std::span<const EvalReport> reports) {
  size_t width = 6;
  for (const EvalReport& report : reports) {
    width = std::max(width, report.method.size());
  }
  std::ostringstream out;
  out << PadRight("Method", width) << "  ROC AUC  Error red.  Pairs\n";
  for (const EvalReport& report : reports) {
    const std::string reduction =
        report.error_reduction ? Fixed(*report.error_reduction, 1) + "%" : "-";
    out << PadRight(report.method, width) << "  "
        << PadRight(Fixed(report.roc_auc, 4), 7) << "  "
        << PadRight(reduction, 10) << "  " << report.num_pairs << '\n';
  }
  return out.str();
}

std::array<IssueSizeBucket, 10> IssueSizeBuckets(
    std::span<const uint64_t> issue_sizes) {
  if (issue_sizes.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no issue sizes given");
  }
  uint64_t largest = 0;
  for (uint64_t size : issue_sizes) {
    if (size == 0) {
      throw Error(ErrorCode::kInvalidArgument, "issue sizes must be positive");
    }
    largest = std::max(largest, size);
  }
  if (largest < 2) {
    throw Error(ErrorCode::kDegenerateSizes,
                "every issue has size 1; ln(max size) = 0");
  }

  std::array<IssueSizeBucket, 10> buckets{};
  for (size_t b = 0; b < buckets.size(); ++b) {
    buckets[b].lower = static_cast<double>(b) / 10.0;
    buckets[b].upper = static_cast<double>(b + 1) / 10.0;
  }
  const double log_max = std::log(static_cast<double>(largest));
  for (uint64_t size : issue_sizes) {
    const double r = std::log(static_cast<double>(size)) / log_max;
    // The slack keeps exact decile boundaries such as ln 10 / ln 100 = 0.5
    // from falling one bucket low through rounding.
    const auto slot = static_cast<size_t>(std::floor(r * 10.0 + 1e-9));
    IssueSizeBucket& bucket = buckets[std::min<size_t>(slot, 9)];
    ++bucket.issues;
    bucket.reports += size;
  }
  return buckets;
}

std::string IssueSizeBucketsToJson(
    const std::array<IssueSizeBucket, 10>& buckets) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const IssueSizeBucket& bucket : buckets) {
    nlohmann::ordered_json row;
    row["lower"] = internal::Round6(bucket.lower);
    row["upper"] = internal::Round6(bucket.upper);
    row["issues"] = bucket.issues;
    row["reports"] = bucket.reports;
    rows.push_back(std::move(row));
  }
  return rows.dump(2);
}

std::string FormatIssueSizeBuckets(
    const std::array<IssueSizeBucket, 10>& buckets) {
  std::ostringstream out;
  out << "Bucket      Issues  Reports\n";
  for (size_t b = 0; b < buckets.size(); ++b) {
    const std::string range = "[" + Fixed(buckets[b].lower, 1) + ", " +
                              Fixed(buckets[b].upper, 1) +
                              (b + 1 == buckets.size() ? "]" : ")");
    out << PadRight(range, 10) << "  " << PadRight(std::to_string(buckets[b].issues), 6)
        << "  " << buckets[b].reports << '\n';
  }
  return out.str();
}

}  // namespace tracedup
