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

#include "tracedup/corpus_index.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "json_util.h"
#include "tracedup/error.h"

namespace tracedup {

CorpusIndex CorpusIndex::Build(std::span<const StackTrace> corpus) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "cannot index an empty corpus");
  }
  CorpusIndex index;
  for (const StackTrace& trace : corpus) index.Add(trace);
  return index;
}

CorpusIndex CorpusIndex::Build(std::span<const CrashReport> corpus) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "cannot index an empty corpus");
  }
  CorpusIndex index;
  for (const CrashReport& report : corpus) index.Add(report.trace);
  return index;
}

CorpusIndex CorpusIndex::FromCounts(uint64_t total_traces, DfMap df) {
  if (total_traces == 0) {
    throw Error(ErrorCode::kCorruptIndex, "total_traces must be positive");
  }
  for (const auto& [token, count] : df) {
    if (count == 0 || count > total_traces) {
      throw Error(ErrorCode::kCorruptIndex,
                  "document frequency of '" + token + "' out of range");
    }
  }
  CorpusIndex index;
  index.total_traces_ = total_traces;
  index.df_ = std::move(df);
  return index;
}

void CorpusIndex::Add(const StackTrace& trace) {
  ++total_traces_;
  std::set<std::string_view> distinct;
  for (const Frame& frame : trace.frames) distinct.insert(FrameToken(frame));
  for (std::string_view token : distinct) {
    auto it = df_.find(token);
    if (it == df_.end()) {
      df_.emplace(std::string(token), 1);
    } else {
      ++it->second;
    }
  }
}

uint64_t CorpusIndex::DocumentFrequency(std::string_view token) const {
  const auto it = df_.find(token);
  return it == df_.end() ? 0 : it->second;
}

double CorpusIndex::Idf(std::string_view token) const {
  if (total_traces_ == 0) return 0.0;
  const uint64_t df = std::max<uint64_t>(DocumentFrequency(token), 1);
  return std::log(static_cast<double>(total_traces_) /
                  static_cast<double>(df));
}

double CorpusIndex::MedianIdf() const {
  if (df_.empty()) return 0.0;
  std::vector<double> values;
  values.reserve(df_.size());
  for (const auto& [token, count] : df_) {
    values.push_back(std::log(static_cast<double>(total_traces_) /
                              static_cast<double>(count)));
  }
  std::sort(values.begin(), values.end());
  const size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

double CorpusIndex::MaxIdf() const {
  if (df_.empty()) return 0.0;
  uint64_t min_df = total_traces_;
  for (const auto& [token, count] : df_) min_df = std::min(min_df, count);
  return std::log(static_cast<double>(total_traces_) /
                  static_cast<double>(min_df));
}

std::string CorpusIndex::ToJson() const {
  nlohmann::ordered_json json;
  json["total_traces"] = total_traces_;
  nlohmann::ordered_json df = nlohmann::ordered_json::object();
  for (const auto& [token, count] : df_) df[token] = count;
  json["df"] = std::move(df);
  return json.dump();
}

CorpusIndex CorpusIndex::FromJson(std::string_view text) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kCorruptIndex, e.what());
  }
  if (!json.is_object() || !json.contains("total_traces") ||
      !json.contains("df")) {
    throw Error(ErrorCode::kCorruptIndex,
                "expected {\"total_traces\": N, \"df\": {...}}");
  }
  const nlohmann::json& total = json["total_traces"];
  const nlohmann::json& df_json = json["df"];
  if (!total.is_number_unsigned() || !df_json.is_object()) {
    throw Error(ErrorCode::kCorruptIndex, "schema mismatch");
  }
  DfMap df;
  for (const auto& [token, count] : df_json.items()) {
    if (!count.is_number_unsigned()) {
      throw Error(ErrorCode::kCorruptIndex,
                  "count for '" + token + "' is not a positive integer");
    }
    df.emplace(token, count.get<uint64_t>());
  }
  return FromCounts(total.get<uint64_t>(), std::move(df));
}

void CorpusIndex::Save(const std::filesystem::path& path) const {
  internal::WriteFile(path, ToJson() + "\n");
}

CorpusIndex CorpusIndex::Load(const std::filesystem::path& path) {
  const std::string text = internal::ReadFile(path);
  try {
    return FromJson(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

}  // namespace tracedup
