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

#ifndef TRACEDUP_CORPUS_INDEX_H_
#define TRACEDUP_CORPUS_INDEX_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "tracedup/report.h"

namespace tracedup {

// Document frequencies of frame tokens over a corpus of stack traces.
// A token occurring several times in one trace counts once for that trace.
// Single writer while building; read-only (and thread-safe) afterwards.
class CorpusIndex {
 public:
  using DfMap = std::map<std::string, uint64_t, std::less<>>;

  CorpusIndex() = default;

  // Throws Error(kEmptyCorpus) for an empty corpus.
  static CorpusIndex Build(std::span<const StackTrace> corpus);
  static CorpusIndex Build(std::span<const CrashReport> corpus);

  // Restores an index from raw counts. Throws Error(kCorruptIndex) when
  // total == 0 or some count is outside [1, total].
  static CorpusIndex FromCounts(uint64_t total_traces, DfMap df);

  void Add(const StackTrace& trace);

  uint64_t total_traces() const { return total_traces_; }
  const DfMap& document_frequencies() const { return df_; }

  // 0 for tokens never seen.
  uint64_t DocumentFrequency(std::string_view token) const;

  // ln(total / df). Unseen tokens are treated as maximally rare (df = 1).
  double Idf(std::string_view token) const;

  // Median and maximum IDF over the known tokens (0 for an empty index).
  double MedianIdf() const;
  double MaxIdf() const;

  // {"total_traces": N, "df": {token: count, ...}}
  std::string ToJson() const;
  static CorpusIndex FromJson(std::string_view json);

  // Throws Error(kIoFailure) for unreadable/unwritable paths and
  // Error(kCorruptIndex) for malformed content.
  void Save(const std::filesystem::path& path) const;
  static CorpusIndex Load(const std::filesystem::path& path);

  bool operator==(const CorpusIndex&) const = default;

 private:
  uint64_t total_traces_ = 0;
  DfMap df_;
};

}  // namespace tracedup

#endif  // TRACEDUP_CORPUS_INDEX_H_
