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

#ifndef TRACEDUP_CORPUS_IO_H_
#define TRACEDUP_CORPUS_IO_H_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tracedup/report.h"

namespace tracedup {

// JSON Lines corpus format, one report per line:
//   {"id": "...", "exception_type": "...", "message": "...",
//    "frames": [{"qualifier": "...", "file": "...", "line": 42}],
//    "metadata": {...}}
// Absent optional fields are omitted; "frames" must not be empty.
std::string ReportToJsonLine(const CrashReport& report);
CrashReport ReportFromJsonLine(std::string_view line);

// Blank lines are skipped. Errors name the offending line. Duplicate ids are
// a MalformedReport error.
std::vector<CrashReport> ReadCorpus(std::istream& in);
std::vector<CrashReport> ReadCorpus(const std::filesystem::path& path);

void WriteCorpus(std::ostream& out, std::span<const CrashReport> reports);
void WriteCorpus(const std::filesystem::path& path,
                 std::span<const CrashReport> reports);

std::vector<StackTrace> TracesOf(std::span<const CrashReport> reports);

}  // namespace tracedup

#endif  // TRACEDUP_CORPUS_IO_H_
