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

#ifndef TRACEDUP_REPORT_H_
#define TRACEDUP_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tracedup {

// One call-stack entry. Only `qualifier` takes part in frame identity.
struct Frame {
  std::string qualifier;
  std::optional<std::string> file;
  std::optional<int64_t> line;

  bool operator==(const Frame&) const = default;
};

// Index 0 is the top of the stack, i.e. the method that raised the error.
struct StackTrace {
  std::vector<Frame> frames;
  std::string exception_type;
  std::optional<std::string> message;

  bool operator==(const StackTrace&) const = default;
};

struct CrashReport {
  std::string id;
  StackTrace trace;
  std::map<std::string, std::string> metadata;

  bool operator==(const CrashReport&) const = default;
};

// Canonical identity of a frame: the qualifier alone. File and line drift
// between product versions and are deliberately ignored.
inline const std::string& FrameToken(const Frame& frame) {
  return frame.qualifier;
}

std::vector<std::string> FrameTokens(const StackTrace& trace);

// Throws Error(kInvalidArgument) when `frame` violates the Frame invariants
// (empty qualifier, whitespace in qualifier, negative line).
void ValidateFrame(const Frame& frame);

// Parses a single JVM-style report:
//
//   id: r17                                  <- optional "key: value"
//   product: IDEA                               metadata lines
//   java.lang.IllegalStateException: boom    <- exception header
//   	at com.example.Foo.bar(Foo.java:42)      <- frames, top first
//   	at com.example.Main.main(Unknown Source)
//   	... 3 more
//   Caused by: ...                           <- chain is dropped
//
// The exception header is the last non-blank line before the first frame
// line. A metadata key named "id" becomes the report id; otherwise
// `default_id` is used. Throws Error(kMalformedReport) naming the first
// offending line when no frame line exists. `first_line_number` offsets the
// line numbers reported in errors (for reports embedded in larger files).
CrashReport ParseReport(std::string_view text, std::string_view default_id = "",
                        int first_line_number = 1);

// Renders a report in the text form accepted by ParseReport.
// ParseReport(FormatReport(r)) == r when the frames obey the Frame
// invariants, the exception type is non-empty and free of ':', and the
// message, metadata keys and values are single lines without surrounding
// whitespace (keys also without ':' and other than "id").
std::string FormatReport(const CrashReport& report);

// Splits text holding several reports separated by blank lines and parses
// each one. Reports without an "id" metadata line get `<id_prefix>` when the
// text holds a single report, and `<id_prefix>#<k>` (k counted from 0)
// otherwise.
std::vector<CrashReport> ParseReports(std::string_view text,
                                      std::string_view id_prefix);

// Reads a raw-text file, or every regular file of a directory in
// lexicographic order, using the file stem as id prefix.
std::vector<CrashReport> LoadRawReports(const std::filesystem::path& path);

}  // namespace tracedup

#endif  // TRACEDUP_REPORT_H_
