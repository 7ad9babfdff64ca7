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

#include "tracedup/report.h"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "tracedup/error.h"

namespace tracedup {
namespace {

constexpr std::string_view kWhitespace = " \t\r\n\f\v";

std::string_view TrimLeft(std::string_view s) {
  const size_t pos = s.find_first_not_of(kWhitespace);
  return pos == std::string_view::npos ? std::string_view() : s.substr(pos);
}

std::string_view TrimRight(std::string_view s) {
  const size_t pos = s.find_last_not_of(kWhitespace);
  return pos == std::string_view::npos ? std::string_view()
                                       : s.substr(0, pos + 1);
}

std::string_view Trim(std::string_view s) { return TrimRight(TrimLeft(s)); }

bool IsBlank(std::string_view s) { return TrimLeft(s).empty(); }

bool HasWhitespace(std::string_view s) {
  return s.find_first_of(kWhitespace) != std::string_view::npos;
}

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

std::optional<int64_t> ParseNonNegative(std::string_view digits) {
  if (digits.empty()) return std::nullopt;
  int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || value < 0) {
    return std::nullopt;
  }
  return value;
}

bool IsUnknownLocation(std::string_view location) {
  return location.empty() || location == "Unknown Source" ||
         location == "Native Method" || location == "Unknown";
}

// "\tat com.example.Foo.bar(Foo.java:42)" and variants.
std::optional<Frame> ParseFrameLine(std::string_view raw) {
  std::string_view line = Trim(raw);
  if (line.size() < 4 || line.substr(0, 2) != "at" ||
      (line[2] != ' ' && line[2] != '\t')) {
    return std::nullopt;
  }
  line = TrimLeft(line.substr(2));
  const size_t open = line.find('(');
  if (open == std::string_view::npos || open == 0 || line.back() != ')') {
    return std::nullopt;
  }
  std::string_view qualifier = line.substr(0, open);
  if (HasWhitespace(qualifier)) return std::nullopt;
  // Java 9+ prefixes such as "java.base@17/" or "app//".
  if (const size_t slash = qualifier.rfind('/');
      slash != std::string_view::npos) {
    qualifier = qualifier.substr(slash + 1);
  }
  if (qualifier.empty()) return std::nullopt;

  Frame frame;
  frame.qualifier = std::string(qualifier);
  std::string_view location =
      Trim(line.substr(open + 1, line.size() - open - 2));
  if (const size_t colon = location.rfind(':');
      colon != std::string_view::npos) {
    if (auto number = ParseNonNegative(location.substr(colon + 1))) {
      frame.line = number;
      location = location.substr(0, colon);
    }
  }
  if (!IsUnknownLocation(location)) frame.file = std::string(location);
  return frame;
}

bool IsChainBoundary(std::string_view line) {
  line = TrimLeft(line);
  return line.starts_with("Caused by:") || line.starts_with("Suppressed:");
}

void ParseHeader(std::string_view line, StackTrace& trace) {
  line = Trim(line);
  constexpr std::string_view kThreadPrefix = "Exception in thread \"";
  if (line.starts_with(kThreadPrefix)) {
    const size_t close = line.find('"', kThreadPrefix.size());
    if (close != std::string_view::npos) {
      line = TrimLeft(line.substr(close + 1));
    }
  }
  const size_t colon = line.find(':');
  if (colon == std::string_view::npos) {
    trace.exception_type = std::string(line);
    return;
  }
  trace.exception_type = std::string(TrimRight(line.substr(0, colon)));
  std::string_view message = line.substr(colon + 1);
  if (!message.empty() && message.front() == ' ') message.remove_prefix(1);
  trace.message = std::string(message);
}

}  // namespace

std::vector<std::string> FrameTokens(const StackTrace& trace) {
  std::vector<std::string> tokens;
  tokens.reserve(trace.frames.size());
  for (const Frame& frame : trace.frames) tokens.push_back(FrameToken(frame));
  return tokens;
}

void ValidateFrame(const Frame& frame) {
  if (frame.qualifier.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "frame qualifier is empty");
  }
  if (HasWhitespace(frame.qualifier)) {
    throw Error(ErrorCode::kInvalidArgument,
                "frame qualifier contains whitespace: '" + frame.qualifier +
                    "'");
  }
  if (frame.line && *frame.line < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative frame line number");
  }
}

CrashReport ParseReport(std::string_view text, std::string_view default_id,
                        int first_line_number) {
  const std::vector<std::string_view> lines = SplitLines(text);

  size_t first_frame = lines.size();
  for (size_t i = 0; i < lines.size(); ++i) {
    if (ParseFrameLine(lines[i])) {
      first_frame = i;
      break;
    }
  }
  if (first_frame == lines.size()) {
    int offending = first_line_number;
    for (size_t i = 0; i < lines.size(); ++i) {
      if (!IsBlank(lines[i])) {
        offending = first_line_number + static_cast<int>(i);
        break;
      }
    }
    throw Error(ErrorCode::kMalformedReport,
                "line " + std::to_string(offending) +
                    ": no stack frame line ('at <qualifier>(<location>)') "
                    "found");
  }

  CrashReport report;
  report.id = std::string(default_id);

  size_t header = first_frame;
  for (size_t i = first_frame; i-- > 0;) {
    if (!IsBlank(lines[i])) {
      header = i;
      break;
    }
  }
  if (header != first_frame) ParseHeader(lines[header], report.trace);

  const size_t metadata_end = header == first_frame ? first_frame : header;
  for (size_t i = 0; i < metadata_end; ++i) {
    const std::string_view line = Trim(lines[i]);
    const size_t colon = line.find(':');
    if (colon == std::string_view::npos || colon == 0) continue;
    std::string key(TrimRight(line.substr(0, colon)));
    std::string value(TrimLeft(line.substr(colon + 1)));
    if (key == "id") {
      report.id = std::move(value);
    } else {
      report.metadata[std::move(key)] = std::move(value);
    }
  }

  for (size_t i = first_frame; i < lines.size(); ++i) {
    if (IsChainBoundary(lines[i])) break;
    if (auto frame = ParseFrameLine(lines[i])) {
      report.trace.frames.push_back(std::move(*frame));
    }
  }
  return report;
}

std::string FormatReport(const CrashReport& report) {
  std::ostringstream out;
  if (!report.id.empty()) out << "id: " << report.id << '\n';
  for (const auto& [key, value] : report.metadata) {
    out << key << ": " << value << '\n';
  }
  out << report.trace.exception_type;
  if (report.trace.message) out << ": " << *report.trace.message;
  out << '\n';
  for (const Frame& frame : report.trace.frames) {
    out << "\tat " << frame.qualifier << '(';
    if (frame.file) {
      out << *frame.file;
    } else {
      out << "Unknown Source";
    }
    if (frame.line) out << ':' << *frame.line;
    out << ")\n";
  }
  return out.str();
}

std::vector<CrashReport> ParseReports(std::string_view text,
                                      std::string_view id_prefix) {
  struct Block {
    std::string_view text;
    int first_line;
  };
  std::vector<Block> blocks;
  const std::vector<std::string_view> lines = SplitLines(text);
  size_t i = 0;
  while (i < lines.size()) {
    while (i < lines.size() && IsBlank(lines[i])) ++i;
    if (i == lines.size()) break;
    const size_t start = i;
    while (i < lines.size() && !IsBlank(lines[i])) ++i;
    const char* begin = lines[start].data();
    const char* end = lines[i - 1].data() + lines[i - 1].size();
    blocks.push_back({std::string_view(begin, end - begin),
                      static_cast<int>(start) + 1});
  }

  std::vector<CrashReport> reports;
  reports.reserve(blocks.size());
  std::set<std::string> seen;
  for (size_t k = 0; k < blocks.size(); ++k) {
    std::string default_id(id_prefix);
    if (blocks.size() > 1) default_id += "#" + std::to_string(k);
    CrashReport report =
        ParseReport(blocks[k].text, default_id, blocks[k].first_line);
    if (!seen.insert(report.id).second) {
      throw Error(ErrorCode::kMalformedReport,
                  "line " + std::to_string(blocks[k].first_line) +
                      ": duplicate report id '" + report.id + "'");
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

std::vector<CrashReport> LoadRawReports(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  std::error_code ec;
  std::vector<fs::path> files;
  if (fs::is_directory(path, ec)) {
    for (const auto& entry : fs::directory_iterator(path, ec)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else if (fs::is_regular_file(path, ec)) {
    files.push_back(path);
  } else {
    throw Error(ErrorCode::kIoFailure,
                "cannot read '" + path.string() + "'");
  }

  std::vector<CrashReport> all;
  std::set<std::string> seen;
  for (const fs::path& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      throw Error(ErrorCode::kIoFailure,
                  "cannot open '" + file.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::vector<CrashReport> reports;
    try {
      reports = ParseReports(buffer.str(), file.stem().string());
    } catch (const Error& e) {
      throw Error(e.code(), file.string() + ": " + e.detail());
    }
    for (CrashReport& report : reports) {
      if (!seen.insert(report.id).second) {
        throw Error(ErrorCode::kMalformedReport,
                    file.string() + ": duplicate report id '" + report.id +
                        "'");
      }
      all.push_back(std::move(report));
    }
  }
  return all;
}

}  // namespace tracedup
