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

#include "tracedup/corpus_io.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "json_util.h"
#include "tracedup/error.h"

namespace tracedup {
namespace {

using ordered_json = nlohmann::ordered_json;

const nlohmann::json& Member(const nlohmann::json& object, const char* key) {
  const auto it = object.find(key);
  if (it == object.end()) {
    throw Error(ErrorCode::kMalformedReport,
                std::string("missing field '") + key + "'");
  }
  return *it;
}

std::string StringMember(const nlohmann::json& object, const char* key) {
  const nlohmann::json& value = Member(object, key);
  if (!value.is_string()) {
    throw Error(ErrorCode::kMalformedReport,
                std::string("field '") + key + "' is not a string");
  }
  return value.get<std::string>();
}

Frame FrameFromJson(const nlohmann::json& json) {
  if (!json.is_object()) {
    throw Error(ErrorCode::kMalformedReport, "frame is not an object");
  }
  Frame frame;
  frame.qualifier = StringMember(json, "qualifier");
  if (json.contains("file")) frame.file = StringMember(json, "file");
  if (json.contains("line")) {
    const nlohmann::json& line = json["line"];
    if (!line.is_number_integer()) {
      throw Error(ErrorCode::kMalformedReport, "field 'line' is not an integer");
    }
    frame.line = line.get<int64_t>();
  }
  try {
    ValidateFrame(frame);
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedReport, e.detail());
  }
  return frame;
}

}  // namespace

std::string ReportToJsonLine(const CrashReport& report) {
  ordered_json json;
  json["id"] = report.id;
  json["exception_type"] = report.trace.exception_type;
  if (report.trace.message) json["message"] = *report.trace.message;
  ordered_json frames = ordered_json::array();
  for (const Frame& frame : report.trace.frames) {
    ordered_json f;
    f["qualifier"] = frame.qualifier;
    if (frame.file) f["file"] = *frame.file;
    if (frame.line) f["line"] = *frame.line;
    frames.push_back(std::move(f));
  }
  json["frames"] = std::move(frames);
  ordered_json metadata = ordered_json::object();
  for (const auto& [key, value] : report.metadata) metadata[key] = value;
  json["metadata"] = std::move(metadata);
  return json.dump();
}

CrashReport ReportFromJsonLine(std::string_view line) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kMalformedReport, e.what());
  }
  if (!json.is_object()) {
    throw Error(ErrorCode::kMalformedReport, "report is not a JSON object");
  }
  CrashReport report;
  report.id = StringMember(json, "id");
  report.trace.exception_type = StringMember(json, "exception_type");
  if (json.contains("message")) {
    report.trace.message = StringMember(json, "message");
  }
  const nlohmann::json& frames = Member(json, "frames");
  if (!frames.is_array() || frames.empty()) {
    throw Error(ErrorCode::kMalformedReport,
                "field 'frames' is not a non-empty array");
  }
  for (const nlohmann::json& frame : frames) {
    report.trace.frames.push_back(FrameFromJson(frame));
  }
  if (json.contains("metadata")) {
    const nlohmann::json& metadata = json["metadata"];
    if (!metadata.is_object()) {
      throw Error(ErrorCode::kMalformedReport,
                  "field 'metadata' is not an object");
    }
    for (const auto& [key, value] : metadata.items()) {
      if (!value.is_string()) {
        throw Error(ErrorCode::kMalformedReport,
                    "metadata value for '" + key + "' is not a string");
      }
      report.metadata[key] = value.get<std::string>();
    }
  }
  return report;
}

std::vector<CrashReport> ReadCorpus(std::istream& in) {
  std::vector<CrashReport> reports;
  std::set<std::string> seen;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    CrashReport report;
    try {
      report = ReportFromJsonLine(line);
    } catch (const Error& e) {
      throw Error(e.code(),
                  "line " + std::to_string(line_number) + ": " + e.detail());
    }
    if (!seen.insert(report.id).second) {
      throw Error(ErrorCode::kMalformedReport,
                  "line " + std::to_string(line_number) +
                      ": duplicate report id '" + report.id + "'");
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

std::vector<CrashReport> ReadCorpus(const std::filesystem::path& path) {
  if (path.empty()) throw Error(ErrorCode::kIoFailure, "empty corpus path");
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot open '" + path.string() + "'");
  }
  try {
    return ReadCorpus(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

void WriteCorpus(std::ostream& out, std::span<const CrashReport> reports) {
  for (const CrashReport& report : reports) {
    out << ReportToJsonLine(report) << '\n';
  }
}

void WriteCorpus(const std::filesystem::path& path,
                 std::span<const CrashReport> reports) {
  std::ostringstream out;
  WriteCorpus(out, reports);
  internal::WriteFile(path, out.str());
}

std::vector<StackTrace> TracesOf(std::span<const CrashReport> reports) {
  std::vector<StackTrace> traces;
  traces.reserve(reports.size());
  for (const CrashReport& report : reports) traces.push_back(report.trace);
  return traces;
}

}  // namespace tracedup
