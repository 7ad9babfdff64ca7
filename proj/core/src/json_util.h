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

#ifndef TRACEDUP_SRC_JSON_UTIL_H_
#define TRACEDUP_SRC_JSON_UTIL_H_

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "tracedup/error.h"

namespace tracedup::internal {

// Rounds to 6 significant digits so that emitted JSON is byte-stable.
inline double Round6(double value) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return std::strtod(buffer, nullptr);
}

inline std::string ReadFile(const std::filesystem::path& path) {
  if (path.empty()) throw Error(ErrorCode::kIoFailure, "empty path");
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void WriteFile(const std::filesystem::path& path,
                      const std::string& contents) {
  if (path.empty()) throw Error(ErrorCode::kIoFailure, "empty path");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoFailure,
                "cannot open '" + path.string() + "' for writing");
  }
  out << contents;
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "write to '" + path.string() + "' failed");
  }
}

}  // namespace tracedup::internal

#endif  // TRACEDUP_SRC_JSON_UTIL_H_
