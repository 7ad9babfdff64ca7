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

#ifndef TRACEDUP_ERROR_H_
#define TRACEDUP_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace tracedup {

enum class ErrorCode {
  kInvalidArgument,
  kMalformedReport,
  kUnknownReport,
  kEmptyCorpus,
  kIoFailure,
  kCorruptIndex,
  kInvalidRank,
  kDegenerateLabels,
  kInsufficientPairs,
  kDivisionByZero,
  kDegenerateSizes,
  kInvalidSpace,
  kInvalidConfig,
  kInsufficientData,
};

std::string_view ErrorCodeName(ErrorCode code);

// All data errors raised by the library. The message is prefixed with the
// error code name, e.g. "MalformedReport: line 3: ...".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string_view detail);

  ErrorCode code() const noexcept { return code_; }
  // The message without the code-name prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace tracedup

#endif  // TRACEDUP_ERROR_H_
