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

#include "tracedup/error.h"

#include <string>
#include <string_view>

namespace tracedup {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kMalformedReport:
      return "MalformedReport";
    case ErrorCode::kUnknownReport:
      return "UnknownReport";
    case ErrorCode::kEmptyCorpus:
      return "EmptyCorpus";
    case ErrorCode::kIoFailure:
      return "IoFailure";
    case ErrorCode::kCorruptIndex:
      return "CorruptIndex";
    case ErrorCode::kInvalidRank:
      return "InvalidRank";
    case ErrorCode::kDegenerateLabels:
      return "DegenerateLabels";
    case ErrorCode::kInsufficientPairs:
      return "InsufficientPairs";
    case ErrorCode::kDivisionByZero:
      return "DivisionByZero";
    case ErrorCode::kDegenerateSizes:
      return "DegenerateSizes";
    case ErrorCode::kInvalidSpace:
      return "InvalidSpace";
    case ErrorCode::kInvalidConfig:
      return "InvalidConfig";
    case ErrorCode::kInsufficientData:
      return "InsufficientData";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string_view detail)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " +
                         std::string(detail)),
      code_(code),
      detail_(detail) {}

}  // namespace tracedup
