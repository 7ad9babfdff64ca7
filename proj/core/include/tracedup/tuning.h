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

#ifndef TRACEDUP_TUNING_H_
#define TRACEDUP_TUNING_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tracedup/evaluation.h"
#include "tracedup/scoring.h"

namespace tracedup {

enum class Scale { kLinear, kLog };

struct ParamRange {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  Scale scale = Scale::kLinear;
};

// An ordered list of independent parameter ranges. A range with
// min == max pins the parameter to that value.
struct SearchSpace {
  std::vector<ParamRange> params;

  // Throws Error(kInvalidSpace) for an empty space, duplicate names,
  // non-finite bounds, min > max, or a log range with min <= 0.
  void Validate() const;

  // Replaces (or appends) the range with the same name.
  void Override(const ParamRange& range);
};

// "name=min:max" or "name=min:max:log" / "name=min:max:linear".
ParamRange ParseParamRange(std::string_view text);

using ParamPoint = std::map<std::string, double>;

enum class Strategy { kRandom, kTpe };

std::string_view StrategyName(Strategy strategy);
std::optional<Strategy> ParseStrategy(std::string_view name);

struct Trial {
  ParamPoint params;
  double auc = 0.0;
};

struct TuneResult {
  ParamPoint best_params;
  double best_auc = 0.0;
  std::vector<Trial> trials;
  uint64_t seed = 0;
  Strategy strategy = Strategy::kRandom;

  // Stable key order, floats rounded to 6 significant digits.
  std::string ToJson() const;
};

using Objective = std::function<double(const ParamPoint&)>;

// Evaluates exactly `budget` points and returns the best (earliest on ties).
// kRandom draws every point up front from `seed`, so a larger budget extends
// the schedule of a smaller one. kTpe starts with the same random points and
// then proposes each next point from Parzen estimators over the good (top
// quarter by AUC) and bad trials. Throws Error(kInvalidSpace) for an invalid
// space and Error(kInvalidArgument) when budget < 1.
TuneResult Tune(const Objective& objective, const SearchSpace& space,
                int budget, uint64_t seed, Strategy strategy);

// TraceSim: alpha in [0, 3] linear, beta in [0.1, 10] log, gamma in
// [0, max IDF] linear. ReBucket: c, o in [0, 2]. Moroo: c, o and weight in
// [0, 1]. Throws Error(kInvalidSpace) for methods without parameters.
SearchSpace DefaultSearchSpace(Method method, const CorpusIndex& index);

// Writes the named parameters ("alpha", "beta", "gamma", "c", "o",
// "weight") into a copy of `base`. Throws Error(kInvalidSpace) for other
// names.
MethodConfig ApplyParams(MethodConfig base, const ParamPoint& point);

// Reads a params file: a flat object such as {"alpha": 1, "beta": 2,
// "gamma": 0.5, "c": 0.2} or a TuneResult document, whose "best_params"
// are used. Non-numeric members are ignored.
ParamPoint ParamPointFromJson(std::string_view json);
ParamPoint LoadParamPoint(const std::filesystem::path& path);

// Maximizes ROC AUC of `base` over `space` on `train_pairs`.
TuneResult TuneMethod(const PreparedCorpus& corpus,
                      std::span<const LabeledPair> train_pairs,
                      const MethodConfig& base, const SearchSpace& space,
                      int budget, uint64_t seed, Strategy strategy,
                      int threads = 1);

}  // namespace tracedup

#endif  // TRACEDUP_TUNING_H_
