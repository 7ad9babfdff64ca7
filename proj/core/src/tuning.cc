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

#include "tracedup/tuning.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "json_util.h"
#include "random.h"
#include "tracedup/error.h"

namespace tracedup {
namespace {

constexpr int kStartupTrials = 10;
constexpr int kTpeCandidates = 24;
constexpr double kGoodQuantile = 0.25;
constexpr double kMinBandwidth = 0.01;

using UnitPoint = std::vector<double>;

double FromUnit(const ParamRange& range, double u) {
  u = std::clamp(u, 0.0, 1.0);
  if (range.min == range.max) return range.min;
  double value;
  if (range.scale == Scale::kLog) {
    const double lo = std::log(range.min);
    const double hi = std::log(range.max);
    value = std::exp(lo + u * (hi - lo));
  } else {
    value = range.min + u * (range.max - range.min);
  }
  return std::clamp(value, range.min, range.max);
}

ParamPoint ToPoint(const SearchSpace& space, const UnitPoint& unit) {
  ParamPoint point;
  for (size_t d = 0; d < space.params.size(); ++d) {
    point[space.params[d].name] = FromUnit(space.params[d], unit[d]);
  }
  return point;
}

UnitPoint RandomUnitPoint(size_t dims, internal::Rng& rng) {
  UnitPoint unit(dims);
  for (double& u : unit) u = rng.Uniform();
  return unit;
}

// Per-dimension Parzen estimator: an equal-weight mixture of a uniform
// prior on [0, 1] and one Gaussian per observation, each with bandwidth
// equal to the distance to its nearest neighbor.
class Parzen {
 public:
  Parzen(const std::vector<UnitPoint>& points, size_t dims)
      : points_(points), bandwidths_(points.size(), UnitPoint(dims)) {
    for (size_t d = 0; d < dims; ++d) {
      for (size_t k = 0; k < points.size(); ++k) {
        double nearest = 1.0;
        for (size_t m = 0; m < points.size(); ++m) {
          if (m == k) continue;
          nearest = std::min(nearest, std::abs(points[m][d] - points[k][d]));
        }
        bandwidths_[k][d] = std::clamp(nearest, kMinBandwidth, 1.0);
      }
    }
  }

  double LogDensity(const UnitPoint& u) const {
    const double components = static_cast<double>(points_.size() + 1);
    double log_density = 0.0;
    for (size_t d = 0; d < u.size(); ++d) {
      double density = 1.0;  // uniform prior
      for (size_t k = 0; k < points_.size(); ++k) {
        const double h = bandwidths_[k][d];
        const double z = (u[d] - points_[k][d]) / h;
        density += std::exp(-0.5 * z * z) / (h * std::sqrt(2.0 * std::numbers::pi));
      }
      log_density += std::log(density / components);
    }
    return log_density;
  }

  UnitPoint Sample(internal::Rng& rng) const {
    const size_t dims = bandwidths_.front().size();
    const size_t k = rng.Below(points_.size());
    UnitPoint u(dims);
    for (size_t d = 0; d < dims; ++d) {
      u[d] = std::clamp(points_[k][d] + bandwidths_[k][d] * rng.Normal(), 0.0,
                        1.0);
    }
    return u;
  }

 private:
  const std::vector<UnitPoint>& points_;
  std::vector<UnitPoint> bandwidths_;
};

UnitPoint ProposeTpe(const std::vector<UnitPoint>& history,
                     const std::vector<double>& aucs, size_t dims,
                     internal::Rng& rng) {
  std::vector<size_t> order(history.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t x, size_t y) { return aucs[x] > aucs[y]; });
  const size_t good_count = std::max<size_t>(
      1, static_cast<size_t>(std::ceil(kGoodQuantile * history.size())));
  std::vector<UnitPoint> good;
  std::vector<UnitPoint> bad;
  for (size_t r = 0; r < order.size(); ++r) {
    (r < good_count ? good : bad).push_back(history[order[r]]);
  }
  if (bad.empty()) bad = good;

  const Parzen good_density(good, dims);
  const Parzen bad_density(bad, dims);
  UnitPoint best;
  double best_ratio = -std::numeric_limits<double>::infinity();
  for (int c = 0; c < kTpeCandidates; ++c) {
    UnitPoint candidate = good_density.Sample(rng);
    const double ratio =
        good_density.LogDensity(candidate) - bad_density.LogDensity(candidate);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = std::move(candidate);
    }
  }
  return best;
}

double ParseDouble(std::string_view text, std::string_view context) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kInvalidSpace,
                "cannot parse '" + std::string(text) + "' in '" +
                    std::string(context) + "'");
  }
  return value;
}

nlohmann::ordered_json PointToJson(const ParamPoint& point) {
  nlohmann::ordered_json json = nlohmann::ordered_json::object();
  for (const auto& [name, value] : point) json[name] = internal::Round6(value);
  return json;
}

}  // namespace

void SearchSpace::Validate() const {
  if (params.empty()) {
    throw Error(ErrorCode::kInvalidSpace, "search space has no parameters");
  }
  std::set<std::string> names;
  for (const ParamRange& range : params) {
    if (!names.insert(range.name).second) {
      throw Error(ErrorCode::kInvalidSpace,
                  "duplicate parameter '" + range.name + "'");
    }
    if (!std::isfinite(range.min) || !std::isfinite(range.max) ||
        range.min > range.max) {
      throw Error(ErrorCode::kInvalidSpace,
                  "parameter '" + range.name + "' needs finite min <= max");
    }
    if (range.scale == Scale::kLog && range.min <= 0.0) {
      throw Error(ErrorCode::kInvalidSpace,
                  "log-scale parameter '" + range.name + "' needs min > 0");
    }
  }
}

void SearchSpace::Override(const ParamRange& range) {
  for (ParamRange& existing : params) {
    if (existing.name == range.name) {
      existing = range;
      return;
    }
  }
  params.push_back(range);
}

ParamRange ParseParamRange(std::string_view text) {
  const size_t eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw Error(ErrorCode::kInvalidSpace,
                "expected name=min:max[:log|linear], got '" +
                    std::string(text) + "'");
  }
  ParamRange range;
  range.name = std::string(text.substr(0, eq));
  std::vector<std::string_view> parts;
  std::string_view rest = text.substr(eq + 1);
  while (true) {
    const size_t colon = rest.find(':');
    parts.push_back(rest.substr(0, colon));
    if (colon == std::string_view::npos) break;
    rest = rest.substr(colon + 1);
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw Error(ErrorCode::kInvalidSpace,
                "expected name=min:max[:log|linear], got '" +
                    std::string(text) + "'");
  }
  range.min = ParseDouble(parts[0], text);
  range.max = ParseDouble(parts[1], text);
  if (parts.size() == 3) {
    if (parts[2] == "log") {
      range.scale = Scale::kLog;
    } else if (parts[2] != "linear") {
      throw Error(ErrorCode::kInvalidSpace,
                  "unknown scale '" + std::string(parts[2]) + "'");
    }
  }
  return range;
}

std::string_view StrategyName(Strategy strategy) {
  return strategy == Strategy::kTpe ? "tpe" : "random";
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  if (name == "random") return Strategy::kRandom;
  if (name == "tpe") return Strategy::kTpe;
  return std::nullopt;
}

std::string TuneResult::ToJson() const {
  nlohmann::ordered_json json;
  json["strategy"] = StrategyName(strategy);
  json["seed"] = seed;
  json["budget"] = trials.size();
  json["best_params"] = PointToJson(best_params);
  json["best_auc"] = internal::Round6(best_auc);
  nlohmann::ordered_json trial_rows = nlohmann::ordered_json::array();
  for (const Trial& trial : trials) {
    nlohmann::ordered_json row;
    row["params"] = PointToJson(trial.params);
    row["auc"] = internal::Round6(trial.auc);
    trial_rows.push_back(std::move(row));
  }
  json["trials"] = std::move(trial_rows);
  return json.dump(2);
}

TuneResult Tune(const Objective& objective, const SearchSpace& space,
                int budget, uint64_t seed, Strategy strategy) {
  space.Validate();
  if (budget < 1) {
    throw Error(ErrorCode::kInvalidArgument, "budget must be >= 1");
  }
  const size_t dims = space.params.size();
  internal::Rng rng(seed);

  TuneResult result;
  result.seed = seed;
  result.strategy = strategy;
  result.trials.reserve(budget);

  std::vector<UnitPoint> history;
  std::vector<double> aucs;
  const int startup =
      strategy == Strategy::kRandom ? budget : std::min(budget, kStartupTrials);
  std::vector<UnitPoint> schedule;
  for (int t = 0; t < startup; ++t) schedule.push_back(RandomUnitPoint(dims, rng));

  for (int t = 0; t < budget; ++t) {
    UnitPoint unit = t < startup ? schedule[t]
                                 : ProposeTpe(history, aucs, dims, rng);
    ParamPoint point = ToPoint(space, unit);
    const double auc = objective(point);
    history.push_back(std::move(unit));
    aucs.push_back(auc);
    if (t == 0 || auc > result.best_auc) {
      result.best_auc = auc;
      result.best_params = point;
    }
    result.trials.push_back(Trial{std::move(point), auc});
  }
  return result;
}

SearchSpace DefaultSearchSpace(Method method, const CorpusIndex& index) {
  SearchSpace space;
  switch (method) {
    case Method::kTraceSim:
      space.params = {{"alpha", 0.0, 3.0, Scale::kLinear},
                      {"beta", 0.1, 10.0, Scale::kLog},
                      {"gamma", 0.0, index.MaxIdf(), Scale::kLinear}};
      return space;
    case Method::kRebucket:
      space.params = {{"c", 0.0, 2.0, Scale::kLinear},
                      {"o", 0.0, 2.0, Scale::kLinear}};
      return space;
    case Method::kMoroo:
      space.params = {{"c", 0.0, 2.0, Scale::kLinear},
                      {"o", 0.0, 2.0, Scale::kLinear},
                      {"weight", 0.0, 1.0, Scale::kLinear}};
      return space;
    default:
      throw Error(ErrorCode::kInvalidSpace,
                  "method '" + std::string(MethodName(method)) +
                      "' has no tunable parameters");
  }
}

MethodConfig ApplyParams(MethodConfig base, const ParamPoint& point) {
  for (const auto& [name, value] : point) {
    if (name == "alpha") {
      base.hyperparams.alpha = value;
    } else if (name == "beta") {
      base.hyperparams.beta = value;
    } else if (name == "gamma") {
      base.hyperparams.gamma = value;
    } else if (name == "c") {
      base.rebucket.c = value;
    } else if (name == "o") {
      base.rebucket.o = value;
    } else if (name == "weight") {
      base.moroo_weight = value;
    } else {
      throw Error(ErrorCode::kInvalidSpace, "unknown parameter '" + name + "'");
    }
  }
  return base;
}

ParamPoint ParamPointFromJson(std::string_view text) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kInvalidArgument, e.what());
  }
  if (json.is_object() && json.contains("best_params")) {
    json = json["best_params"];
  }
  if (!json.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "params must be a JSON object");
  }
  ParamPoint point;
  for (const auto& [name, value] : json.items()) {
    if (value.is_number()) point[name] = value.get<double>();
  }
  return point;
}

ParamPoint LoadParamPoint(const std::filesystem::path& path) {
  const std::string text = internal::ReadFile(path);
  try {
    return ParamPointFromJson(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

TuneResult TuneMethod(const PreparedCorpus& corpus,
                      std::span<const LabeledPair> train_pairs,
                      const MethodConfig& base, const SearchSpace& space,
                      int budget, uint64_t seed, Strategy strategy,
                      int threads) {
  space.Validate();
  for (const ParamRange& range : space.params) {
    ApplyParams(base, ParamPoint{{range.name, range.min}});
  }
  const std::vector<ResolvedPair> resolved = ResolvePairs(corpus, train_pairs);
  RequireBothLabels(resolved);
  const Objective objective = [&](const ParamPoint& point) {
    const PairScorer scorer(corpus, ApplyParams(base, point));
    return EvaluateMethod(scorer, resolved, threads).roc_auc;
  };
  return Tune(objective, space, budget, seed, strategy);
}

}  // namespace tracedup
