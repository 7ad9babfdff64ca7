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

#include "cli.h"

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tracedup/baselines.h"
#include "tracedup/corpus_index.h"
#include "tracedup/corpus_io.h"
#include "tracedup/error.h"
#include "tracedup/evaluation.h"
#include "tracedup/report.h"
#include "tracedup/scoring.h"
#include "tracedup/synth.h"
#include "tracedup/tracesim.h"
#include "tracedup/tuning.h"

namespace tracedup::cli {
namespace {

namespace fs = std::filesystem;

// Usage problems detected after CLI11 has accepted the flags.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CorpusArgs {
  std::string corpus;
  std::string index;
};

struct SplitArgs {
  std::string pairs;
  double train_fraction = 0.8;
  uint64_t seed = 0;
  int threads = 1;
};

void AddCorpusFlags(CLI::App* cmd, CorpusArgs& args, bool corpus_required) {
  auto* corpus = cmd->add_option("--corpus", args.corpus,
                                 "Corpus file (JSON Lines)");
  if (corpus_required) corpus->required();
  cmd->add_option("--index", args.index,
                  "Index file; built from the corpus when omitted");
}

void AddSplitFlags(CLI::App* cmd, SplitArgs& args) {
  cmd->add_option("--pairs", args.pairs, "Labeled pairs (JSON Lines)")
      ->required();
  cmd->add_option("--train-fraction", args.train_fraction,
                  "Share of pairs used for training")
      ->capture_default_str();
  cmd->add_option("--seed", args.seed, "Seed for the train/test split")
      ->capture_default_str();
  cmd->add_option("--threads", args.threads, "Threads for pair scoring")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

std::string Fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  return buffer;
}

void Emit(const std::string& path, const std::string& contents,
          std::ostream& out) {
  if (path.empty() || path == "-") {
    out << contents;
    if (!contents.empty() && contents.back() != '\n') out << '\n';
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kIoFailure, "cannot write '" + path + "'");
  file << contents;
  if (!contents.empty() && contents.back() != '\n') file << '\n';
}

CorpusIndex IndexFor(const CorpusArgs& args,
                     const std::vector<CrashReport>& reports) {
  if (!args.index.empty()) return CorpusIndex::Load(args.index);
  return CorpusIndex::Build(reports);
}

std::vector<Method> ParseMethods(const std::vector<std::string>& names,
                                 std::vector<Method> fallback) {
  if (names.empty()) return fallback;
  std::vector<Method> methods;
  for (const std::string& name : names) {
    const auto method = ParseMethod(name);
    if (!method) throw UsageError("unknown method '" + name + "'");
    methods.push_back(*method);
  }
  return methods;
}

MethodConfig BaseConfig(Method method, const CorpusIndex& index,
                        const ParamPoint& params, bool remove_recursion) {
  MethodConfig config;
  config.method = method;
  config.hyperparams = DefaultHyperparams(index);
  config.tracesim.remove_recursion = remove_recursion;
  config = ApplyParams(config, params);
  ValidateMethodConfig(config);
  return config;
}

bool IsTunable(Method method) {
  return method == Method::kTraceSim || method == Method::kRebucket ||
         method == Method::kMoroo;
}

// --- parse -----------------------------------------------------------------

struct ParseArgs {
  std::string input;
  std::string out;
};

int RunParse(const ParseArgs& args, std::ostream& out) {
  const std::vector<CrashReport> reports = LoadRawReports(args.input);
  std::ostringstream jsonl;
  WriteCorpus(jsonl, reports);
  Emit(args.out, jsonl.str(), out);
  return kExitOk;
}

// --- index -----------------------------------------------------------------

struct IndexArgs {
  std::string corpus;
  std::string out;
};

int RunIndex(const IndexArgs& args, std::ostream& out) {
  const CorpusIndex index = CorpusIndex::Build(ReadCorpus(args.corpus));
  if (args.out.empty()) {
    out << index.ToJson() << '\n';
  } else {
    index.Save(args.out);
  }
  return kExitOk;
}

// --- sim -------------------------------------------------------------------

struct SimArgs {
  CorpusArgs corpus;
  std::string id_a;
  std::string id_b;
  std::string file_a;
  std::string file_b;
  std::string params;
  std::string method = "tracesim";
  bool remove_recursion = false;
};

CrashReport FirstReport(const std::string& path) {
  std::vector<CrashReport> reports = LoadRawReports(path);
  if (reports.empty()) {
    throw Error(ErrorCode::kMalformedReport, path + ": no report found");
  }
  return std::move(reports.front());
}

int RunSim(const SimArgs& args, std::ostream& out) {
  const bool by_id = !args.id_a.empty() || !args.id_b.empty();
  const bool by_file = !args.file_a.empty() || !args.file_b.empty();
  if (by_id == by_file) {
    throw UsageError("give either --a/--b report ids or --file-a/--file-b");
  }
  if (by_id && (args.id_a.empty() || args.id_b.empty() ||
                args.corpus.corpus.empty())) {
    throw UsageError("--a and --b need both ids and --corpus");
  }
  if (by_file && (args.file_a.empty() || args.file_b.empty())) {
    throw UsageError("--file-a and --file-b must be given together");
  }
  const auto method = ParseMethod(args.method);
  if (!method) throw UsageError("unknown method '" + args.method + "'");

  std::vector<CrashReport> corpus;
  if (!args.corpus.corpus.empty()) corpus = ReadCorpus(args.corpus.corpus);
  CrashReport a;
  CrashReport b;
  if (by_id) {
    const auto find = [&](const std::string& id) {
      for (const CrashReport& report : corpus) {
        if (report.id == id) return report;
      }
      throw Error(ErrorCode::kUnknownReport,
                  "report '" + id + "' is not in " + args.corpus.corpus);
    };
    a = find(args.id_a);
    b = find(args.id_b);
  } else {
    a = FirstReport(args.file_a);
    b = FirstReport(args.file_b);
  }

  CorpusIndex index;
  if (!args.corpus.index.empty()) {
    index = CorpusIndex::Load(args.corpus.index);
  } else if (!corpus.empty()) {
    index = CorpusIndex::Build(corpus);
  } else {
    const std::vector<StackTrace> both = {a.trace, b.trace};
    index = CorpusIndex::Build(both);
  }
  const ParamPoint params =
      args.params.empty() ? ParamPoint{} : LoadParamPoint(args.params);
  const MethodConfig config =
      BaseConfig(*method, index, params, args.remove_recursion);

  double score = 0.0;
  switch (config.method) {
    case Method::kTraceSim:
      score = TraceSim(a.trace, b.trace, index, config.hyperparams,
                       config.tracesim);
      break;
    case Method::kPrefix:
      score = PrefixMatch(a.trace, b.trace);
      break;
    case Method::kLevenshtein:
      score = PlainLevenshteinSim(a.trace, b.trace);
      break;
    case Method::kCosine:
      score = CosineSim(a.trace, b.trace, index, false);
      break;
    case Method::kCosineIdf:
      score = CosineSim(a.trace, b.trace, index, true);
      break;
    case Method::kLerch:
      score = LerchSim(a.trace, b.trace, index);
      break;
    case Method::kRebucket:
      score = RebucketSim(a.trace, b.trace, config.rebucket);
      break;
    case Method::kMoroo:
      score = MorooSim(a.trace, b.trace, index, config.rebucket,
                       config.moroo_weight);
      break;
  }
  out << Fixed(score, 6) << '\n';
  return kExitOk;
}

// --- eval / ablate / tune ----------------------------------------------------

struct EvalArgs {
  CorpusArgs corpus;
  SplitArgs split;
  std::vector<std::string> methods;
  std::string params;
  std::string out;
  int tune_budget = 0;
  std::string strategy = "random";
  bool remove_recursion = false;
};

struct Workspace {
  std::vector<CrashReport> reports;
  std::optional<PreparedCorpus> prepared;
  PairSplit split;
  ParamPoint params;
};

Workspace Load(const CorpusArgs& corpus, const SplitArgs& split,
               const std::string& params) {
  Workspace ws;
  ws.reports = ReadCorpus(corpus.corpus);
  const CorpusIndex index = IndexFor(corpus, ws.reports);
  ws.prepared.emplace(ws.reports, index);
  const std::vector<LabeledPair> pairs = ReadPairs(split.pairs);
  // Surface unknown ids and degenerate labels before splitting.
  RequireBothLabels(ResolvePairs(*ws.prepared, pairs));
  ws.split = SplitPairs(pairs, split.train_fraction, split.seed);
  if (!params.empty()) ws.params = LoadParamPoint(params);
  return ws;
}

Strategy StrategyFlag(const std::string& name) {
  const auto strategy = ParseStrategy(name);
  if (!strategy) throw UsageError("unknown strategy '" + name + "'");
  return *strategy;
}

MethodConfig MaybeTune(MethodConfig config, const Workspace& ws, int budget,
                       Strategy strategy, const SplitArgs& split,
                       std::ostream& log) {
  if (budget <= 0 || !IsTunable(config.method)) return config;
  const SearchSpace space =
      DefaultSearchSpace(config.method, ws.prepared->index());
  const TuneResult result =
      TuneMethod(*ws.prepared, ws.split.train, config, space, budget,
                 split.seed, strategy, split.threads);
  log << "tuned " << MethodName(config.method) << " on "
      << ws.split.train.size() << " train pairs: train AUC "
      << Fixed(result.best_auc, 4) << '\n';
  return ApplyParams(config, result.best_params);
}

int RunEval(const EvalArgs& args, std::ostream& out, std::ostream& err) {
  const std::vector<Method> methods =
      ParseMethods(args.methods, {AllMethods().begin(), AllMethods().end()});
  const Strategy strategy = StrategyFlag(args.strategy);
  const Workspace ws = Load(args.corpus, args.split, args.params);

  std::vector<MethodConfig> configs;
  for (Method method : methods) {
    MethodConfig config = BaseConfig(method, ws.prepared->index(), ws.params,
                                     args.remove_recursion);
    configs.push_back(MaybeTune(std::move(config), ws, args.tune_budget,
                                strategy, args.split, err));
  }
  const std::vector<EvalReport> reports =
      Evaluate(*ws.prepared, ws.split.test, configs, args.split.threads);
  out << FormatEvalTable(reports);
  if (!args.out.empty()) Emit(args.out, EvalReportsToJson(reports), out);
  return kExitOk;
}

int RunAblate(const EvalArgs& args, std::ostream& out, std::ostream& err) {
  const Strategy strategy = StrategyFlag(args.strategy);
  const Workspace ws = Load(args.corpus, args.split, args.params);
  MethodConfig config = BaseConfig(Method::kTraceSim, ws.prepared->index(),
                                   ws.params, false);
  config = MaybeTune(std::move(config), ws, args.tune_budget, strategy,
                     args.split, err);
  const std::vector<EvalReport> reports = RunAblation(
      *ws.prepared, ws.split.test, config.hyperparams, args.split.threads);
  out << FormatEvalTable(reports);
  if (!args.out.empty()) Emit(args.out, EvalReportsToJson(reports), out);
  return kExitOk;
}

struct TuneArgs {
  CorpusArgs corpus;
  SplitArgs split;
  std::string method = "tracesim";
  std::string params;
  std::string out;
  int budget = 50;
  uint64_t tune_seed = 0;
  std::string strategy = "random";
  std::vector<std::string> space;
  bool remove_recursion = false;
};

int RunTune(const TuneArgs& args, std::ostream& out) {
  const auto method = ParseMethod(args.method);
  if (!method) throw UsageError("unknown method '" + args.method + "'");
  if (!IsTunable(*method)) {
    throw UsageError("method '" + args.method + "' has no tunable parameters");
  }
  const Strategy strategy = StrategyFlag(args.strategy);
  const Workspace ws = Load(args.corpus, args.split, args.params);
  const MethodConfig base = BaseConfig(*method, ws.prepared->index(),
                                       ws.params, args.remove_recursion);
  SearchSpace space = DefaultSearchSpace(*method, ws.prepared->index());
  for (const std::string& text : args.space) {
    space.Override(ParseParamRange(text));
  }
  const TuneResult result =
      TuneMethod(*ws.prepared, ws.split.train, base, space, args.budget,
                 args.tune_seed, strategy, args.split.threads);
  Emit(args.out, result.ToJson(), out);
  return kExitOk;
}

// --- synth -----------------------------------------------------------------

struct SynthArgs {
  std::string out_dir;
  GeneratorConfig config;
  std::optional<double> mutation_rate;
  std::string pool = "vocabulary";
  std::string placement = "uniform";
  PairRequest pairs;
  bool raw = false;
};

int RunSynth(SynthArgs args, std::ostream& out) {
  GeneratorConfig config = args.config;
  if (args.mutation_rate) {
    config.substitution_rate = *args.mutation_rate;
    config.insertion_rate = *args.mutation_rate;
    config.deletion_rate = *args.mutation_rate;
  }
  if (args.pool == "vocabulary") {
    config.mutation_pool = MutationPool::kVocabulary;
  } else if (args.pool == "common") {
    config.mutation_pool = MutationPool::kCommonFrames;
  } else {
    throw UsageError("--mutation-pool must be 'vocabulary' or 'common'");
  }
  if (args.placement == "uniform") {
    config.mutation_placement = MutationPlacement::kUniform;
  } else if (args.placement == "deep") {
    config.mutation_placement = MutationPlacement::kDeep;
  } else if (args.placement == "top") {
    config.mutation_placement = MutationPlacement::kTop;
  } else {
    throw UsageError("--placement must be 'uniform', 'deep' or 'top'");
  }

  const GeneratedCorpus corpus = GenerateCorpus(config);
  const std::vector<LabeledPair> pairs =
      DerivePairs(corpus.reports, corpus.truth, args.pairs, corpus.family);

  const fs::path dir(args.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIoFailure,
                "cannot create '" + dir.string() + "': " + ec.message());
  }
  WriteCorpus(dir / "corpus.jsonl", corpus.reports);
  WritePairs(dir / "pairs.jsonl", pairs);
  SaveTruth(dir / "truth.json", corpus.truth);
  if (args.raw) {
    std::ostringstream raw;
    for (size_t k = 0; k < corpus.reports.size(); ++k) {
      if (k > 0) raw << '\n';
      raw << FormatReport(corpus.reports[k]);
    }
    Emit((dir / "reports.txt").string(), raw.str(), out);
  }
  out << "wrote " << corpus.reports.size() << " reports in "
      << BucketSizes(corpus.truth).size() << " buckets and " << pairs.size()
      << " pairs to " << dir.string() << '\n';
  return kExitOk;
}

// --- stats -----------------------------------------------------------------

struct StatsArgs {
  std::string truth;
  std::string out;
};

int RunStats(const StatsArgs& args, std::ostream& out) {
  const std::vector<uint64_t> sizes = BucketSizes(LoadTruth(args.truth));
  const auto buckets = IssueSizeBuckets(sizes);
  out << FormatIssueSizeBuckets(buckets);
  if (!args.out.empty()) Emit(args.out, IssueSizeBucketsToJson(buckets), out);
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Crash report deduplication by stack trace similarity",
               "tracedup"};
  app.require_subcommand(1);

  ParseArgs parse_args;
  auto* parse = app.add_subcommand("parse", "Raw report text to corpus JSONL");
  parse->add_option("--input", parse_args.input,
                    "Report file or directory of report files")
      ->required();
  parse->add_option("--out", parse_args.out, "Output path (default stdout)");

  IndexArgs index_args;
  auto* index = app.add_subcommand("index", "Build the IDF index of a corpus");
  index->add_option("--corpus", index_args.corpus, "Corpus JSONL")->required();
  index->add_option("--out", index_args.out, "Index path (default stdout)");

  SimArgs sim_args;
  auto* sim = app.add_subcommand("sim", "Similarity of two reports");
  AddCorpusFlags(sim, sim_args.corpus, false);
  sim->add_option("--a", sim_args.id_a, "First report id (with --corpus)");
  sim->add_option("--b", sim_args.id_b, "Second report id (with --corpus)");
  sim->add_option("--file-a", sim_args.file_a, "First raw report file");
  sim->add_option("--file-b", sim_args.file_b, "Second raw report file");
  sim->add_option("--params", sim_args.params, "Parameters JSON");
  sim->add_option("--method", sim_args.method, "Similarity method")
      ->capture_default_str();
  sim->add_flag("--remove-recursion", sim_args.remove_recursion,
                "Collapse recursive frame blocks first");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "ROC AUC of methods on test pairs");
  AddCorpusFlags(eval, eval_args.corpus, true);
  AddSplitFlags(eval, eval_args.split);
  eval->add_option("--method", eval_args.methods,
                   "Method to evaluate (repeatable; default all)");
  eval->add_option("--params", eval_args.params, "Parameters JSON");
  eval->add_option("--out", eval_args.out, "Write the report as JSON here");
  eval->add_option("--tune-budget", eval_args.tune_budget,
                   "Tune tunable methods on the train split first")
      ->capture_default_str();
  eval->add_option("--strategy", eval_args.strategy, "random or tpe")
      ->capture_default_str();
  eval->add_flag("--remove-recursion", eval_args.remove_recursion,
                 "Collapse recursive frame blocks in TraceSim");

  EvalArgs ablate_args;
  auto* ablate =
      app.add_subcommand("ablate", "TraceSim with components switched off");
  AddCorpusFlags(ablate, ablate_args.corpus, true);
  AddSplitFlags(ablate, ablate_args.split);
  ablate->add_option("--params", ablate_args.params, "Parameters JSON");
  ablate->add_option("--out", ablate_args.out, "Write the report as JSON here");
  ablate->add_option("--tune-budget", ablate_args.tune_budget,
                     "Tune on the train split first")
      ->capture_default_str();
  ablate->add_option("--strategy", ablate_args.strategy, "random or tpe")
      ->capture_default_str();

  TuneArgs tune_args;
  auto* tune = app.add_subcommand("tune", "Search parameters on train pairs");
  AddCorpusFlags(tune, tune_args.corpus, true);
  AddSplitFlags(tune, tune_args.split);
  tune->add_option("--method", tune_args.method,
                   "tracesim, rebucket or moroo")
      ->capture_default_str();
  tune->add_option("--params", tune_args.params,
                   "Fixed parameters outside the search space");
  tune->add_option("--budget", tune_args.budget, "Number of trials")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  tune->add_option("--tune-seed", tune_args.tune_seed, "Seed of the search")
      ->capture_default_str();
  tune->add_option("--strategy", tune_args.strategy, "random or tpe")
      ->capture_default_str();
  tune->add_option("--space", tune_args.space,
                   "Override a range: name=min:max[:log|linear]");
  tune->add_option("--out", tune_args.out, "Output path (default stdout)");
  tune->add_flag("--remove-recursion", tune_args.remove_recursion,
                 "Collapse recursive frame blocks in TraceSim");

  SynthArgs synth_args;
  GeneratorConfig& gen = synth_args.config;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth->add_option("--out", synth_args.out_dir, "Output directory")
      ->required();
  synth->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  synth->add_option("--buckets", gen.num_buckets, "Number of buckets")
      ->capture_default_str();
  synth->add_option("--size-exponent", gen.size_exponent,
                    "Power-law exponent of bucket sizes")
      ->capture_default_str();
  synth->add_option("--max-bucket-size", gen.max_bucket_size,
                    "Largest bucket size")
      ->capture_default_str();
  synth->add_option("--vocabulary", gen.vocabulary_size,
                    "Number of application frames")
      ->capture_default_str();
  synth->add_option("--mutation-rate", synth_args.mutation_rate,
                    "Substitution, insertion and deletion rate at once");
  synth->add_option("--substitution-rate", gen.substitution_rate)
      ->capture_default_str();
  synth->add_option("--insertion-rate", gen.insertion_rate)
      ->capture_default_str();
  synth->add_option("--deletion-rate", gen.deletion_rate)
      ->capture_default_str();
  synth->add_option("--truncation-rate", gen.truncation_rate)
      ->capture_default_str();
  synth->add_option("--mutation-pool", synth_args.pool,
                    "vocabulary or common")
      ->capture_default_str();
  synth->add_option("--placement", synth_args.placement,
                    "uniform, deep or top")
      ->capture_default_str();
  synth->add_option("--soe-probability", gen.soe_probability)
      ->capture_default_str();
  synth->add_option("--recursion-probability", gen.recursion_probability)
      ->capture_default_str();
  synth->add_option("--recursion-depth", gen.recursion_depth,
                    "Longest recursive part of stack overflow traces")
      ->capture_default_str();
  synth->add_option("--min-recursion-depth", gen.min_recursion_depth,
                    "Shortest recursive part (0: half the longest)")
      ->capture_default_str();
  synth->add_option("--sibling-probability", gen.sibling_probability,
                    "Chance a bucket derives from an earlier one")
      ->capture_default_str();
  synth->add_option("--sibling-divergence", gen.sibling_divergence,
                    "Top frames a sibling may replace")
      ->capture_default_str();
  synth->add_option("--common-frame-fraction", gen.common_frame_fraction,
                    "Share of framework frames in application code")
      ->capture_default_str();
  synth->add_option("--num-pos", synth_args.pairs.num_positive,
                    "Positive pairs to derive")
      ->capture_default_str();
  synth->add_option("--num-neg", synth_args.pairs.num_negative,
                    "Negative pairs to derive")
      ->capture_default_str();
  synth->add_option("--hard-negatives", synth_args.pairs.hard_negative_fraction,
                    "Share of negatives from sibling buckets")
      ->capture_default_str();
  synth->add_option("--pair-seed", synth_args.pairs.seed,
                    "Seed for pair sampling")
      ->capture_default_str();
  synth->add_flag("--raw", synth_args.raw,
                  "Also write reports.txt in raw text form");

  StatsArgs stats_args;
  auto* stats =
      app.add_subcommand("stats", "Issue-size histogram of a bucket map");
  stats->add_option("--truth", stats_args.truth, "Bucket map JSON")
      ->required();
  stats->add_option("--out", stats_args.out, "Write the histogram as JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (parse->parsed()) return RunParse(parse_args, out);
    if (index->parsed()) return RunIndex(index_args, out);
    if (sim->parsed()) return RunSim(sim_args, out);
    if (eval->parsed()) return RunEval(eval_args, out, err);
    if (ablate->parsed()) return RunAblate(ablate_args, out, err);
    if (tune->parsed()) return RunTune(tune_args, out);
    if (synth->parsed()) return RunSynth(synth_args, out);
    if (stats->parsed()) return RunStats(stats_args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace tracedup::cli
