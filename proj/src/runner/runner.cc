// Copyright 2026 The BAM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bam/runner/runner.h"

#include <chrono>
#include <filesystem>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "bam/core/binary_io.h"
#include "bam/core/dataset_io.h"
#include "bam/core/random.h"
#include "bam/core/status_macros.h"
#include "bam/oracle/analytic.h"
#include "bam/oracle/synthetic_data.h"
#include "bam/oracle/victim.h"
#include "bam/substitute/checkpoint.h"
#include "glog/logging.h"

namespace bam {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;
namespace fs = std::filesystem;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

absl::Status WithPhase(const absl::Status& status, const std::string& phase) {
  return absl::Status(status.code(),
                      absl::StrCat(phase, ": ", status.message()));
}

absl::Status MakeDirectory(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot create ", dir, ": ", ec.message()));
  }
  return absl::OkStatus();
}

std::string JoinPath(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

Bounds ResolveBounds(const Bounds& configured, size_t dim) {
  if (configured.dim() == 0) return Bounds::Uniform(dim, 0.0, 1.0);
  if (configured.dim() == 1 && dim > 1) {
    return Bounds::Uniform(dim, configured.low[0], configured.high[0]);
  }
  return configured;
}

// n x n points covering the 2-D box, edges included, row-major in (x0, x1).
std::vector<Sample> GridPoints(const Bounds& bounds, size_t n) {
  std::vector<Sample> points;
  points.reserve(n * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      const double u = static_cast<double>(i) / static_cast<double>(n - 1);
      const double v = static_cast<double>(j) / static_cast<double>(n - 1);
      points.emplace_back(std::vector<float>{
          static_cast<float>(bounds.low[0] +
                             u * (bounds.high[0] - bounds.low[0])),
          static_cast<float>(bounds.low[1] +
                             v * (bounds.high[1] - bounds.low[1]))});
    }
  }
  return points;
}

std::vector<Sample> UniformPoints(const Bounds& bounds, size_t n, Rng& rng) {
  std::vector<Sample> points;
  points.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    std::vector<float> x(bounds.dim());
    for (size_t f = 0; f < bounds.dim(); ++f) {
      x[f] = static_cast<float>(UniformReal(rng, bounds.low[f], bounds.high[f]));
    }
    points.emplace_back(std::move(x));
  }
  return points;
}

ExampleSet Truncate(ExampleSet set, size_t n) {
  if (set.size() > n) {
    set.samples.resize(n);
    set.labels.resize(n);
  }
  return set;
}

absl::StatusOr<ExtractionResult> Extract(const RunConfig& config,
                                         VictimSetup& setup, FitnessMode mode,
                                         size_t generations, uint64_t seed,
                                         const std::string& partial_path) {
  SamplerConfig sampler = config.sampler;
  sampler.init_bounds = setup.bounds;
  sampler.fitness_mode = mode;
  sampler.generations = generations;
  sampler.seed = seed;
  sampler.partial_dataset_path = partial_path;
  return RunExtraction(*setup.oracle, sampler);
}

absl::StatusOr<ExtractionResult> MergeExtractions(const ExtractionResult& a,
                                                  const ExtractionResult& b) {
  ASSIGN_OR_RETURN(LabeledDataset merged, MergeDatasets(a.dataset, b.dataset));
  ExtractionResult out{std::move(merged), a.stats, a.queries + b.queries};
  out.stats.insert(out.stats.end(), b.stats.begin(), b.stats.end());
  return out;
}

// Trains, evaluates and attacks on one extracted dataset, filling report as
// phases complete. On failure the report names the failed phase.
absl::Status RunArm(const RunConfig& config, VictimSetup& setup,
                    const ExtractionResult& extraction, RunReport& report,
                    std::optional<Mlp>& substitute) {
  auto fail = [&report](const absl::Status& status, const std::string& phase) {
    report.failed_phase = phase;
    report.error = std::string(status.message());
    return WithPhase(status, phase);
  };
  const uint64_t queries_before = setup.oracle->query_count();
  report.dataset_size = extraction.dataset.size();
  report.stats = extraction.stats;
  report.queries.extraction = extraction.queries;
  report.queries.evaluation = setup.setup_queries;
  report.victim_accuracy = setup.victim_accuracy;
  report.victim_held_out_accuracy = setup.victim_held_out_accuracy;
  report.agreement_set = setup.agreement_set;

  Clock::time_point start = Clock::now();
  absl::StatusOr<TrainResult> trained =
      TrainRunSubstitute(config, extraction.dataset);
  if (!trained.ok()) return fail(trained.status(), "training");
  report.train_loss = trained->train_loss;
  report.validation_loss = trained->validation_loss;
  report.best_epoch = trained->best_epoch;
  substitute = std::move(trained->model);
  report.timings["training"] = SecondsSince(start);

  start = Clock::now();
  absl::StatusOr<EvalReport> eval =
      EvaluateSubstitute(*substitute, setup, extraction.queries);
  if (!eval.ok()) return fail(eval.status(), "evaluation");
  report.eval = *std::move(eval);
  report.timings["evaluation"] = SecondsSince(start);

  start = Clock::now();
  absl::StatusOr<TransferReport> transfer =
      EvaluateTransfer(*substitute, *setup.oracle, setup.test, config.attack,
                       DerivePhaseSeeds(config.seed).attack);
  if (!transfer.ok()) return fail(transfer.status(), "attack");
  report.transfer = *std::move(transfer);
  report.timings["attack"] = SecondsSince(start);
  report.queries.evaluation +=
      setup.oracle->query_count() - queries_before;
  return absl::OkStatus();
}

absl::Status WriteArtifacts(const std::string& dir,
                            const ExtractionResult& extraction) {
  RETURN_IF_ERROR(
      WriteDataset(JoinPath(dir, "dataset.bamd"), extraction.dataset));
  return WriteFileBytes(JoinPath(dir, "stats.jsonl"),
                        StatsToJsonLines(extraction.stats));
}

absl::Status WriteReports(const std::string& dir, const RunReport& report) {
  RETURN_IF_ERROR(WriteJsonFile(JoinPath(dir, "report.json"), report.ToJson()));
  return WriteJsonFile(JoinPath(dir, "timings.json"), json(report.timings));
}

std::string ModeDirectory(AblationMode mode) {
  switch (mode) {
    case AblationMode::kLowConfidence:
      return "lc";
    case AblationMode::kHighConfidence:
      return "hc";
    case AblationMode::kMerged:
      return "hc_lc";
    case AblationMode::kHalfHalf:
      return "half_half";
  }
  return "unknown";
}

}  // namespace

absl::Status WriteJsonFile(const std::string& path, const json& j) {
  return WriteFileBytes(path, j.dump(2) + "\n");
}

absl::StatusOr<VictimSetup> SetupVictim(const RunConfig& config) {
  RETURN_IF_ERROR(config.Validate());
  const PhaseSeeds seeds = DerivePhaseSeeds(config.seed);
  const size_t test_size = config.evaluation.test_size;
  VictimSetup setup;
  uint64_t default_reference = test_size;

  if (config.victim.kind == VictimKind::kTrainedNet) {
    ASSIGN_OR_RETURN(ExampleSet data, GenerateSyntheticData(config.victim.data));
    if (config.victim.checkpoint.empty()) {
      ASSIGN_OR_RETURN(TrainedVictim trained,
                       TrainVictim(config.victim, data, seeds.victim));
      LOG(INFO) << "trained victim held-out accuracy "
                << trained.held_out_accuracy;
      setup.victim_held_out_accuracy = trained.held_out_accuracy;
      default_reference = trained.train.size();
      setup.test = Truncate(std::move(trained.held_out), test_size);
      setup.oracle = std::move(trained.oracle);
    } else {
      ASSIGN_OR_RETURN(setup.oracle, MakeVictim(config.victim));
      auto [train, held_out] = SplitHeldOut(
          data, config.victim.held_out_fraction, seeds.victim);
      default_reference = train.size();
      setup.test = Truncate(std::move(held_out), test_size);
    }
  } else {
    ASSIGN_OR_RETURN(setup.oracle, MakeVictim(config.victim));
  }
  const size_t dim = setup.oracle->input_dim();
  setup.bounds = ResolveBounds(config.sampler.init_bounds, dim);
  RETURN_IF_ERROR(setup.bounds.Validate());
  if (setup.bounds.dim() != dim) {
    return absl::InvalidArgumentError(
        absl::StrCat("init bounds have dimension ", setup.bounds.dim(),
                     ", victim has ", dim));
  }

  Rng test_rng(DeriveSeed(seeds.evaluation, "test-set"));
  if (config.victim.kind == VictimKind::kGaussianMixture) {
    const auto* mixture =
        dynamic_cast<const GaussianMixtureOracle*>(setup.oracle.get());
    CHECK(mixture != nullptr);
    setup.test = mixture->SampleLabeled(test_size, test_rng);
  } else if (config.victim.kind != VictimKind::kTrainedNet) {
    setup.test.samples = UniformPoints(setup.bounds, test_size, test_rng);
    ASSIGN_OR_RETURN(std::vector<SoftLabel> labels,
                     setup.oracle->PredictProba(setup.test.samples));
    for (const SoftLabel& label : labels) {
      setup.test.labels.push_back(label.argmax());
    }
  }
  if (setup.test.size() == 0) {
    return absl::FailedPreconditionError("evaluation test set is empty");
  }
  ASSIGN_OR_RETURN(setup.victim_accuracy,
                   OracleAccuracy(*setup.oracle, setup.test));

  if (dim == 2) {
    setup.agreement_set = "grid";
    setup.agreement_points =
        GridPoints(setup.bounds, config.evaluation.agreement_grid);
  } else {
    setup.agreement_set = "test";
    setup.agreement_points = setup.test.samples;
  }
  ASSIGN_OR_RETURN(setup.agreement_labels,
                   setup.oracle->PredictProba(setup.agreement_points));
  setup.reference_size = config.evaluation.reference_size > 0
                             ? config.evaluation.reference_size
                             : default_reference;
  setup.setup_queries = setup.oracle->query_count();
  return setup;
}

absl::StatusOr<EvalReport> EvaluateSubstitute(const Mlp& substitute,
                                              const VictimSetup& setup,
                                              uint64_t extraction_queries) {
  EvalReport report;
  ASSIGN_OR_RETURN(std::vector<SoftLabel> predictions,
                   substitute.Forward(setup.test.samples));
  ASSIGN_OR_RETURN(report.accuracy, Accuracy(predictions, setup.test.labels));
  ASSIGN_OR_RETURN(AucReport auc, MacroAuc(predictions, setup.test.labels));
  report.macro_auc = auc.macro;
  report.per_class_auc = std::move(auc.per_class);
  ASSIGN_OR_RETURN(std::vector<SoftLabel> on_agreement,
                   substitute.Forward(setup.agreement_points));
  ASSIGN_OR_RETURN(report.agreement,
                   Agreement(on_agreement, setup.agreement_labels));
  report.query_count = extraction_queries;
  ASSIGN_OR_RETURN(report.query_ratio,
                   QueryRatio(extraction_queries, setup.reference_size));
  return report;
}

absl::StatusOr<TrainResult> TrainRunSubstitute(const RunConfig& config,
                                               const LabeledDataset& dataset) {
  const PhaseSeeds seeds = DerivePhaseSeeds(config.seed);
  NetSpec net{dataset.dim(), config.substitute_hidden, dataset.num_classes()};
  net.seed = seeds.substitute_init;
  TrainConfig train = config.train;
  train.shuffle_seed = seeds.substitute_shuffle;
  ASSIGN_OR_RETURN(TrainResult result, TrainSubstitute(dataset, net, train));
  result.model = RoundToCheckpointPrecision(result.model);
  return result;
}

absl::StatusOr<ExtractionResult> RunConfiguredExtraction(
    const RunConfig& config, VictimSetup& setup) {
  return Extract(config, setup, config.sampler.fitness_mode,
                 config.sampler.generations,
                 DerivePhaseSeeds(config.seed).extraction, "");
}

json RunReport::ToJson() const {
  json stats_json = json::array();
  for (const GenerationStats& s : stats) stats_json.push_back(s.ToJson());
  json transfer_json = transfer.ToJson();
  transfer_json["max_abs_delta"] = transfer.max_abs_delta;
  json victim{{"accuracy", victim_accuracy},
              {"held_out_accuracy", nullptr},
              {"agreement_set", agreement_set}};
  if (victim_held_out_accuracy) {
    victim["held_out_accuracy"] = *victim_held_out_accuracy;
  }
  json j{{"label", label},
         {"config", config},
         {"dataset_size", dataset_size},
         {"generation_stats", std::move(stats_json)},
         {"training", json{{"train_loss", train_loss},
                           {"validation_loss", validation_loss},
                           {"best_epoch", best_epoch}}},
         {"victim", std::move(victim)},
         {"eval", eval.ToJson()},
         {"transfer", std::move(transfer_json)},
         {"queries", json{{"extraction", queries.extraction},
                          {"evaluation", queries.evaluation},
                          {"total", queries.extraction + queries.evaluation}}}};
  if (!failed_phase.empty()) {
    j["failed_phase"] = failed_phase;
    j["error"] = error;
  }
  return j;
}

absl::StatusOr<RunArtifacts> RunFull(const RunConfig& config) {
  RETURN_IF_ERROR(config.Validate());
  const std::string dir =
      JoinPath(config.output_dir, absl::StrCat("run-", ConfigHash(config)));
  RETURN_IF_ERROR(MakeDirectory(dir));
  RETURN_IF_ERROR(
      WriteJsonFile(JoinPath(dir, "config.json"), RunConfigToJson(config)));

  RunReport report;
  report.label = std::string(FitnessModeName(config.sampler.fitness_mode));
  report.config = RunConfigToJson(config);
  auto fail = [&](const absl::Status& status, const std::string& phase) {
    report.failed_phase = phase;
    report.error = std::string(status.message());
    WriteReports(dir, report).IgnoreError();
    return WithPhase(status, phase);
  };

  Clock::time_point start = Clock::now();
  absl::StatusOr<VictimSetup> setup = SetupVictim(config);
  if (!setup.ok()) return fail(setup.status(), "victim-setup");
  report.timings["victim_setup"] = SecondsSince(start);

  start = Clock::now();
  absl::StatusOr<ExtractionResult> extraction =
      Extract(config, *setup, config.sampler.fitness_mode,
              config.sampler.generations,
              DerivePhaseSeeds(config.seed).extraction,
              JoinPath(dir, "dataset.partial.bamd"));
  if (!extraction.ok()) return fail(extraction.status(), "extraction");
  report.timings["extraction"] = SecondsSince(start);
  if (absl::Status s = WriteArtifacts(dir, *extraction); !s.ok()) {
    return fail(s, "write");
  }

  std::optional<Mlp> substitute;
  if (absl::Status s = RunArm(config, *setup, *extraction, report, substitute);
      !s.ok()) {
    WriteReports(dir, report).IgnoreError();
    return s;
  }
  if (absl::Status s =
          WriteCheckpoint(JoinPath(dir, "substitute.bamm"), *substitute);
      !s.ok()) {
    return fail(s, "write");
  }
  RETURN_IF_ERROR(WriteReports(dir, report));
  LOG(INFO) << "run written to " << dir;
  return RunArtifacts{std::move(report), std::move(extraction->dataset),
                      *std::move(substitute), dir};
}

std::string AblationModeName(AblationMode mode) {
  switch (mode) {
    case AblationMode::kLowConfidence:
      return "LC";
    case AblationMode::kHighConfidence:
      return "HC";
    case AblationMode::kMerged:
      return "HC&LC";
    case AblationMode::kHalfHalf:
      return "half-half";
  }
  return "unknown";
}

absl::StatusOr<AblationMode> ParseAblationMode(const std::string& name) {
  if (name == "LC" || name == "lc") return AblationMode::kLowConfidence;
  if (name == "HC" || name == "hc") return AblationMode::kHighConfidence;
  if (name == "HC&LC" || name == "hc&lc" || name == "merged") {
    return AblationMode::kMerged;
  }
  if (name == "half-half" || name == "half") return AblationMode::kHalfHalf;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown ablation mode \"", name, "\" (want LC, HC, HC&LC, half-half)"));
}

json AblationReport::ToJson() const {
  json summary = json::array();
  json reports = json::array();
  for (const RunReport& arm : arms) {
    summary.push_back(json{{"mode", arm.label},
                           {"dataset_size", arm.dataset_size},
                           {"extraction_queries", arm.queries.extraction},
                           {"agreement", arm.eval.agreement},
                           {"accuracy", arm.eval.accuracy},
                           {"macro_auc", arm.eval.macro_auc},
                           {"asr", arm.transfer.asr}});
    reports.push_back(arm.ToJson());
  }
  return json{{"summary", std::move(summary)}, {"arms", std::move(reports)}};
}

absl::StatusOr<AblationReport> RunAblation(
    const RunConfig& config, std::span<const AblationMode> modes) {
  RETURN_IF_ERROR(config.Validate());
  if (modes.empty()) return absl::InvalidArgumentError("no ablation modes");
  const std::string dir = JoinPath(
      config.output_dir, absl::StrCat("ablation-", ConfigHash(config)));
  RETURN_IF_ERROR(MakeDirectory(dir));
  RETURN_IF_ERROR(
      WriteJsonFile(JoinPath(dir, "config.json"), RunConfigToJson(config)));

  absl::StatusOr<VictimSetup> setup = SetupVictim(config);
  if (!setup.ok()) return WithPhase(setup.status(), "victim-setup");

  const uint64_t seed = DerivePhaseSeeds(config.seed).extraction;
  const size_t generations = config.sampler.generations;
  std::optional<ExtractionResult> lc, hc;
  auto ensure = [&](std::optional<ExtractionResult>& slot,
                    FitnessMode mode) -> absl::Status {
    if (slot) return absl::OkStatus();
    absl::StatusOr<ExtractionResult> r =
        Extract(config, *setup, mode, generations, seed, "");
    if (!r.ok()) return WithPhase(r.status(), "extraction");
    slot = *std::move(r);
    return absl::OkStatus();
  };

  AblationReport out;
  for (AblationMode mode : modes) {
    ExtractionResult* extraction = nullptr;
    std::optional<ExtractionResult> combined;
    switch (mode) {
      case AblationMode::kLowConfidence:
        RETURN_IF_ERROR(ensure(lc, FitnessMode::kLowConfidence));
        extraction = &*lc;
        break;
      case AblationMode::kHighConfidence:
        RETURN_IF_ERROR(ensure(hc, FitnessMode::kHighConfidence));
        extraction = &*hc;
        break;
      case AblationMode::kMerged: {
        RETURN_IF_ERROR(ensure(lc, FitnessMode::kLowConfidence));
        RETURN_IF_ERROR(ensure(hc, FitnessMode::kHighConfidence));
        ASSIGN_OR_RETURN(combined, MergeExtractions(*lc, *hc));
        extraction = &*combined;
        break;
      }
      case AblationMode::kHalfHalf: {
        const size_t half = (generations + 1) / 2;
        absl::StatusOr<ExtractionResult> first = Extract(
            config, *setup, FitnessMode::kLowConfidence, half, seed, "");
        if (!first.ok()) return WithPhase(first.status(), "extraction");
        absl::StatusOr<ExtractionResult> second =
            Extract(config, *setup, FitnessMode::kHighConfidence, half,
                    DeriveSeed(seed, "half-half-second"), "");
        if (!second.ok()) return WithPhase(second.status(), "extraction");
        ASSIGN_OR_RETURN(combined, MergeExtractions(*first, *second));
        extraction = &*combined;
        break;
      }
    }
    RunReport report;
    report.label = AblationModeName(mode);
    report.config = RunConfigToJson(config);
    const std::string arm_dir = JoinPath(dir, ModeDirectory(mode));
    RETURN_IF_ERROR(MakeDirectory(arm_dir));
    RETURN_IF_ERROR(WriteArtifacts(arm_dir, *extraction));
    std::optional<Mlp> substitute;
    if (absl::Status s = RunArm(config, *setup, *extraction, report, substitute);
        !s.ok()) {
      WriteReports(arm_dir, report).IgnoreError();
      return s;
    }
    RETURN_IF_ERROR(
        WriteCheckpoint(JoinPath(arm_dir, "substitute.bamm"), *substitute));
    RETURN_IF_ERROR(WriteReports(arm_dir, report));
    out.arms.push_back(std::move(report));
  }
  RETURN_IF_ERROR(WriteJsonFile(JoinPath(dir, "ablation.json"), out.ToJson()));
  return out;
}

absl::StatusOr<SweepAxis> ParseSweepAxis(const std::string& name) {
  if (name == "N") return SweepAxis::kPopulation;
  if (name == "k") return SweepAxis::kSelection;
  if (name == "I") return SweepAxis::kGenerations;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown sweep axis \"", name, "\" (want N, k or I)"));
}

std::string SweepAxisName(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kPopulation:
      return "N";
    case SweepAxis::kSelection:
      return "k";
    case SweepAxis::kGenerations:
      return "I";
  }
  return "unknown";
}

std::string SweepReport::ToCsv() const {
  std::string csv = absl::StrCat(
      SweepAxisName(axis), ",queries,dataset_size,agreement,accuracy,macro_auc\n");
  for (const SweepRow& row : rows) {
    absl::StrAppend(&csv, absl::StrFormat("%d,%d,%d,%.6f,%.6f,%.6f\n",
                                          row.value, row.queries,
                                          row.dataset_size, row.agreement,
                                          row.accuracy, row.macro_auc));
  }
  return csv;
}

absl::StatusOr<SweepReport> RunSweep(const RunConfig& config, SweepAxis axis,
                                     std::span<const size_t> values) {
  RETURN_IF_ERROR(config.Validate());
  absl::StatusOr<VictimSetup> setup = SetupVictim(config);
  if (!setup.ok()) return WithPhase(setup.status(), "victim-setup");

  SweepReport report;
  report.axis = axis;
  for (size_t value : values) {
    RunConfig variant = config;
    switch (axis) {
      case SweepAxis::kPopulation:
        variant.sampler.population_size = value;
        break;
      case SweepAxis::kSelection:
        variant.sampler.selection_size = value;
        break;
      case SweepAxis::kGenerations:
        variant.sampler.generations = value;
        break;
    }
    SamplerConfig check = variant.sampler;
    check.init_bounds = setup->bounds;
    if (absl::Status s = check.Validate(setup->oracle->input_dim()); !s.ok()) {
      LOG(WARNING) << "skipping " << SweepAxisName(axis) << "=" << value << ": "
                   << s.message();
      report.skipped.push_back(value);
      continue;
    }
    absl::StatusOr<ExtractionResult> extraction =
        RunConfiguredExtraction(variant, *setup);
    if (!extraction.ok()) return WithPhase(extraction.status(), "extraction");
    absl::StatusOr<TrainResult> trained =
        TrainRunSubstitute(variant, extraction->dataset);
    if (!trained.ok()) return WithPhase(trained.status(), "training");
    absl::StatusOr<EvalReport> eval =
        EvaluateSubstitute(trained->model, *setup, extraction->queries);
    if (!eval.ok()) return WithPhase(eval.status(), "evaluation");
    report.rows.push_back(SweepRow{value, extraction->queries,
                                   extraction->dataset.size(), eval->agreement,
                                   eval->accuracy, eval->macro_auc});
  }
  const std::string dir =
      JoinPath(config.output_dir, absl::StrCat("sweep-", ConfigHash(config)));
  RETURN_IF_ERROR(MakeDirectory(dir));
  RETURN_IF_ERROR(WriteFileBytes(
      JoinPath(dir, absl::StrCat("sweep-", SweepAxisName(axis), ".csv")),
      report.ToCsv()));
  return report;
}

}  // namespace bam
