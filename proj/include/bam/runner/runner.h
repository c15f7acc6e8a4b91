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

// Experiment orchestration: victim setup, extraction, substitute training,
// evaluation, transfer attack, ablations and sweeps.

#ifndef BAM_RUNNER_RUNNER_H_
#define BAM_RUNNER_RUNNER_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "bam/adversarial/pgd.h"
#include "bam/metrics/metrics.h"
#include "bam/oracle/oracle.h"
#include "bam/runner/config.h"
#include "bam/sampler/sampler.h"
#include "bam/substitute/network.h"
#include "bam/substitute/trainer.h"
#include "json.hpp"

namespace bam {

// The victim plus everything evaluated against it. Built once and shared by
// every arm of an ablation or sweep.
struct VictimSetup {
  std::unique_ptr<Oracle> oracle;
  // Resolved initial-population bounds.
  Bounds bounds;
  // Ground-truth labeled points for accuracy, AUC and transfer.
  ExampleSet test;
  // Points on which agreement with the victim is measured, and the victim's
  // labels for them.
  std::vector<Sample> agreement_points;
  std::vector<SoftLabel> agreement_labels;
  std::string agreement_set;  // "grid" or "test"
  double victim_accuracy = 0.0;
  // Held-out accuracy of an in-process trained victim.
  std::optional<double> victim_held_out_accuracy;
  uint64_t reference_size = 0;
  // Victim queries spent building the setup.
  uint64_t setup_queries = 0;
};

// Builds the victim named by the config. A trained-net victim without a
// checkpoint is trained here from the phase seed.
absl::StatusOr<VictimSetup> SetupVictim(const RunConfig& config);

// Substitute accuracy, AUC and agreement against the setup.
absl::StatusOr<EvalReport> EvaluateSubstitute(const Mlp& substitute,
                                              const VictimSetup& setup,
                                              uint64_t extraction_queries);

// Trains the substitute on a dataset with the config's net and train
// settings and phase seeds, rounded to checkpoint precision.
absl::StatusOr<TrainResult> TrainRunSubstitute(const RunConfig& config,
                                               const LabeledDataset& dataset);

struct QueryTotals {
  uint64_t extraction = 0;
  // Setup labeling plus transfer evaluation.
  uint64_t evaluation = 0;
};

struct RunReport {
  std::string label;
  nlohmann::json config;
  size_t dataset_size = 0;
  std::vector<GenerationStats> stats;
  std::vector<double> train_loss;
  std::vector<double> validation_loss;
  int best_epoch = 0;
  double victim_accuracy = 0.0;
  std::optional<double> victim_held_out_accuracy;
  std::string agreement_set;
  EvalReport eval;
  TransferReport transfer;
  QueryTotals queries;
  // Set on failure: the phase that failed and its error.
  std::string failed_phase;
  std::string error;
  // Seconds per phase; kept out of ToJson so reports are reproducible.
  std::map<std::string, double> timings;

  nlohmann::json ToJson() const;
};

// Everything a run produced, for callers that keep the artifacts in memory.
struct RunArtifacts {
  RunReport report;
  LabeledDataset dataset;
  Mlp substitute;
  std::string directory;
};

// extract -> train -> evaluate -> attack against a fresh victim. Writes
// config.json, dataset.bamd, stats.jsonl, substitute.bamm, report.json and
// timings.json to <output_dir>/run-<config hash>. On failure the partial
// report is written and the error names the phase.
absl::StatusOr<RunArtifacts> RunFull(const RunConfig& config);

enum class AblationMode { kLowConfidence, kHighConfidence, kMerged, kHalfHalf };

std::string AblationModeName(AblationMode mode);  // LC, HC, HC&LC, half-half
absl::StatusOr<AblationMode> ParseAblationMode(const std::string& name);

struct AblationReport {
  std::vector<RunReport> arms;

  nlohmann::json ToJson() const;
};

// One report per mode against a shared victim and test set. HC&LC merges the
// LC-only and HC-only datasets. half-half runs ceil(I/2) LC generations and
// ceil(I/2) HC generations from independent seeds and merges them. Artifacts
// go to <output_dir>/ablation-<config hash>/<mode>/.
absl::StatusOr<AblationReport> RunAblation(const RunConfig& config,
                                           std::span<const AblationMode> modes);

enum class SweepAxis { kPopulation, kSelection, kGenerations };

absl::StatusOr<SweepAxis> ParseSweepAxis(const std::string& name);  // N, k, I
std::string SweepAxisName(SweepAxis axis);

struct SweepRow {
  size_t value = 0;
  uint64_t queries = 0;
  size_t dataset_size = 0;
  double agreement = 0.0;
  double accuracy = 0.0;
  double macro_auc = 0.0;
};

struct SweepReport {
  SweepAxis axis = SweepAxis::kGenerations;
  std::vector<SweepRow> rows;
  // Values rejected by config validation.
  std::vector<size_t> skipped;

  std::string ToCsv() const;
};

// One extraction and training per value, sharing victim, test set and seeds.
// Invalid values are skipped with a warning. Writes sweep-<axis>.csv to
// <output_dir>/sweep-<config hash>/.
absl::StatusOr<SweepReport> RunSweep(const RunConfig& config, SweepAxis axis,
                                     std::span<const size_t> values);

// Extraction only, with the config's sampler settings and phase seed.
absl::StatusOr<ExtractionResult> RunConfiguredExtraction(
    const RunConfig& config, VictimSetup& setup);

// Writes report.json style JSON with a trailing newline.
absl::Status WriteJsonFile(const std::string& path, const nlohmann::json& json);

}  // namespace bam

#endif  // BAM_RUNNER_RUNNER_H_
