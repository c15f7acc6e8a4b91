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

// Command-line front end for the BAM toolkit.
//
// Exit codes: 0 success, 1 other failure, 2 config error, 3 oracle or
// transport error, 4 numeric failure.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "bam/core/binary_io.h"
#include "bam/core/dataset_io.h"
#include "bam/core/status_macros.h"
#include "bam/oracle/remote.h"
#include "bam/oracle/synthetic_data.h"
#include "bam/oracle/victim.h"
#include "bam/runner/config.h"
#include "bam/runner/runner.h"
#include "bam/substitute/checkpoint.h"
#include "glog/logging.h"

namespace bam {
namespace {

constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitOracle = 3;
constexpr int kExitNumeric = 4;

int ExitCode(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return 0;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kOutOfRange:
    case absl::StatusCode::kNotFound:
      return kExitConfig;
    case absl::StatusCode::kUnavailable:
    case absl::StatusCode::kDeadlineExceeded:
      return kExitOracle;
    case absl::StatusCode::kInternal:
      return kExitNumeric;
    default:
      return kExitOther;
  }
}

struct GlobalFlags {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::string out;
  std::string oracle_url;
};

absl::StatusOr<RunConfig> LoadConfig(const GlobalFlags& flags) {
  if (flags.config_path.empty()) {
    return absl::InvalidArgumentError("--config is required");
  }
  ASSIGN_OR_RETURN(RunConfig config, LoadRunConfig(flags.config_path));
  if (flags.seed) config.seed = *flags.seed;
  if (!flags.out.empty()) config.output_dir = flags.out;
  if (!flags.oracle_url.empty()) {
    config.victim.kind = VictimKind::kRemote;
    config.victim.url = flags.oracle_url;
  }
  RETURN_IF_ERROR(config.Validate());
  return config;
}

absl::Status EnsureDirectory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return absl::PermissionDeniedError(ec.message());
  return absl::OkStatus();
}

std::string OutPath(const RunConfig& config, const std::string& name) {
  return (std::filesystem::path(config.output_dir) / name).string();
}

absl::Status TrainVictimCommand(const GlobalFlags& flags) {
  ASSIGN_OR_RETURN(RunConfig config, LoadConfig(flags));
  if (config.victim.kind != VictimKind::kTrainedNet) {
    return absl::InvalidArgumentError("train-victim needs a trained_net victim");
  }
  ASSIGN_OR_RETURN(ExampleSet data, GenerateSyntheticData(config.victim.data));
  ASSIGN_OR_RETURN(
      TrainedVictim victim,
      TrainVictim(config.victim, data, DerivePhaseSeeds(config.seed).victim));
  RETURN_IF_ERROR(EnsureDirectory(config.output_dir));
  const std::string path = OutPath(config, "victim.bamm");
  RETURN_IF_ERROR(WriteCheckpoint(path, victim.oracle->model()));
  const nlohmann::json summary{{"checkpoint", path},
                               {"held_out_accuracy", victim.held_out_accuracy},
                               {"train_size", victim.train.size()},
                               {"held_out_size", victim.held_out.size()},
                               {"train_loss", victim.train_loss}};
  RETURN_IF_ERROR(WriteJsonFile(OutPath(config, "victim.json"), summary));
  std::cout << "victim held-out accuracy " << victim.held_out_accuracy
            << ", checkpoint " << path << "\n";
  return absl::OkStatus();
}

absl::Status ExtractCommand(const GlobalFlags& flags, bool csv) {
  ASSIGN_OR_RETURN(RunConfig config, LoadConfig(flags));
  ASSIGN_OR_RETURN(VictimSetup setup, SetupVictim(config));
  ASSIGN_OR_RETURN(ExtractionResult result,
                   RunConfiguredExtraction(config, setup));
  RETURN_IF_ERROR(EnsureDirectory(config.output_dir));
  RETURN_IF_ERROR(WriteDataset(OutPath(config, "dataset.bamd"), result.dataset));
  RETURN_IF_ERROR(WriteFileBytes(OutPath(config, "stats.jsonl"),
                                 StatsToJsonLines(result.stats)));
  if (csv) {
    RETURN_IF_ERROR(
        WriteDatasetCsv(OutPath(config, "dataset.csv"), result.dataset));
  }
  std::cout << "extracted " << result.dataset.size() << " records with "
            << result.queries << " queries\n";
  return absl::OkStatus();
}

absl::Status TrainSubstituteCommand(const GlobalFlags& flags,
                                    const std::string& dataset_path) {
  ASSIGN_OR_RETURN(RunConfig config, LoadConfig(flags));
  ASSIGN_OR_RETURN(LabeledDataset dataset, ReadDataset(dataset_path));
  ASSIGN_OR_RETURN(TrainResult trained, TrainRunSubstitute(config, dataset));
  RETURN_IF_ERROR(EnsureDirectory(config.output_dir));
  RETURN_IF_ERROR(
      WriteCheckpoint(OutPath(config, "substitute.bamm"), trained.model));
  RETURN_IF_ERROR(WriteJsonFile(
      OutPath(config, "training.json"),
      nlohmann::json{{"train_loss", trained.train_loss},
                     {"validation_loss", trained.validation_loss},
                     {"best_epoch", trained.best_epoch},
                     {"train_records", trained.train_records},
                     {"validation_records", trained.validation_records}}));
  std::cout << "best epoch " << trained.best_epoch << "\n";
  return absl::OkStatus();
}

absl::Status EvaluateCommand(const GlobalFlags& flags,
                             const std::string& substitute_path,
                             const std::string& dataset_path) {
  ASSIGN_OR_RETURN(RunConfig config, LoadConfig(flags));
  ASSIGN_OR_RETURN(Mlp substitute, ReadCheckpoint(substitute_path));
  uint64_t queries = 0;
  if (!dataset_path.empty()) {
    ASSIGN_OR_RETURN(LabeledDataset dataset, ReadDataset(dataset_path));
    queries = dataset.size();
  }
  ASSIGN_OR_RETURN(VictimSetup setup, SetupVictim(config));
  ASSIGN_OR_RETURN(EvalReport report,
                   EvaluateSubstitute(substitute, setup, queries));
  RETURN_IF_ERROR(EnsureDirectory(config.output_dir));
  RETURN_IF_ERROR(WriteJsonFile(OutPath(config, "eval.json"), report.ToJson()));
  std::cout << report.ToJson().dump(2) << "\n";
  return absl::OkStatus();
}

absl::Status AttackCommand(const GlobalFlags& flags,
                           const std::string& substitute_path) {
  ASSIGN_OR_RETURN(RunConfig config, LoadConfig(flags));
  ASSIGN_OR_RETURN(Mlp substitute, ReadCheckpoint(substitute_path));
  ASSIGN_OR_RETURN(VictimSetup setup, SetupVictim(config));
  ASSIGN_OR_RETURN(TransferReport report,
                   EvaluateTransfer(substitute, *setup.oracle, setup.test,
                                    config.attack,
                                    DerivePhaseSeeds(config.seed).attack));
  RETURN_IF_ERROR(EnsureDirectory(config.output_dir));
  RETURN_IF_ERROR(
      WriteJsonFile(OutPath(config, "transfer.json"), report.ToJson()));
  std::cout << report.ToJson().dump(2) << "\n";
  return absl::OkStatus();
}

absl::Status FullRunCommand(const GlobalFlags& flags) {
  ASSIGN_OR_RETURN(RunConfig config, LoadConfig(flags));
  ASSIGN_OR_RETURN(RunArtifacts run, RunFull(config));
  std::cout << "agreement " << run.report.eval.agreement << ", accuracy "
            << run.report.eval.accuracy << ", asr " << run.report.transfer.asr
            << "\n"
            << run.directory << "\n";
  return absl::OkStatus();
}

absl::Status AblationCommand(const GlobalFlags& flags,
                             const std::vector<std::string>& mode_names) {
  ASSIGN_OR_RETURN(RunConfig config, LoadConfig(flags));
  std::vector<AblationMode> modes;
  for (const std::string& name : mode_names) {
    ASSIGN_OR_RETURN(AblationMode mode, ParseAblationMode(name));
    modes.push_back(mode);
  }
  ASSIGN_OR_RETURN(AblationReport report, RunAblation(config, modes));
  std::cout << report.ToJson()["summary"].dump(2) << "\n";
  return absl::OkStatus();
}

absl::Status SweepCommand(const GlobalFlags& flags, const std::string& axis,
                          const std::vector<size_t>& values) {
  ASSIGN_OR_RETURN(RunConfig config, LoadConfig(flags));
  ASSIGN_OR_RETURN(SweepAxis parsed, ParseSweepAxis(axis));
  ASSIGN_OR_RETURN(SweepReport report, RunSweep(config, parsed, values));
  std::cout << report.ToCsv();
  return absl::OkStatus();
}

absl::Status ServeCheckCommand(const GlobalFlags& flags) {
  if (flags.oracle_url.empty()) {
    return absl::InvalidArgumentError("serve-check needs --oracle-url");
  }
  ASSIGN_OR_RETURN(RemoteInfo info, ServeCheck(flags.oracle_url));
  std::cout << "ok: input_dim " << info.input_dim << ", class_count "
            << info.class_count << "\n";
  return absl::OkStatus();
}

int Main(int argc, char** argv) {
  CLI::App app{"Boundary-aware black-box model extraction toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalFlags flags;
  uint64_t seed = 0;
  app.add_option("--config", flags.config_path, "JSON run config");
  CLI::Option* seed_opt =
      app.add_option("--seed", seed, "Master seed (overrides the config)");
  app.add_option("--out", flags.out, "Output directory (overrides the config)");
  app.add_option("--oracle-url", flags.oracle_url,
                 "Query a remote victim at this base URL");

  auto* train_victim = app.add_subcommand(
      "train-victim", "Train an in-process victim and write its checkpoint");
  bool csv = false;
  auto* extract = app.add_subcommand("extract", "Run extraction only");
  extract->add_flag("--csv", csv, "Also write dataset.csv");
  std::string dataset_path;
  auto* train_sub = app.add_subcommand(
      "train-substitute", "Train a substitute on an extracted dataset");
  train_sub->add_option("--dataset", dataset_path, "Dataset file")->required();
  std::string substitute_path;
  std::string eval_dataset_path;
  auto* evaluate =
      app.add_subcommand("evaluate", "Score a substitute against the victim");
  evaluate->add_option("--substitute", substitute_path, "Checkpoint")
      ->required();
  evaluate->add_option("--dataset", eval_dataset_path,
                       "Extracted dataset; its size is the query count");
  std::string attack_substitute;
  auto* attack = app.add_subcommand(
      "attack", "Transfer PGD examples from a substitute to the victim");
  attack->add_option("--substitute", attack_substitute, "Checkpoint")
      ->required();
  auto* full_run = app.add_subcommand(
      "full-run", "Extract, train, evaluate and attack in one run");
  std::vector<std::string> modes = {"LC", "HC", "HC&LC", "half-half"};
  auto* ablation = app.add_subcommand("ablation", "Compare sampling modes");
  ablation->add_option("--modes", modes, "Subset of LC HC HC&LC half-half")
      ->delimiter(',');
  std::string axis;
  std::vector<size_t> values;
  auto* sweep = app.add_subcommand("sweep", "Sweep N, k or I");
  sweep->add_option("--axis", axis, "N, k or I")->required();
  sweep->add_option("--values", values, "Comma-separated values")
      ->required()
      ->delimiter(',');
  auto* serve_check =
      app.add_subcommand("serve-check", "Ping a remote oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  if (*seed_opt) flags.seed = seed;

  absl::Status status;
  if (*train_victim) {
    status = TrainVictimCommand(flags);
  } else if (*extract) {
    status = ExtractCommand(flags, csv);
  } else if (*train_sub) {
    status = TrainSubstituteCommand(flags, dataset_path);
  } else if (*evaluate) {
    status = EvaluateCommand(flags, substitute_path, eval_dataset_path);
  } else if (*attack) {
    status = AttackCommand(flags, attack_substitute);
  } else if (*full_run) {
    status = FullRunCommand(flags);
  } else if (*ablation) {
    status = AblationCommand(flags, modes);
  } else if (*sweep) {
    status = SweepCommand(flags, axis, values);
  } else if (*serve_check) {
    status = ServeCheckCommand(flags);
  }
  if (!status.ok()) {
    std::cerr << "error: " << status << "\n";
  }
  return ExitCode(status);
}

}  // namespace
}  // namespace bam

int main(int argc, char** argv) {
  google::InitGoogleLogging(argv[0]);
  FLAGS_logtostderr = true;
  return bam::Main(argc, argv);
}
