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

// JSON run configuration. Every field has a default, so "{}" plus a victim
// is a complete config.

#ifndef BAM_RUNNER_CONFIG_H_
#define BAM_RUNNER_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "bam/adversarial/pgd.h"
#include "bam/oracle/victim.h"
#include "bam/sampler/sampler.h"
#include "bam/substitute/trainer.h"
#include "json.hpp"

namespace bam {

struct EvaluationConfig {
  // Labeled test points for accuracy, AUC and transfer.
  size_t test_size = 1000;
  // Points per axis of the agreement grid for 2-D victims.
  size_t agreement_grid = 100;
  // Dataset size the query ratio is relative to. 0 selects the victim's
  // training-set size for trained victims and test_size otherwise.
  uint64_t reference_size = 0;
};

struct RunConfig {
  uint64_t seed = 0;
  VictimSpec victim;
  SamplerConfig sampler;
  std::vector<size_t> substitute_hidden = {32, 32};
  TrainConfig train;
  AttackConfig attack;
  EvaluationConfig evaluation;
  std::string output_dir = "runs";

  // Input dimension implied by the victim spec; 0 for remote victims until
  // they are connected.
  size_t InputDim() const;
  size_t NumClasses() const;
  absl::Status Validate() const;
};

absl::StatusOr<VictimKind> ParseVictimKind(const std::string& name);
std::string VictimKindName(VictimKind kind);

absl::StatusOr<RunConfig> RunConfigFromJson(const nlohmann::json& json);
absl::StatusOr<RunConfig> LoadRunConfig(const std::string& path);

// Canonical echo of every field except output_dir. Parsing it back yields an
// equal config.
nlohmann::json RunConfigToJson(const RunConfig& config);

// 16 hex digits of a hash of RunConfigToJson(config).
std::string ConfigHash(const RunConfig& config);

// Phase seeds derived from the master seed by label.
struct PhaseSeeds {
  uint64_t victim = 0;
  uint64_t extraction = 0;
  uint64_t substitute_init = 0;
  uint64_t substitute_shuffle = 0;
  uint64_t evaluation = 0;
  uint64_t attack = 0;
};
PhaseSeeds DerivePhaseSeeds(uint64_t master_seed);

}  // namespace bam

#endif  // BAM_RUNNER_CONFIG_H_
