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

#ifndef BAM_ORACLE_VICTIM_H_
#define BAM_ORACLE_VICTIM_H_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "bam/oracle/analytic.h"
#include "bam/oracle/net_oracle.h"
#include "bam/oracle/oracle.h"
#include "bam/oracle/remote.h"
#include "bam/oracle/synthetic_data.h"
#include "bam/substitute/trainer.h"

namespace bam {

enum class VictimKind { kLinear, kGaussianMixture, kTrainedNet, kRemote };

// Backend kind plus the parameters that backend needs. Only the fields of
// the selected kind are read.
struct VictimSpec {
  VictimKind kind = VictimKind::kGaussianMixture;

  // kLinear: C x d weights and C biases.
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;

  // kGaussianMixture.
  std::vector<GaussianComponent> components;

  // kTrainedNet. If checkpoint is set, the network is loaded from it instead
  // of being trained; data is still used for the held-out evaluation set.
  SyntheticDataSpec data;
  std::vector<size_t> hidden = {64};
  TrainConfig train;
  double held_out_fraction = 0.2;
  std::string checkpoint;

  // kRemote.
  std::string url;
  RemoteOptions remote;
};

// Builds an analytic or remote victim, or a trained-net victim from its
// checkpoint.
absl::StatusOr<std::unique_ptr<Oracle>> MakeVictim(const VictimSpec& spec);

struct TrainedVictim {
  std::unique_ptr<NetOracle> oracle;
  double held_out_accuracy = 0.0;
  ExampleSet train;
  ExampleSet held_out;
  std::vector<double> train_loss;
};

// Seeded shuffle split; returns {train, held_out}.
std::pair<ExampleSet, ExampleSet> SplitHeldOut(const ExampleSet& data,
                                               double held_out_fraction,
                                               uint64_t seed);

// Splits data into train / held-out by a seeded shuffle, trains a network on
// one-hot targets and reports held-out accuracy. Deterministic given seed.
// Non-trainable spec kinds are an InvalidArgument error.
absl::StatusOr<TrainedVictim> TrainVictim(const VictimSpec& spec,
                                          const ExampleSet& data,
                                          uint64_t seed);

// Argmax accuracy of an oracle on labeled examples. Queries are metered.
absl::StatusOr<double> OracleAccuracy(Oracle& oracle, const ExampleSet& data);

}  // namespace bam

#endif  // BAM_ORACLE_VICTIM_H_
