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

#include "bam/oracle/victim.h"

#include <algorithm>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "bam/core/random.h"
#include "bam/core/status_macros.h"
#include "bam/substitute/checkpoint.h"

namespace bam {

absl::StatusOr<std::unique_ptr<Oracle>> MakeVictim(const VictimSpec& spec) {
  switch (spec.kind) {
    case VictimKind::kLinear: {
      ASSIGN_OR_RETURN(auto oracle,
                       LinearSoftmaxOracle::Create(spec.weights, spec.bias));
      return std::unique_ptr<Oracle>(std::move(oracle));
    }
    case VictimKind::kGaussianMixture: {
      ASSIGN_OR_RETURN(auto oracle,
                       GaussianMixtureOracle::Create(spec.components));
      return std::unique_ptr<Oracle>(std::move(oracle));
    }
    case VictimKind::kTrainedNet: {
      if (spec.checkpoint.empty()) {
        return absl::InvalidArgumentError(
            "trained-net victim without a checkpoint must be trained first");
      }
      ASSIGN_OR_RETURN(Mlp model, ReadCheckpoint(spec.checkpoint));
      return std::unique_ptr<Oracle>(new NetOracle(std::move(model)));
    }
    case VictimKind::kRemote: {
      ASSIGN_OR_RETURN(auto oracle, RemoteOracle::Connect(spec.url, spec.remote));
      return std::unique_ptr<Oracle>(std::move(oracle));
    }
  }
  return absl::InvalidArgumentError("unknown victim kind");
}

std::pair<ExampleSet, ExampleSet> SplitHeldOut(const ExampleSet& data,
                                               double held_out_fraction,
                                               uint64_t seed) {
  std::vector<size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(DeriveSeed(seed, "held-out-split"));
  std::shuffle(order.begin(), order.end(), rng);
  const size_t num_held_out =
      static_cast<size_t>(held_out_fraction * static_cast<double>(data.size()));
  std::pair<ExampleSet, ExampleSet> out;
  for (size_t i = 0; i < order.size(); ++i) {
    ExampleSet& dst = i < num_held_out ? out.second : out.first;
    dst.samples.push_back(data.samples[order[i]]);
    dst.labels.push_back(data.labels[order[i]]);
  }
  return out;
}

absl::StatusOr<double> OracleAccuracy(Oracle& oracle, const ExampleSet& data) {
  if (data.size() == 0) {
    return absl::InvalidArgumentError("accuracy of an empty example set");
  }
  ASSIGN_OR_RETURN(std::vector<SoftLabel> labels,
                   oracle.PredictProba(data.samples));
  size_t correct = 0;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].argmax() == data.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

absl::StatusOr<TrainedVictim> TrainVictim(const VictimSpec& spec,
                                          const ExampleSet& data,
                                          uint64_t seed) {
  if (spec.kind != VictimKind::kTrainedNet) {
    return absl::InvalidArgumentError("only trained-net victims are trainable");
  }
  if (data.size() == 0) {
    return absl::InvalidArgumentError("victim training data is empty");
  }
  if (!(spec.held_out_fraction > 0.0 && spec.held_out_fraction < 1.0)) {
    return absl::InvalidArgumentError("held_out_fraction must be in (0, 1)");
  }
  const size_t dim = data.samples.front().dim();
  const int num_classes =
      *std::max_element(data.labels.begin(), data.labels.end()) + 1;
  if (num_classes < 2) {
    return absl::InvalidArgumentError("victim data needs at least 2 classes");
  }

  TrainedVictim victim;
  std::tie(victim.train, victim.held_out) =
      SplitHeldOut(data, spec.held_out_fraction, seed);

  LabeledDataset onehot(dim, num_classes);
  for (size_t i = 0; i < victim.train.size(); ++i) {
    std::vector<float> probs(num_classes, 0.0f);
    probs[victim.train.labels[i]] = 1.0f;
    RETURN_IF_ERROR(onehot.Add(victim.train.samples[i],
                               SoftLabel(std::move(probs)), 0));
  }

  NetSpec net{dim, spec.hidden, static_cast<size_t>(num_classes)};
  net.seed = DeriveSeed(seed, "victim-init");
  TrainConfig train = spec.train;
  train.shuffle_seed = DeriveSeed(seed, "victim-shuffle");
  ASSIGN_OR_RETURN(TrainResult trained, TrainSubstitute(onehot, net, train));
  victim.train_loss = trained.train_loss;
  victim.oracle = std::make_unique<NetOracle>(
      RoundToCheckpointPrecision(trained.model));

  // Scored directly on the model so the attacker-facing counter stays at 0.
  ASSIGN_OR_RETURN(std::vector<SoftLabel> preds,
                   victim.oracle->model().Forward(victim.held_out.samples));
  size_t correct = 0;
  for (size_t i = 0; i < preds.size(); ++i) {
    if (preds[i].argmax() == victim.held_out.labels[i]) ++correct;
  }
  victim.held_out_accuracy =
      preds.empty() ? 0.0
                    : static_cast<double>(correct) /
                          static_cast<double>(preds.size());
  return victim;
}

}  // namespace bam
