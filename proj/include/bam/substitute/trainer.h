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

#ifndef BAM_SUBSTITUTE_TRAINER_H_
#define BAM_SUBSTITUTE_TRAINER_H_

#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "bam/core/types.h"
#include "bam/substitute/network.h"

namespace bam {

struct TrainConfig {
  int epochs = 30;
  size_t batch_size = 256;
  double learning_rate = 1e-3;
  // Adam moments.
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_epsilon = 1e-8;
  uint64_t shuffle_seed = 0;
  double validation_fraction = 0.1;

  absl::Status Validate() const;
};

struct TrainResult {
  Mlp model;
  // Mean soft cross-entropy per epoch. validation_loss is empty when no
  // records were held out.
  std::vector<double> train_loss;
  std::vector<double> validation_loss;
  // Epoch whose parameters were returned (1-based; 0 means the untrained
  // initialization, only possible with zero epochs).
  int best_epoch = 0;
  size_t train_records = 0;
  size_t validation_records = 0;
};

// Mini-batch Adam on the mean soft cross-entropy. Records are first put in a
// canonical content order, so the result depends only on the multiset of
// records and the seeds, not on the order of the dataset. Returns the
// parameters from the epoch with the lowest validation loss (training loss
// when nothing is held out).
//
// Errors: empty dataset or shape mismatch -> InvalidArgument; non-finite loss
// -> Internal, naming the epoch.
absl::StatusOr<TrainResult> TrainSubstitute(const LabeledDataset& dataset,
                                            const NetSpec& net,
                                            const TrainConfig& config);

}  // namespace bam

#endif  // BAM_SUBSTITUTE_TRAINER_H_
