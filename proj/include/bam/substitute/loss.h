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

#ifndef BAM_SUBSTITUTE_LOSS_H_
#define BAM_SUBSTITUTE_LOSS_H_

#include <span>

#include "Eigen/Dense"
#include "bam/core/types.h"

namespace bam {

// Probabilities are floored here before the log.
inline constexpr double kLogFloor = 1e-12;

// -sum_i target_i * log(max(pred_i, kLogFloor)). Both spans must have the
// same length.
double SoftCrossEntropy(std::span<const float> pred,
                        std::span<const float> target);
double SoftCrossEntropy(const SoftLabel& pred, const SoftLabel& target);

// Mean over columns; probs and targets are C x B.
double MeanSoftCrossEntropy(const Eigen::MatrixXd& probs,
                            const Eigen::MatrixXd& targets);

}  // namespace bam

#endif  // BAM_SUBSTITUTE_LOSS_H_
