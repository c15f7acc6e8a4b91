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

#include "bam/substitute/loss.h"

#include <algorithm>
#include <cmath>

#include "glog/logging.h"

namespace bam {

double SoftCrossEntropy(std::span<const float> pred,
                        std::span<const float> target) {
  CHECK_EQ(pred.size(), target.size());
  double loss = 0.0;
  for (size_t i = 0; i < pred.size(); ++i) {
    if (target[i] == 0.0f) continue;
    loss -= static_cast<double>(target[i]) *
            std::log(std::max(static_cast<double>(pred[i]), kLogFloor));
  }
  return loss;
}

double SoftCrossEntropy(const SoftLabel& pred, const SoftLabel& target) {
  return SoftCrossEntropy(pred.probs(), target.probs());
}

double MeanSoftCrossEntropy(const Eigen::MatrixXd& probs,
                            const Eigen::MatrixXd& targets) {
  const Eigen::ArrayXXd logs = probs.array().max(kLogFloor).log();
  return -(targets.array() * logs).sum() / static_cast<double>(probs.cols());
}

}  // namespace bam
