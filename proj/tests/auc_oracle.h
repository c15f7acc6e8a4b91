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

// All-pairs concordance count for one-vs-rest AUC, and random instances to
// check against.

#ifndef BAM_TESTS_AUC_ORACLE_H_
#define BAM_TESTS_AUC_ORACLE_H_

#include <cmath>
#include <vector>

#include "bam/core/random.h"
#include "bam/core/types.h"

namespace bam::testing {

struct AucInstance {
  std::vector<SoftLabel> predictions;
  std::vector<int> truth;
};

// Mean over classes with both positives and negatives of
// (#pos > neg + 0.5 #ties) / (#pos * #neg), counted pair by pair.
inline double BruteForceMacroAuc(const std::vector<SoftLabel>& predictions,
                                 const std::vector<int>& truth) {
  const size_t classes = predictions.front().num_classes();
  double total = 0.0;
  int counted = 0;
  for (size_t c = 0; c < classes; ++c) {
    double concordant = 0.0;
    double pairs = 0.0;
    for (size_t i = 0; i < truth.size(); ++i) {
      if (truth[i] != static_cast<int>(c)) continue;
      for (size_t j = 0; j < truth.size(); ++j) {
        if (truth[j] == static_cast<int>(c)) continue;
        pairs += 1.0;
        const float a = predictions[i][c];
        const float b = predictions[j][c];
        concordant += a > b ? 1.0 : (a == b ? 0.5 : 0.0);
      }
    }
    if (pairs == 0.0) continue;
    total += concordant / pairs;
    ++counted;
  }
  return total / counted;
}

// n in [6, 50], 2 to 5 classes, scores quantized to tenths so ties occur.
// The first two records cover classes 0 and 1 so at least one class counts.
inline AucInstance RandomAucInstance(Rng& rng) {
  AucInstance inst;
  const size_t n = 6 + static_cast<size_t>(UniformReal(rng, 0, 45));
  const size_t classes = 2 + static_cast<size_t>(UniformReal(rng, 0, 4));
  for (size_t i = 0; i < n; ++i) {
    std::vector<float> p(classes);
    float sum = 0.0f;
    for (float& v : p) {
      v = std::round(static_cast<float>(UniformReal(rng, 0.05, 1.0)) * 10) / 10;
      sum += v;
    }
    for (float& v : p) v /= sum;
    inst.predictions.emplace_back(std::move(p));
    inst.truth.push_back(i < 2 ? static_cast<int>(i)
                               : static_cast<int>(UniformReal(rng, 0, classes)));
  }
  return inst;
}

}  // namespace bam::testing

#endif  // BAM_TESTS_AUC_ORACLE_H_
