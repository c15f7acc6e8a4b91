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

#ifndef BAM_METRICS_METRICS_H_
#define BAM_METRICS_METRICS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "bam/core/types.h"
#include "json.hpp"

namespace bam {

// Fraction of predictions whose argmax equals the truth.
absl::StatusOr<double> Accuracy(std::span<const SoftLabel> predictions,
                                std::span<const int> truth);

// Fraction of points where two models' argmax classes match.
absl::StatusOr<double> Agreement(std::span<const SoftLabel> a,
                                 std::span<const SoftLabel> b);

// Mann-Whitney AUC of scores for positives vs negatives; ties count 1/2.
// InvalidArgument when either side is empty.
absl::StatusOr<double> BinaryAuc(std::span<const double> scores,
                                 std::span<const bool> positive);

struct AucReport {
  double macro = 0.0;
  // Indexed by class; NaN for skipped classes.
  std::vector<double> per_class;
  // Classes without both positives and negatives.
  std::vector<int> skipped;
};

// Unweighted mean of one-vs-rest AUCs over classes that have at least one
// positive and one negative. Skipped classes are logged and excluded.
absl::StatusOr<AucReport> MacroAuc(std::span<const SoftLabel> predictions,
                                   std::span<const int> truth);

// query_count / reference_size.
absl::StatusOr<double> QueryRatio(uint64_t query_count,
                                  uint64_t reference_size);

struct EvalReport {
  double accuracy = 0.0;
  double agreement = 0.0;
  double macro_auc = 0.0;
  std::vector<double> per_class_auc;
  uint64_t query_count = 0;
  double query_ratio = 0.0;

  nlohmann::json ToJson() const;
};

}  // namespace bam

#endif  // BAM_METRICS_METRICS_H_
