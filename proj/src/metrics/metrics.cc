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

#include "bam/metrics/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "bam/core/status_macros.h"
#include "glog/logging.h"

namespace bam {

absl::StatusOr<double> Accuracy(std::span<const SoftLabel> predictions,
                                std::span<const int> truth) {
  if (predictions.size() != truth.size()) {
    return absl::InvalidArgumentError("prediction and truth counts differ");
  }
  if (predictions.empty()) {
    return absl::InvalidArgumentError("accuracy of an empty set");
  }
  size_t correct = 0;
  for (size_t i = 0; i < truth.size(); ++i) {
    if (predictions[i].argmax() == truth[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(truth.size());
}

absl::StatusOr<double> Agreement(std::span<const SoftLabel> a,
                                 std::span<const SoftLabel> b) {
  if (a.size() != b.size()) {
    return absl::InvalidArgumentError("agreement inputs differ in length");
  }
  if (a.empty()) return absl::InvalidArgumentError("agreement of an empty set");
  size_t same = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].argmax() == b[i].argmax()) ++same;
  }
  return static_cast<double>(same) / static_cast<double>(a.size());
}

absl::StatusOr<double> BinaryAuc(std::span<const double> scores,
                                 std::span<const bool> positive) {
  if (scores.size() != positive.size()) {
    return absl::InvalidArgumentError("score and label counts differ");
  }
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] < scores[b]; });

  // Sum of mid-ranks of the positives; tied groups share their average rank.
  double positive_rank_sum = 0.0;
  size_t num_pos = 0;
  for (size_t start = 0; start < order.size();) {
    size_t end = start;
    while (end < order.size() && scores[order[end]] == scores[order[start]]) {
      ++end;
    }
    const double mid_rank = 0.5 * static_cast<double>(start + 1 + end);
    for (size_t i = start; i < end; ++i) {
      if (positive[order[i]]) {
        positive_rank_sum += mid_rank;
        ++num_pos;
      }
    }
    start = end;
  }
  const size_t num_neg = scores.size() - num_pos;
  if (num_pos == 0 || num_neg == 0) {
    return absl::InvalidArgumentError("AUC needs positives and negatives");
  }
  const double np = static_cast<double>(num_pos);
  const double u = positive_rank_sum - np * (np + 1.0) / 2.0;
  return u / (np * static_cast<double>(num_neg));
}

absl::StatusOr<AucReport> MacroAuc(std::span<const SoftLabel> predictions,
                                   std::span<const int> truth) {
  if (predictions.size() != truth.size()) {
    return absl::InvalidArgumentError("prediction and truth counts differ");
  }
  if (predictions.empty()) return absl::InvalidArgumentError("empty input");
  const size_t num_classes = predictions.front().num_classes();
  AucReport report;
  report.per_class.assign(num_classes,
                          std::numeric_limits<double>::quiet_NaN());
  std::vector<double> scores(predictions.size());
  std::unique_ptr<bool[]> positive(new bool[truth.size()]);
  double total = 0.0;
  size_t counted = 0;
  for (size_t c = 0; c < num_classes; ++c) {
    size_t num_pos = 0;
    for (size_t i = 0; i < predictions.size(); ++i) {
      scores[i] = predictions[i][c];
      positive[i] = truth[i] == static_cast<int>(c);
      num_pos += positive[i];
    }
    if (num_pos == 0 || num_pos == truth.size()) {
      LOG(WARNING) << "class " << c
                   << " lacks positives or negatives; excluded from macro AUC";
      report.skipped.push_back(static_cast<int>(c));
      continue;
    }
    ASSIGN_OR_RETURN(report.per_class[c],
                     BinaryAuc(scores, std::span<const bool>(positive.get(),
                                                             truth.size())));
    total += report.per_class[c];
    ++counted;
  }
  if (counted == 0) {
    return absl::InvalidArgumentError("no class has both positives and negatives");
  }
  report.macro = total / static_cast<double>(counted);
  return report;
}

absl::StatusOr<double> QueryRatio(uint64_t query_count,
                                  uint64_t reference_size) {
  if (reference_size == 0) {
    return absl::InvalidArgumentError("reference dataset size must be > 0");
  }
  return static_cast<double>(query_count) /
         static_cast<double>(reference_size);
}

nlohmann::json EvalReport::ToJson() const {
  nlohmann::json per_class = nlohmann::json::array();
  for (double v : per_class_auc) {
    if (std::isnan(v)) {
      per_class.push_back(nullptr);
    } else {
      per_class.push_back(v);
    }
  }
  return nlohmann::json{{"accuracy", accuracy},
                        {"agreement", agreement},
                        {"macro_auc", macro_auc},
                        {"per_class_auc", per_class},
                        {"auc_averaging", "macro one-vs-rest"},
                        {"query_count", query_count},
                        {"query_ratio", query_ratio}};
}

}  // namespace bam
