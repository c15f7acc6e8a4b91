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

#include "bam/core/types.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "bam/core/status_macros.h"

namespace bam {

int SoftLabel::argmax() const {
  int best = 0;
  for (size_t i = 1; i < probs_.size(); ++i) {
    if (probs_[i] > probs_[best]) best = static_cast<int>(i);
  }
  return best;
}

float SoftLabel::max_prob() const { return probs_[argmax()]; }

float SoftLabel::top2_gap() const {
  if (probs_.size() < 2) return 0.0f;
  float first = -std::numeric_limits<float>::infinity();
  float second = first;
  for (float p : probs_) {
    if (p > first) {
      second = first;
      first = p;
    } else if (p > second) {
      second = p;
    }
  }
  return first - second;
}

SoftLabel SoftmaxLabel(std::span<const double> logits) {
  const double peak = *std::max_element(logits.begin(), logits.end());
  std::vector<double> exps(logits.size());
  double total = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    exps[i] = std::exp(logits[i] - peak);
    total += exps[i];
  }
  std::vector<float> probs(logits.size());
  for (size_t i = 0; i < logits.size(); ++i) {
    probs[i] = static_cast<float>(exps[i] / total);
  }
  return SoftLabel(std::move(probs));
}

absl::StatusOr<int> ArgmaxClass(const SoftLabel& label) {
  if (label.num_classes() == 0) {
    return absl::InvalidArgumentError("argmax of an empty label");
  }
  return label.argmax();
}

absl::Status ValidateSample(const Sample& sample, size_t dim) {
  if (sample.dim() != dim) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sample has dimension ", sample.dim(), ", expected ", dim));
  }
  for (float v : sample.features()) {
    if (!std::isfinite(v)) {
      return absl::InvalidArgumentError("sample has a non-finite feature");
    }
  }
  return absl::OkStatus();
}

absl::Status ValidateSoftLabel(const SoftLabel& label, size_t num_classes) {
  if (num_classes < 2 || label.num_classes() != num_classes) {
    return absl::InvalidArgumentError(absl::StrCat(
        "label has ", label.num_classes(), " classes, expected ", num_classes,
        " (at least 2)"));
  }
  double total = 0.0;
  for (float p : label.probs()) {
    if (!(p >= 0.0f && p <= 1.0f)) {
      return absl::InvalidArgumentError(
          absl::StrCat("probability out of [0, 1]: ", p));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kProbabilitySumTolerance) {
    return absl::InvalidArgumentError(
        absl::StrCat("probabilities sum to ", total));
  }
  return absl::OkStatus();
}

Bounds Bounds::Uniform(size_t dim, double low, double high) {
  return Bounds{std::vector<double>(dim, low), std::vector<double>(dim, high)};
}

absl::Status Bounds::Validate() const {
  if (low.size() != high.size()) {
    return absl::InvalidArgumentError("bounds low/high lengths differ");
  }
  if (low.empty()) return absl::InvalidArgumentError("bounds are empty");
  for (size_t i = 0; i < low.size(); ++i) {
    if (!std::isfinite(low[i]) || !std::isfinite(high[i]) ||
        low[i] > high[i]) {
      return absl::InvalidArgumentError(
          absl::StrCat("invalid bounds at feature ", i));
    }
  }
  return absl::OkStatus();
}

absl::Status LabeledDataset::Add(Sample sample, SoftLabel label,
                                 uint32_t generation) {
  if (sample.dim() != dim_) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sample dimension ", sample.dim(), " does not match dataset ", dim_));
  }
  if (label.num_classes() != num_classes_) {
    return absl::InvalidArgumentError(
        absl::StrCat("label class count ", label.num_classes(),
                     " does not match dataset ", num_classes_));
  }
  samples_.push_back(std::move(sample));
  labels_.push_back(std::move(label));
  generations_.push_back(generation);
  return absl::OkStatus();
}

absl::Status LabeledDataset::AddGeneration(const Population& population,
                                           std::span<const SoftLabel> labels) {
  if (labels.size() != population.size()) {
    return absl::InvalidArgumentError("population and label counts differ");
  }
  for (size_t i = 0; i < labels.size(); ++i) {
    RETURN_IF_ERROR(Add(population.samples[i], labels[i],
                        population.generation));
  }
  return absl::OkStatus();
}

absl::StatusOr<LabeledDataset> MergeDatasets(const LabeledDataset& a,
                                             const LabeledDataset& b) {
  if (a.dim() != b.dim() || a.num_classes() != b.num_classes()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cannot merge datasets of shape (d=", a.dim(), ", C=", a.num_classes(),
        ") and (d=", b.dim(), ", C=", b.num_classes(), ")"));
  }
  LabeledDataset merged = a;
  for (size_t i = 0; i < b.size(); ++i) {
    RETURN_IF_ERROR(merged.Add(b.sample(i), b.label(i), b.generation(i)));
  }
  return merged;
}

}  // namespace bam
