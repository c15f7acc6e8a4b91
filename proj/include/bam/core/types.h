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

// Value types shared by every stage of the extraction pipeline: feature
// vectors, class-probability vectors, ES generations and the accumulated
// labeled dataset.

#ifndef BAM_CORE_TYPES_H_
#define BAM_CORE_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace bam {

// Tolerance on the sum of a probability vector.
inline constexpr double kProbabilitySumTolerance = 1e-5;

// A flat feature vector of dimension d. Features are stored at 32-bit
// precision, the same precision as the on-disk dataset format.
class Sample {
 public:
  Sample() = default;
  explicit Sample(std::vector<float> features)
      : features_(std::move(features)) {}

  size_t dim() const { return features_.size(); }
  float operator[](size_t i) const { return features_[i]; }
  float& operator[](size_t i) { return features_[i]; }

  std::span<const float> features() const { return features_; }
  std::span<float> mutable_features() { return features_; }

  bool operator==(const Sample&) const = default;

 private:
  std::vector<float> features_;
};

// A probability vector over C classes.
class SoftLabel {
 public:
  SoftLabel() = default;
  explicit SoftLabel(std::vector<float> probs) : probs_(std::move(probs)) {}

  size_t num_classes() const { return probs_.size(); }
  float operator[](size_t i) const { return probs_[i]; }
  std::span<const float> probs() const { return probs_; }

  // Requires a non-empty label. Ties go to the smallest index.
  int argmax() const;
  float max_prob() const;
  // Difference between the largest and second-largest probability. Zero for
  // single-class labels.
  float top2_gap() const;

  bool operator==(const SoftLabel&) const = default;

 private:
  std::vector<float> probs_;
};

// Numerically stable softmax. Accumulates in double and rounds once.
SoftLabel SoftmaxLabel(std::span<const double> logits);

// Hard-label view of a soft label; smallest index wins ties.
absl::StatusOr<int> ArgmaxClass(const SoftLabel& label);

absl::Status ValidateSample(const Sample& sample, size_t dim);
absl::Status ValidateSoftLabel(const SoftLabel& label, size_t num_classes);

// Per-feature box used to draw the initial population.
struct Bounds {
  std::vector<double> low;
  std::vector<double> high;

  static Bounds Uniform(size_t dim, double low, double high);
  size_t dim() const { return low.size(); }
  absl::Status Validate() const;
};

// One ES generation P_t.
struct Population {
  std::vector<Sample> samples;
  uint32_t generation = 0;

  size_t size() const { return samples.size(); }
};

// Samples with ground-truth class indices; used for victim training data and
// evaluation sets.
struct ExampleSet {
  std::vector<Sample> samples;
  std::vector<int> labels;

  size_t size() const { return samples.size(); }
};

// The attacker-built dataset D1: every labeled sample of every generation, in
// insertion order, with the generation that produced it.
class LabeledDataset {
 public:
  LabeledDataset(size_t dim, size_t num_classes)
      : dim_(dim), num_classes_(num_classes) {}

  absl::Status Add(Sample sample, SoftLabel label, uint32_t generation);
  absl::Status AddGeneration(const Population& population,
                             std::span<const SoftLabel> labels);

  size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  size_t dim() const { return dim_; }
  size_t num_classes() const { return num_classes_; }

  const Sample& sample(size_t i) const { return samples_[i]; }
  const SoftLabel& label(size_t i) const { return labels_[i]; }
  uint32_t generation(size_t i) const { return generations_[i]; }

  const std::vector<Sample>& samples() const { return samples_; }
  const std::vector<SoftLabel>& labels() const { return labels_; }
  const std::vector<uint32_t>& generations() const { return generations_; }

  bool operator==(const LabeledDataset&) const = default;

 private:
  size_t dim_;
  size_t num_classes_;
  std::vector<Sample> samples_;
  std::vector<SoftLabel> labels_;
  std::vector<uint32_t> generations_;
};

// Concatenation, a's records then b's.
absl::StatusOr<LabeledDataset> MergeDatasets(const LabeledDataset& a,
                                             const LabeledDataset& b);

}  // namespace bam

#endif  // BAM_CORE_TYPES_H_
