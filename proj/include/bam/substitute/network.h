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

// A fully-connected ReLU network with a softmax head, with explicit forward
// and backward passes. It backs both the attacker's substitute model and the
// in-repo trained victims.
//
// Activations are laid out column-per-sample: a batch of B inputs of
// dimension d is a d x B matrix.

#ifndef BAM_SUBSTITUTE_NETWORK_H_
#define BAM_SUBSTITUTE_NETWORK_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "bam/core/types.h"

namespace bam {

enum class Activation { kRelu };
enum class WeightInit { kUniformFanIn };

struct NetSpec {
  size_t input_dim = 0;
  std::vector<size_t> hidden;
  size_t num_classes = 0;
  Activation activation = Activation::kRelu;
  WeightInit init = WeightInit::kUniformFanIn;
  uint64_t seed = 0;

  absl::Status Validate() const;
  size_t num_layers() const { return hidden.size() + 1; }
  bool operator==(const NetSpec&) const = default;
};

// Gradient of a scalar loss with the same shapes as the network parameters.
struct Gradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  double loss = 0.0;

  double Norm() const;
};

class Mlp {
 public:
  // Weights and biases drawn from U(-1/sqrt(fan_in), 1/sqrt(fan_in)) using
  // spec.seed.
  static absl::StatusOr<Mlp> Create(const NetSpec& spec);
  // All parameters zero; outputs the uniform distribution.
  static absl::StatusOr<Mlp> Zero(const NetSpec& spec);

  const NetSpec& spec() const { return spec_; }
  size_t num_layers() const { return weights_.size(); }
  size_t num_parameters() const;

  // Layer l maps width(l) -> width(l+1); weights(l) is out x in.
  const Eigen::MatrixXd& weights(size_t layer) const { return weights_[layer]; }
  const Eigen::VectorXd& biases(size_t layer) const { return biases_[layer]; }
  Eigen::MatrixXd& mutable_weights(size_t layer) { return weights_[layer]; }
  Eigen::VectorXd& mutable_biases(size_t layer) { return biases_[layer]; }

  bool AllFinite() const;

  // inputs: input_dim x B. Returns num_classes x B logits.
  Eigen::MatrixXd Logits(const Eigen::MatrixXd& inputs) const;
  // Column-wise softmax of Logits().
  Eigen::MatrixXd Probabilities(const Eigen::MatrixXd& inputs) const;

  absl::StatusOr<std::vector<SoftLabel>> Forward(
      std::span<const Sample> batch) const;

  // Gradients of the mean soft cross-entropy over the batch. targets is
  // num_classes x B.
  Gradients Backward(const Eigen::MatrixXd& inputs,
                     const Eigen::MatrixXd& targets) const;
  absl::StatusOr<Gradients> Backward(std::span<const Sample> batch,
                                     std::span<const SoftLabel> targets) const;

  // Gradient of the cross-entropy against a one-hot label with respect to the
  // input features.
  Eigen::VectorXd InputGradient(const Eigen::VectorXd& input, int label) const;

 private:
  explicit Mlp(NetSpec spec);

  NetSpec spec_;
  std::vector<Eigen::MatrixXd> weights_;
  std::vector<Eigen::VectorXd> biases_;
};

// Packs samples into an input_dim x B matrix.
absl::StatusOr<Eigen::MatrixXd> SamplesToMatrix(std::span<const Sample> batch,
                                                size_t dim);
// Column-wise stable softmax.
Eigen::MatrixXd ColumnSoftmax(const Eigen::MatrixXd& logits);

}  // namespace bam

#endif  // BAM_SUBSTITUTE_NETWORK_H_
