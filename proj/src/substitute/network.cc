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

#include "bam/substitute/network.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "bam/core/random.h"
#include "bam/core/status_macros.h"
#include "bam/substitute/loss.h"

namespace bam {

absl::Status NetSpec::Validate() const {
  if (input_dim == 0) return absl::InvalidArgumentError("input_dim must be > 0");
  if (num_classes < 2) {
    return absl::InvalidArgumentError("num_classes must be >= 2");
  }
  for (size_t w : hidden) {
    if (w == 0) return absl::InvalidArgumentError("hidden width must be > 0");
  }
  return absl::OkStatus();
}

double Gradients::Norm() const {
  double sq = 0.0;
  for (const auto& w : weights) sq += w.squaredNorm();
  for (const auto& b : biases) sq += b.squaredNorm();
  return std::sqrt(sq);
}

Mlp::Mlp(NetSpec spec) : spec_(std::move(spec)) {
  std::vector<size_t> widths;
  widths.push_back(spec_.input_dim);
  widths.insert(widths.end(), spec_.hidden.begin(), spec_.hidden.end());
  widths.push_back(spec_.num_classes);
  for (size_t l = 0; l + 1 < widths.size(); ++l) {
    weights_.push_back(Eigen::MatrixXd::Zero(widths[l + 1], widths[l]));
    biases_.push_back(Eigen::VectorXd::Zero(widths[l + 1]));
  }
}

absl::StatusOr<Mlp> Mlp::Zero(const NetSpec& spec) {
  RETURN_IF_ERROR(spec.Validate());
  return Mlp(spec);
}

absl::StatusOr<Mlp> Mlp::Create(const NetSpec& spec) {
  RETURN_IF_ERROR(spec.Validate());
  Mlp net(spec);
  Rng rng(DeriveSeed(spec.seed, "weight-init"));
  for (size_t l = 0; l < net.weights_.size(); ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(
                                   net.weights_[l].cols()));
    // Row-major fill order so the draw sequence does not depend on Eigen's
    // storage layout.
    for (Eigen::Index r = 0; r < net.weights_[l].rows(); ++r) {
      for (Eigen::Index c = 0; c < net.weights_[l].cols(); ++c) {
        net.weights_[l](r, c) = UniformReal(rng, -bound, bound);
      }
    }
    for (Eigen::Index r = 0; r < net.biases_[l].size(); ++r) {
      net.biases_[l](r) = UniformReal(rng, -bound, bound);
    }
  }
  return net;
}

size_t Mlp::num_parameters() const {
  size_t n = 0;
  for (size_t l = 0; l < weights_.size(); ++l) {
    n += weights_[l].size() + biases_[l].size();
  }
  return n;
}

bool Mlp::AllFinite() const {
  for (size_t l = 0; l < weights_.size(); ++l) {
    if (!weights_[l].allFinite() || !biases_[l].allFinite()) return false;
  }
  return true;
}

Eigen::MatrixXd Mlp::Logits(const Eigen::MatrixXd& inputs) const {
  Eigen::MatrixXd a = inputs;
  for (size_t l = 0; l < weights_.size(); ++l) {
    Eigen::MatrixXd z = weights_[l] * a;
    z.colwise() += biases_[l];
    if (l + 1 < weights_.size()) {
      a = z.cwiseMax(0.0);
    } else {
      a = std::move(z);
    }
  }
  return a;
}

Eigen::MatrixXd ColumnSoftmax(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd out(logits.rows(), logits.cols());
  for (Eigen::Index j = 0; j < logits.cols(); ++j) {
    const double peak = logits.col(j).maxCoeff();
    out.col(j) = (logits.col(j).array() - peak).exp();
    out.col(j) /= out.col(j).sum();
  }
  return out;
}

Eigen::MatrixXd Mlp::Probabilities(const Eigen::MatrixXd& inputs) const {
  return ColumnSoftmax(Logits(inputs));
}

absl::StatusOr<Eigen::MatrixXd> SamplesToMatrix(std::span<const Sample> batch,
                                                size_t dim) {
  Eigen::MatrixXd x(dim, batch.size());
  for (size_t j = 0; j < batch.size(); ++j) {
    if (batch[j].dim() != dim) {
      return absl::InvalidArgumentError(absl::StrCat(
          "sample ", j, " has dimension ", batch[j].dim(), ", expected ", dim));
    }
    for (size_t i = 0; i < dim; ++i) x(i, j) = batch[j][i];
  }
  return x;
}

absl::StatusOr<std::vector<SoftLabel>> Mlp::Forward(
    std::span<const Sample> batch) const {
  ASSIGN_OR_RETURN(Eigen::MatrixXd x, SamplesToMatrix(batch, spec_.input_dim));
  const Eigen::MatrixXd logits = Logits(x);
  std::vector<SoftLabel> out;
  out.reserve(batch.size());
  for (Eigen::Index j = 0; j < logits.cols(); ++j) {
    const Eigen::VectorXd col = logits.col(j);
    out.push_back(SoftmaxLabel(std::span<const double>(col.data(), col.size())));
  }
  return out;
}

Gradients Mlp::Backward(const Eigen::MatrixXd& inputs,
                        const Eigen::MatrixXd& targets) const {
  const size_t num_layers = weights_.size();
  const double batch = static_cast<double>(inputs.cols());

  // Forward pass, keeping every layer input and pre-activation.
  std::vector<Eigen::MatrixXd> layer_inputs(num_layers);
  std::vector<Eigen::MatrixXd> pre(num_layers);
  layer_inputs[0] = inputs;
  for (size_t l = 0; l < num_layers; ++l) {
    pre[l] = weights_[l] * layer_inputs[l];
    pre[l].colwise() += biases_[l];
    if (l + 1 < num_layers) layer_inputs[l + 1] = pre[l].cwiseMax(0.0);
  }
  const Eigen::MatrixXd probs = ColumnSoftmax(pre.back());

  Gradients grads;
  grads.weights.resize(num_layers);
  grads.biases.resize(num_layers);
  grads.loss = MeanSoftCrossEntropy(probs, targets);

  // d(-sum_i t_i log p_i)/dz = p * sum(t) - t.
  Eigen::MatrixXd delta =
      probs.array().rowwise() * targets.colwise().sum().array();
  delta -= targets;
  delta /= batch;
  for (size_t l = num_layers; l-- > 0;) {
    grads.weights[l] = delta * layer_inputs[l].transpose();
    grads.biases[l] = delta.rowwise().sum();
    if (l > 0) {
      delta = (weights_[l].transpose() * delta).array() *
              (pre[l - 1].array() > 0.0).cast<double>();
    }
  }
  return grads;
}

absl::StatusOr<Gradients> Mlp::Backward(
    std::span<const Sample> batch, std::span<const SoftLabel> targets) const {
  if (batch.size() != targets.size()) {
    return absl::InvalidArgumentError("batch and target counts differ");
  }
  if (batch.empty()) return absl::InvalidArgumentError("empty batch");
  ASSIGN_OR_RETURN(Eigen::MatrixXd x, SamplesToMatrix(batch, spec_.input_dim));
  Eigen::MatrixXd t(spec_.num_classes, targets.size());
  for (size_t j = 0; j < targets.size(); ++j) {
    if (targets[j].num_classes() != spec_.num_classes) {
      return absl::InvalidArgumentError(
          absl::StrCat("target ", j, " has wrong class count"));
    }
    for (size_t c = 0; c < spec_.num_classes; ++c) t(c, j) = targets[j][c];
  }
  return Backward(x, t);
}

Eigen::VectorXd Mlp::InputGradient(const Eigen::VectorXd& input,
                                   int label) const {
  const size_t num_layers = weights_.size();
  std::vector<Eigen::VectorXd> layer_inputs(num_layers);
  std::vector<Eigen::VectorXd> pre(num_layers);
  layer_inputs[0] = input;
  for (size_t l = 0; l < num_layers; ++l) {
    pre[l] = weights_[l] * layer_inputs[l] + biases_[l];
    if (l + 1 < num_layers) layer_inputs[l + 1] = pre[l].cwiseMax(0.0);
  }
  Eigen::VectorXd delta = ColumnSoftmax(pre.back());
  delta(label) -= 1.0;
  for (size_t l = num_layers; l-- > 0;) {
    delta = weights_[l].transpose() * delta;
    if (l > 0) {
      delta = delta.array() * (pre[l - 1].array() > 0.0).cast<double>();
    }
  }
  return delta;
}

}  // namespace bam
