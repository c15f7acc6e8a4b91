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

#include "bam/substitute/trainer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "bam/core/random.h"
#include "bam/core/status_macros.h"
#include "bam/substitute/loss.h"
#include "glog/logging.h"

namespace bam {
namespace {

// Adam moment estimates for every parameter tensor.
struct AdamState {
  std::vector<Eigen::MatrixXd> m_w, v_w;
  std::vector<Eigen::VectorXd> m_b, v_b;
  int step = 0;

  explicit AdamState(const Mlp& net) {
    for (size_t l = 0; l < net.num_layers(); ++l) {
      m_w.push_back(Eigen::MatrixXd::Zero(net.weights(l).rows(),
                                          net.weights(l).cols()));
      v_w.push_back(m_w.back());
      m_b.push_back(Eigen::VectorXd::Zero(net.biases(l).size()));
      v_b.push_back(m_b.back());
    }
  }
};

template <typename Param, typename Grad>
void AdamUpdate(const TrainConfig& cfg, double c1, double c2, const Grad& g,
                Param& m, Param& v, Param& p) {
  m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
  v = cfg.beta2 * v + (1.0 - cfg.beta2) * g.cwiseProduct(g);
  p.array() -= cfg.learning_rate * (m.array() / c1) /
               ((v.array() / c2).sqrt() + cfg.adam_epsilon);
}

void ApplyAdam(const TrainConfig& cfg, const Gradients& grads, AdamState& st,
               Mlp& net) {
  ++st.step;
  const double c1 = 1.0 - std::pow(cfg.beta1, st.step);
  const double c2 = 1.0 - std::pow(cfg.beta2, st.step);
  for (size_t l = 0; l < net.num_layers(); ++l) {
    AdamUpdate(cfg, c1, c2, grads.weights[l], st.m_w[l], st.v_w[l],
               net.mutable_weights(l));
    AdamUpdate(cfg, c1, c2, grads.biases[l], st.m_b[l], st.v_b[l],
               net.mutable_biases(l));
  }
}

// Records sorted by (features, probabilities), lexicographically.
std::vector<size_t> CanonicalOrder(const LabeledDataset& dataset) {
  std::vector<size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const auto fa = dataset.sample(a).features();
    const auto fb = dataset.sample(b).features();
    if (!std::equal(fa.begin(), fa.end(), fb.begin(), fb.end())) {
      return std::lexicographical_compare(fa.begin(), fa.end(), fb.begin(),
                                          fb.end());
    }
    const auto pa = dataset.label(a).probs();
    const auto pb = dataset.label(b).probs();
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(),
                                        pb.end());
  });
  return order;
}

void Gather(const Eigen::MatrixXf& source, std::span<const size_t> columns,
            Eigen::MatrixXd& out) {
  out.resize(source.rows(), static_cast<Eigen::Index>(columns.size()));
  for (size_t j = 0; j < columns.size(); ++j) {
    out.col(j) = source.col(columns[j]).cast<double>();
  }
}

double EvaluateLoss(const Mlp& net, const Eigen::MatrixXf& x,
                    const Eigen::MatrixXf& t, std::span<const size_t> rows) {
  constexpr size_t kChunk = 4096;
  double total = 0.0;
  Eigen::MatrixXd xb, tb;
  for (size_t start = 0; start < rows.size(); start += kChunk) {
    const auto chunk =
        rows.subspan(start, std::min(kChunk, rows.size() - start));
    Gather(x, chunk, xb);
    Gather(t, chunk, tb);
    total += MeanSoftCrossEntropy(net.Probabilities(xb), tb) *
             static_cast<double>(chunk.size());
  }
  return total / static_cast<double>(rows.size());
}

}  // namespace

absl::Status TrainConfig::Validate() const {
  if (epochs < 0) return absl::InvalidArgumentError("epochs must be >= 0");
  if (batch_size < 1) return absl::InvalidArgumentError("batch_size must be >= 1");
  if (!(learning_rate > 0.0)) {
    return absl::InvalidArgumentError("learning_rate must be > 0");
  }
  if (!(validation_fraction >= 0.0 && validation_fraction <= 0.5)) {
    return absl::InvalidArgumentError("validation_fraction must be in [0, 0.5]");
  }
  return absl::OkStatus();
}

absl::StatusOr<TrainResult> TrainSubstitute(const LabeledDataset& dataset,
                                            const NetSpec& net,
                                            const TrainConfig& config) {
  RETURN_IF_ERROR(config.Validate());
  RETURN_IF_ERROR(net.Validate());
  if (dataset.empty()) {
    return absl::InvalidArgumentError("cannot train on an empty dataset");
  }
  if (dataset.dim() != net.input_dim ||
      dataset.num_classes() != net.num_classes) {
    return absl::InvalidArgumentError(absl::StrCat(
        "dataset shape (d=", dataset.dim(), ", C=", dataset.num_classes(),
        ") does not match network (d=", net.input_dim,
        ", C=", net.num_classes, ")"));
  }

  const std::vector<size_t> canonical = CanonicalOrder(dataset);
  const size_t n = canonical.size();
  Eigen::MatrixXf x(dataset.dim(), n);
  Eigen::MatrixXf t(dataset.num_classes(), n);
  for (size_t j = 0; j < n; ++j) {
    const auto f = dataset.sample(canonical[j]).features();
    const auto p = dataset.label(canonical[j]).probs();
    for (size_t i = 0; i < f.size(); ++i) x(i, j) = f[i];
    for (size_t c = 0; c < p.size(); ++c) t(c, j) = p[c];
  }

  std::vector<size_t> rows(n);
  std::iota(rows.begin(), rows.end(), 0);
  Rng split_rng(DeriveSeed(config.shuffle_seed, "validation-split"));
  std::shuffle(rows.begin(), rows.end(), split_rng);
  size_t num_val = static_cast<size_t>(config.validation_fraction *
                                       static_cast<double>(n));
  if (num_val >= n) num_val = n - 1;
  std::vector<size_t> val_rows(rows.begin(), rows.begin() + num_val);
  std::vector<size_t> train_rows(rows.begin() + num_val, rows.end());
  std::sort(val_rows.begin(), val_rows.end());

  ASSIGN_OR_RETURN(Mlp model, Mlp::Create(net));
  TrainResult result{model, {}, {}, 0, train_rows.size(), val_rows.size()};
  double best_loss = std::numeric_limits<double>::infinity();
  AdamState adam(model);
  Eigen::MatrixXd xb, tb;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    Rng rng(DeriveSeed(config.shuffle_seed, static_cast<uint64_t>(epoch)));
    std::shuffle(train_rows.begin(), train_rows.end(), rng);
    double epoch_loss = 0.0;
    for (size_t start = 0; start < train_rows.size();
         start += config.batch_size) {
      const auto batch = std::span<const size_t>(train_rows).subspan(
          start, std::min(config.batch_size, train_rows.size() - start));
      Gather(x, batch, xb);
      Gather(t, batch, tb);
      const Gradients grads = model.Backward(xb, tb);
      if (!std::isfinite(grads.loss)) {
        return absl::InternalError(
            absl::StrCat("training diverged at epoch ", epoch));
      }
      epoch_loss += grads.loss * static_cast<double>(batch.size());
      ApplyAdam(config, grads, adam, model);
    }
    epoch_loss /= static_cast<double>(train_rows.size());
    if (!std::isfinite(epoch_loss) || !model.AllFinite()) {
      return absl::InternalError(
          absl::StrCat("training diverged at epoch ", epoch));
    }
    result.train_loss.push_back(epoch_loss);

    double selection_loss = epoch_loss;
    if (!val_rows.empty()) {
      selection_loss = EvaluateLoss(model, x, t, val_rows);
      if (!std::isfinite(selection_loss)) {
        return absl::InternalError(
            absl::StrCat("training diverged at epoch ", epoch));
      }
      result.validation_loss.push_back(selection_loss);
    }
    VLOG(1) << "epoch " << epoch << " train_loss=" << epoch_loss
            << " selection_loss=" << selection_loss;
    if (selection_loss < best_loss) {
      best_loss = selection_loss;
      result.model = model;
      result.best_epoch = epoch;
    }
  }
  return result;
}

}  // namespace bam
