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

#include "bam/oracle/analytic.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace bam {

LinearSoftmaxOracle::LinearSoftmaxOracle(Eigen::MatrixXd weights,
                                         Eigen::VectorXd bias)
    : Oracle(weights.cols(), weights.rows(), OracleBackend::kLinearSoftmax),
      weights_(std::move(weights)),
      bias_(std::move(bias)) {}

absl::StatusOr<std::unique_ptr<LinearSoftmaxOracle>>
LinearSoftmaxOracle::Create(Eigen::MatrixXd weights, Eigen::VectorXd bias) {
  if (weights.rows() < 2 || weights.cols() < 1) {
    return absl::InvalidArgumentError(
        "linear victim needs at least 2 classes and 1 feature");
  }
  if (bias.size() != weights.rows()) {
    return absl::InvalidArgumentError("bias length must equal class count");
  }
  if (!weights.allFinite() || !bias.allFinite()) {
    return absl::InvalidArgumentError("linear victim parameters not finite");
  }
  return std::unique_ptr<LinearSoftmaxOracle>(
      new LinearSoftmaxOracle(std::move(weights), std::move(bias)));
}

absl::StatusOr<std::vector<SoftLabel>> LinearSoftmaxOracle::Predict(
    std::span<const Sample> batch) {
  std::vector<SoftLabel> out;
  out.reserve(batch.size());
  Eigen::VectorXd x(input_dim());
  for (const Sample& s : batch) {
    for (size_t i = 0; i < s.dim(); ++i) x(i) = s[i];
    const Eigen::VectorXd logits = weights_ * x + bias_;
    out.push_back(
        SoftmaxLabel(std::span<const double>(logits.data(), logits.size())));
  }
  return out;
}

GaussianMixtureOracle::GaussianMixtureOracle(
    std::vector<GaussianComponent> components, std::vector<Factor> factors)
    : Oracle(components.front().mean.size(), components.size(),
             OracleBackend::kGaussianMixture),
      components_(std::move(components)),
      factors_(std::move(factors)) {}

absl::StatusOr<std::unique_ptr<GaussianMixtureOracle>>
GaussianMixtureOracle::Create(std::vector<GaussianComponent> components) {
  if (components.size() < 2) {
    return absl::InvalidArgumentError("mixture needs at least 2 components");
  }
  const Eigen::Index dim = components.front().mean.size();
  if (dim < 1) return absl::InvalidArgumentError("mixture dimension is zero");
  std::vector<Factor> factors;
  for (size_t c = 0; c < components.size(); ++c) {
    const GaussianComponent& comp = components[c];
    if (comp.mean.size() != dim || comp.covariance.rows() != dim ||
        comp.covariance.cols() != dim) {
      return absl::InvalidArgumentError(
          absl::StrCat("component ", c, " has inconsistent dimensions"));
    }
    if (!(comp.prior > 0.0) || !std::isfinite(comp.prior)) {
      return absl::InvalidArgumentError(
          absl::StrCat("component ", c, " prior must be positive"));
    }
    if (!comp.covariance.isApprox(comp.covariance.transpose())) {
      return absl::InvalidArgumentError(
          absl::StrCat("component ", c, " covariance is not symmetric"));
    }
    Eigen::LLT<Eigen::MatrixXd> llt(comp.covariance);
    if (llt.info() != Eigen::Success) {
      return absl::InvalidArgumentError(absl::StrCat(
          "component ", c, " covariance is not positive definite"));
    }
    Eigen::MatrixXd lower = llt.matrixL();
    const double log_det_l = lower.diagonal().array().log().sum();
    factors.push_back({std::move(lower), std::log(comp.prior) - log_det_l});
  }
  return std::unique_ptr<GaussianMixtureOracle>(
      new GaussianMixtureOracle(std::move(components), std::move(factors)));
}

absl::StatusOr<std::vector<SoftLabel>> GaussianMixtureOracle::Predict(
    std::span<const Sample> batch) {
  std::vector<SoftLabel> out;
  out.reserve(batch.size());
  Eigen::VectorXd x(input_dim());
  std::vector<double> log_joint(components_.size());
  for (const Sample& s : batch) {
    for (size_t i = 0; i < s.dim(); ++i) x(i) = s[i];
    for (size_t c = 0; c < components_.size(); ++c) {
      const Eigen::VectorXd whitened =
          factors_[c].lower.triangularView<Eigen::Lower>().solve(
              x - components_[c].mean);
      log_joint[c] = factors_[c].log_norm - 0.5 * whitened.squaredNorm();
    }
    out.push_back(SoftmaxLabel(log_joint));
  }
  return out;
}

ExampleSet GaussianMixtureOracle::SampleLabeled(size_t n, Rng& rng) const {
  std::vector<double> priors;
  for (const auto& comp : components_) priors.push_back(comp.prior);
  std::discrete_distribution<int> pick(priors.begin(), priors.end());
  std::normal_distribution<double> normal(0.0, 1.0);
  ExampleSet out;
  const size_t dim = input_dim();
  Eigen::VectorXd z(dim);
  for (size_t i = 0; i < n; ++i) {
    const int c = pick(rng);
    for (size_t j = 0; j < dim; ++j) z(j) = normal(rng);
    const Eigen::VectorXd x = components_[c].mean + factors_[c].lower * z;
    std::vector<float> features(dim);
    for (size_t j = 0; j < dim; ++j) features[j] = static_cast<float>(x(j));
    out.samples.emplace_back(std::move(features));
    out.labels.push_back(c);
  }
  return out;
}

}  // namespace bam
