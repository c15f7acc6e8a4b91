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

// Closed-form victims. Both are pure functions of the input.

#ifndef BAM_ORACLE_ANALYTIC_H_
#define BAM_ORACLE_ANALYTIC_H_

#include <memory>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "bam/core/random.h"
#include "bam/oracle/oracle.h"

namespace bam {

// p(c | x) = softmax(W x + b)_c. W is C x d.
class LinearSoftmaxOracle final : public Oracle {
 public:
  static absl::StatusOr<std::unique_ptr<LinearSoftmaxOracle>> Create(
      Eigen::MatrixXd weights, Eigen::VectorXd bias);

  const Eigen::MatrixXd& weights() const { return weights_; }
  const Eigen::VectorXd& bias() const { return bias_; }

 protected:
  absl::StatusOr<std::vector<SoftLabel>> Predict(
      std::span<const Sample> batch) override;

 private:
  LinearSoftmaxOracle(Eigen::MatrixXd weights, Eigen::VectorXd bias);

  Eigen::MatrixXd weights_;
  Eigen::VectorXd bias_;
};

struct GaussianComponent {
  double prior = 1.0;
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

// Bayes posterior of a Gaussian mixture:
//   p(c | x) proportional to prior_c * N(x; mean_c, covariance_c).
class GaussianMixtureOracle final : public Oracle {
 public:
  // Priors need not be normalized; covariances must be symmetric positive
  // definite.
  static absl::StatusOr<std::unique_ptr<GaussianMixtureOracle>> Create(
      std::vector<GaussianComponent> components);

  const std::vector<GaussianComponent>& components() const {
    return components_;
  }

  // Draws n points from the mixture; labels are the generating component.
  ExampleSet SampleLabeled(size_t n, Rng& rng) const;

 protected:
  absl::StatusOr<std::vector<SoftLabel>> Predict(
      std::span<const Sample> batch) override;

 private:
  struct Factor {
    Eigen::MatrixXd lower;  // Cholesky factor L, covariance = L L^T.
    double log_norm;        // log prior - log det(L) (shared 2pi dropped).
  };

  explicit GaussianMixtureOracle(std::vector<GaussianComponent> components,
                                 std::vector<Factor> factors);

  std::vector<GaussianComponent> components_;
  std::vector<Factor> factors_;
};

}  // namespace bam

#endif  // BAM_ORACLE_ANALYTIC_H_
