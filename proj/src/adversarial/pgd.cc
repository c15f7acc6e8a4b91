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

#include "bam/adversarial/pgd.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "bam/core/status_macros.h"

namespace bam {
namespace {

double Sign(double v) { return (v > 0.0) - (v < 0.0); }

// Clamp range first, then the ball, so the budget holds even for centers
// outside the clamp range.
double ProjectCoordinate(double v, double center, double epsilon,
                         const std::optional<ClampRange>& clamp) {
  if (clamp) v = std::clamp(v, clamp->low, clamp->high);
  return std::clamp(v, center - epsilon, center + epsilon);
}

double MaxAbsDelta(const Sample& a, const Sample& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.dim(); ++i) {
    worst = std::max(worst, std::abs(static_cast<double>(a[i]) - b[i]));
  }
  return worst;
}

}  // namespace

absl::Status AttackConfig::Validate() const {
  if (!(epsilon > 0.0)) return absl::InvalidArgumentError("epsilon must be > 0");
  if (steps < 1) return absl::InvalidArgumentError("steps must be >= 1");
  if (!(EffectiveStepSize() > 0.0)) {
    return absl::InvalidArgumentError("step size must be > 0");
  }
  if (clamp && clamp->low > clamp->high) {
    return absl::InvalidArgumentError("clamp low exceeds high");
  }
  return absl::OkStatus();
}

Sample ProjectToBall(const Sample& x, const Sample& center, double epsilon,
                     const std::optional<ClampRange>& clamp) {
  std::vector<float> out(x.dim());
  for (size_t i = 0; i < x.dim(); ++i) {
    out[i] = static_cast<float>(
        ProjectCoordinate(x[i], center[i], epsilon, clamp));
  }
  return Sample(std::move(out));
}

AdversarialExample PgdAttack(const Mlp& model, const Sample& x, int label,
                             const AttackConfig& config, Rng& rng) {
  const size_t dim = x.dim();
  const double eps = config.epsilon;
  const double step = config.EffectiveStepSize();
  Eigen::VectorXd center(dim);
  for (size_t i = 0; i < dim; ++i) center(i) = x[i];

  Eigen::VectorXd cur = center;
  if (config.random_start) {
    for (size_t i = 0; i < dim; ++i) {
      cur(i) = ProjectCoordinate(center(i) + UniformReal(rng, -eps, eps),
                                 center(i), eps, config.clamp);
    }
  }
  for (int s = 0; s < config.steps; ++s) {
    const Eigen::VectorXd grad = model.InputGradient(cur, label);
    for (size_t i = 0; i < dim; ++i) {
      cur(i) = ProjectCoordinate(cur(i) + step * Sign(grad(i)), center(i), eps,
                                 config.clamp);
    }
  }

  AdversarialExample ex;
  ex.original = x;
  std::vector<float> perturbed(dim);
  for (size_t i = 0; i < dim; ++i) perturbed[i] = static_cast<float>(cur(i));
  ex.perturbed = Sample(std::move(perturbed));
  ex.delta.resize(dim);
  for (size_t i = 0; i < dim; ++i) ex.delta[i] = ex.perturbed[i] - x[i];
  ex.source_label = label;
  const Eigen::VectorXd logits = model.Logits(
      Eigen::Map<const Eigen::VectorXf>(ex.perturbed.features().data(), dim)
          .cast<double>());
  ex.substitute_prediction =
      SoftmaxLabel(std::span<const double>(logits.data(), logits.size()))
          .argmax();
  return ex;
}

nlohmann::json TransferReport::ToJson() const {
  return nlohmann::json{{"asr", asr},
                        {"asr_raw_flip", asr_raw_flip},
                        {"asr_whitebox", asr_whitebox},
                        {"asr_noise_baseline", asr_noise_baseline},
                        {"epsilon", epsilon},
                        {"steps", steps},
                        {"eligible_count", eligible_count}};
}

absl::StatusOr<TransferReport> EvaluateTransfer(const Mlp& substitute,
                                                Oracle& victim,
                                                const ExampleSet& test,
                                                const AttackConfig& config,
                                                uint64_t seed) {
  RETURN_IF_ERROR(config.Validate());
  if (test.size() == 0) {
    return absl::FailedPreconditionError("transfer test set is empty");
  }
  if (substitute.spec().input_dim != victim.input_dim()) {
    return absl::InvalidArgumentError(
        "substitute and victim input dimensions differ");
  }
  const uint64_t queries_before = victim.query_count();
  ASSIGN_OR_RETURN(std::vector<SoftLabel> clean,
                   victim.PredictProba(test.samples));

  std::vector<Sample> adversarial, noisy;
  std::vector<int> substitute_pred;
  adversarial.reserve(test.size());
  noisy.reserve(test.size());
  TransferReport report;
  const uint64_t noise_seed = DeriveSeed(seed, "noise-baseline");
  for (size_t i = 0; i < test.size(); ++i) {
    Rng rng(DeriveSeed(seed, static_cast<uint64_t>(i)));
    AdversarialExample ex =
        PgdAttack(substitute, test.samples[i], test.labels[i], config, rng);
    report.max_abs_delta =
        std::max(report.max_abs_delta, MaxAbsDelta(ex.perturbed, ex.original));
    substitute_pred.push_back(ex.substitute_prediction);
    adversarial.push_back(std::move(ex.perturbed));

    Rng noise_rng(DeriveSeed(noise_seed, static_cast<uint64_t>(i)));
    std::bernoulli_distribution coin(0.5);
    const Sample& x = test.samples[i];
    std::vector<float> corner(x.dim());
    for (size_t j = 0; j < x.dim(); ++j) {
      corner[j] = static_cast<float>(x[j] + (coin(noise_rng) ? 1.0 : -1.0) *
                                                config.epsilon);
    }
    noisy.push_back(ProjectToBall(Sample(std::move(corner)), x, config.epsilon,
                                  config.clamp));
    report.max_abs_delta =
        std::max(report.max_abs_delta, MaxAbsDelta(noisy.back(), x));
  }
  ASSIGN_OR_RETURN(std::vector<SoftLabel> adv_labels,
                   victim.PredictProba(adversarial));
  ASSIGN_OR_RETURN(std::vector<SoftLabel> noise_labels,
                   victim.PredictProba(noisy));

  size_t eligible = 0, flips = 0, raw_flips = 0, whitebox = 0, noise_flips = 0;
  for (size_t i = 0; i < test.size(); ++i) {
    const int clean_cls = clean[i].argmax();
    const bool flipped = adv_labels[i].argmax() != clean_cls;
    if (flipped) ++raw_flips;
    if (clean_cls != test.labels[i]) continue;
    ++eligible;
    if (flipped) ++flips;
    if (substitute_pred[i] != test.labels[i]) ++whitebox;
    if (noise_labels[i].argmax() != clean_cls) ++noise_flips;
  }
  if (eligible == 0) {
    return absl::FailedPreconditionError(
        "no test point is classified correctly by the victim");
  }
  const double denom = static_cast<double>(eligible);
  report.asr = flips / denom;
  report.asr_raw_flip =
      static_cast<double>(raw_flips) / static_cast<double>(test.size());
  report.asr_whitebox = whitebox / denom;
  report.asr_noise_baseline = noise_flips / denom;
  report.epsilon = config.epsilon;
  report.steps = config.steps;
  report.eligible_count = eligible;
  report.victim_queries = victim.query_count() - queries_before;
  return report;
}

}  // namespace bam
