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

// Untargeted L-infinity PGD on the substitute, and transfer of the resulting
// examples to the victim.

#ifndef BAM_ADVERSARIAL_PGD_H_
#define BAM_ADVERSARIAL_PGD_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "bam/core/random.h"
#include "bam/core/types.h"
#include "bam/oracle/oracle.h"
#include "bam/substitute/network.h"
#include "json.hpp"

namespace bam {

// Tolerance on the L-infinity budget of emitted examples.
inline constexpr double kBudgetTolerance = 1e-6;

struct ClampRange {
  double low = 0.0;
  double high = 1.0;
};

struct AttackConfig {
  double epsilon = 30.0 / 255.0;
  int steps = 10;
  // Defaults to 2 * epsilon / steps.
  std::optional<double> step_size;
  bool random_start = true;
  std::optional<ClampRange> clamp;

  double EffectiveStepSize() const {
    return step_size.value_or(2.0 * epsilon / steps);
  }
  absl::Status Validate() const;
};

struct AdversarialExample {
  Sample original;
  Sample perturbed;
  std::vector<float> delta;  // perturbed - original
  int source_label = 0;
  int substitute_prediction = 0;
};

// Projects x onto the box [center - eps, center + eps] intersected with the
// clamp range. Returns x unchanged when it is already feasible.
Sample ProjectToBall(const Sample& x, const Sample& center, double epsilon,
                     const std::optional<ClampRange>& clamp);

// x <- Proj(x + step * sign(grad_x CE(f'(x), y))) for cfg.steps iterations,
// from a uniform random point in the ball when cfg.random_start is set.
AdversarialExample PgdAttack(const Mlp& model, const Sample& x, int label,
                             const AttackConfig& config, Rng& rng);

struct TransferReport {
  // Victim flips among victim-correct clean points.
  double asr = 0.0;
  // Victim flips among all points.
  double asr_raw_flip = 0.0;
  // Substitute misclassifications of its own adversarial examples, among
  // victim-correct points.
  double asr_whitebox = 0.0;
  // Victim flips under random-sign perturbations of size epsilon, among
  // victim-correct points.
  double asr_noise_baseline = 0.0;
  double epsilon = 0.0;
  int steps = 0;
  size_t eligible_count = 0;
  // Largest |delta_i| over every emitted adversarial and noise example.
  double max_abs_delta = 0.0;
  uint64_t victim_queries = 0;

  nlohmann::json ToJson() const;
};

// Crafts an example on the substitute for every test point and scores it on
// the victim. test.labels are the ground truth; a point is eligible when the
// victim classifies its clean version correctly. Per-point seeds come from
// (seed, index). FailedPrecondition when no point is eligible.
absl::StatusOr<TransferReport> EvaluateTransfer(const Mlp& substitute,
                                                Oracle& victim,
                                                const ExampleSet& test,
                                                const AttackConfig& config,
                                                uint64_t seed);

}  // namespace bam

#endif  // BAM_ADVERSARIAL_PGD_H_
