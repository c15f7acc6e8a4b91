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

// Boundary-seeking evolution strategy.
//
// Each generation P_t of N samples is labeled by the oracle and appended, in
// full, to the dataset. The k fittest samples are kept, and each is mutated
// with uniform noise scaled per feature by the spread of P_t to produce the
// N children of P_{t+1}. There is no crossover.
//
// In low-confidence (LC) mode fitness is -max_c p_c, so selection pulls the
// population onto the victim's decision boundaries; once two classes are
// balanced, mutations alternate the leading class and the population drifts
// along the boundary toward junctions with further classes. High-confidence
// (HC) mode flips the sign.

#ifndef BAM_SAMPLER_SAMPLER_H_
#define BAM_SAMPLER_SAMPLER_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "bam/core/random.h"
#include "bam/core/types.h"
#include "bam/oracle/oracle.h"
#include "json.hpp"

namespace bam {

enum class FitnessMode { kLowConfidence, kHighConfidence };

std::string_view FitnessModeName(FitnessMode mode);  // "LC" / "HC"
absl::StatusOr<FitnessMode> ParseFitnessMode(std::string_view name);

inline constexpr double kDefaultMutationScale = 0.1;
inline constexpr double kSpanFloor = 1e-8;
// Top-2 probability gap under which a sample counts as on a boundary.
inline constexpr double kBoundaryGap = 0.1;

struct GenerationStats {
  uint32_t generation = 0;
  // Over all of P_t.
  double mean_max_prob = 0.0;
  double min_max_prob = 0.0;
  double low_gap_fraction = 0.0;
  std::vector<size_t> argmax_histogram;
  size_t distinct_classes = 0;
  // Over the selected set S_t.
  double selected_mean_max_prob = 0.0;
  size_t selected_distinct_classes = 0;

  nlohmann::json ToJson() const;
};

struct SamplerConfig {
  size_t population_size = 1000;  // N
  size_t selection_size = 300;     // k
  size_t generations = 30;         // I
  double mutation_scale = kDefaultMutationScale;  // gamma
  FitnessMode fitness_mode = FitnessMode::kLowConfidence;
  Bounds init_bounds;  // Empty means [0,1]^d.
  bool clip_to_bounds = false;
  uint64_t seed = 0;
  // Concurrent oracle calls per generation. Results do not depend on it.
  size_t oracle_workers = 1;
  // Optional; returning true after a generation ends the run early.
  std::function<bool(const GenerationStats&)> early_stop;
  // If set, the dataset collected so far is written here when the oracle
  // fails mid-run.
  std::string partial_dataset_path;

  absl::Status Validate(size_t dim) const;
};

using SpanVector = std::vector<double>;

// -max(p) in LC mode, +max(p) in HC mode.
double Fitness(const SoftLabel& label, FitnessMode mode);

// Indices of the k fittest labels, fittest first; ties keep population order.
absl::StatusOr<std::vector<size_t>> SelectTopKIndices(
    std::span<const SoftLabel> labels, size_t k, FitnessMode mode);
absl::StatusOr<std::vector<Sample>> SelectTopK(
    const Population& population, std::span<const SoftLabel> labels, size_t k,
    FitnessMode mode);

// Per-feature max - min over the population, floored at kSpanFloor.
SpanVector FeatureSpans(const Population& population);

// x + gamma * z with z_i ~ U(-w_i, w_i). Clamped to clip when non-null.
Sample Mutate(const Sample& x, const SpanVector& spans, double gamma, Rng& rng,
              const Bounds* clip = nullptr);

// Children per parent when k parents fill N slots: floor(N/k) each, plus one
// for each of the first N mod k parents.
std::vector<size_t> ChildrenPerParent(size_t num_parents, size_t population);

// Mutated children of selected (fittest first), grouped by parent.
absl::StatusOr<Population> NextGeneration(std::span<const Sample> selected,
                                          size_t population_size,
                                          const SpanVector& spans,
                                          double gamma, Rng& rng,
                                          const Bounds* clip = nullptr);

// P_0: i.i.d. uniform over bounds.
Population InitialPopulation(size_t population_size, const Bounds& bounds,
                             Rng& rng);

GenerationStats ComputeGenerationStats(uint32_t generation,
                                       std::span<const SoftLabel> labels,
                                       std::span<const size_t> selected,
                                       size_t num_classes);

struct ExtractionResult {
  LabeledDataset dataset;
  std::vector<GenerationStats> stats;
  uint64_t queries = 0;
};

// Full extraction loop. Labels every generation (N * I oracle queries unless
// stopped early) and returns the accumulated dataset with one stats entry per
// generation. Deterministic given config.seed and a pure oracle.
absl::StatusOr<ExtractionResult> RunExtraction(Oracle& oracle,
                                               const SamplerConfig& config);

// One JSON object per line.
std::string StatsToJsonLines(std::span<const GenerationStats> stats);

}  // namespace bam

#endif  // BAM_SAMPLER_SAMPLER_H_
