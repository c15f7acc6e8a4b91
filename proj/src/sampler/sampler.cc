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

#include "bam/sampler/sampler.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "bam/core/dataset_io.h"
#include "bam/core/status_macros.h"
#include "glog/logging.h"

namespace bam {
namespace {

// Labels a population, optionally fanning contiguous chunks out to worker
// threads. Chunk results are concatenated in order, so the output does not
// depend on the worker count.
absl::StatusOr<std::vector<SoftLabel>> LabelPopulation(
    Oracle& oracle, const Population& population, size_t workers) {
  const std::span<const Sample> all(population.samples);
  workers = std::clamp<size_t>(workers, 1, all.size());
  if (workers == 1) return oracle.PredictProba(all);

  const size_t chunk = (all.size() + workers - 1) / workers;
  std::vector<std::future<absl::StatusOr<std::vector<SoftLabel>>>> pending;
  for (size_t start = 0; start < all.size(); start += chunk) {
    const auto part = all.subspan(start, std::min(chunk, all.size() - start));
    pending.push_back(std::async(std::launch::async, [&oracle, part] {
      return oracle.PredictProba(part);
    }));
  }
  std::vector<SoftLabel> labels;
  labels.reserve(all.size());
  absl::Status first_error;
  for (auto& f : pending) {
    absl::StatusOr<std::vector<SoftLabel>> part = f.get();
    if (!part.ok()) {
      if (first_error.ok()) first_error = part.status();
      continue;
    }
    labels.insert(labels.end(), std::make_move_iterator(part->begin()),
                  std::make_move_iterator(part->end()));
  }
  if (!first_error.ok()) return first_error;
  return labels;
}

}  // namespace

std::string_view FitnessModeName(FitnessMode mode) {
  return mode == FitnessMode::kLowConfidence ? "LC" : "HC";
}

absl::StatusOr<FitnessMode> ParseFitnessMode(std::string_view name) {
  if (name == "LC" || name == "lc") return FitnessMode::kLowConfidence;
  if (name == "HC" || name == "hc") return FitnessMode::kHighConfidence;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown fitness mode \"", std::string(name), "\" (want LC or HC)"));
}

nlohmann::json GenerationStats::ToJson() const {
  return nlohmann::json{
      {"generation", generation},
      {"mean_max_prob", mean_max_prob},
      {"min_max_prob", min_max_prob},
      {"low_gap_fraction", low_gap_fraction},
      {"argmax_histogram", argmax_histogram},
      {"distinct_classes", distinct_classes},
      {"selected_mean_max_prob", selected_mean_max_prob},
      {"selected_distinct_classes", selected_distinct_classes},
  };
}

absl::Status SamplerConfig::Validate(size_t dim) const {
  if (population_size == 0) {
    return absl::InvalidArgumentError("population_size must be > 0");
  }
  if (selection_size == 0 || selection_size > population_size) {
    return absl::InvalidArgumentError(absl::StrCat(
        "selection_size must be in [1, population_size], got ",
        selection_size));
  }
  if (generations == 0) {
    return absl::InvalidArgumentError("generations must be >= 1");
  }
  if (!(mutation_scale > 0.0) || !std::isfinite(mutation_scale)) {
    return absl::InvalidArgumentError("mutation_scale must be > 0");
  }
  if (!init_bounds.low.empty() || !init_bounds.high.empty()) {
    RETURN_IF_ERROR(init_bounds.Validate());
    if (init_bounds.dim() != dim) {
      return absl::InvalidArgumentError(absl::StrCat(
          "init bounds have dimension ", init_bounds.dim(), ", oracle has ",
          dim));
    }
  }
  return absl::OkStatus();
}

double Fitness(const SoftLabel& label, FitnessMode mode) {
  const double top = label.max_prob();
  return mode == FitnessMode::kLowConfidence ? -top : top;
}

absl::StatusOr<std::vector<size_t>> SelectTopKIndices(
    std::span<const SoftLabel> labels, size_t k, FitnessMode mode) {
  if (k == 0 || k > labels.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cannot select ", k, " of ", labels.size(), " samples"));
  }
  std::vector<double> fitness(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    fitness[i] = Fitness(labels[i], mode);
  }
  std::vector<size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return fitness[a] > fitness[b];
  });
  order.resize(k);
  return order;
}

absl::StatusOr<std::vector<Sample>> SelectTopK(
    const Population& population, std::span<const SoftLabel> labels, size_t k,
    FitnessMode mode) {
  if (labels.size() != population.size()) {
    return absl::InvalidArgumentError("population and label counts differ");
  }
  ASSIGN_OR_RETURN(std::vector<size_t> idx, SelectTopKIndices(labels, k, mode));
  std::vector<Sample> out;
  out.reserve(k);
  for (size_t i : idx) out.push_back(population.samples[i]);
  return out;
}

SpanVector FeatureSpans(const Population& population) {
  if (population.samples.empty()) return {};
  const size_t dim = population.samples.front().dim();
  std::vector<double> low(dim, std::numeric_limits<double>::infinity());
  std::vector<double> high(dim, -std::numeric_limits<double>::infinity());
  for (const Sample& s : population.samples) {
    for (size_t i = 0; i < dim; ++i) {
      low[i] = std::min<double>(low[i], s[i]);
      high[i] = std::max<double>(high[i], s[i]);
    }
  }
  SpanVector spans(dim);
  for (size_t i = 0; i < dim; ++i) {
    spans[i] = std::max(high[i] - low[i], kSpanFloor);
  }
  return spans;
}

Sample Mutate(const Sample& x, const SpanVector& spans, double gamma, Rng& rng,
              const Bounds* clip) {
  std::vector<float> out(x.dim());
  for (size_t i = 0; i < x.dim(); ++i) {
    double v = x[i] + gamma * UniformReal(rng, -spans[i], spans[i]);
    if (clip != nullptr) v = std::clamp(v, clip->low[i], clip->high[i]);
    out[i] = static_cast<float>(v);
  }
  return Sample(std::move(out));
}

std::vector<size_t> ChildrenPerParent(size_t num_parents, size_t population) {
  std::vector<size_t> counts(num_parents, population / num_parents);
  for (size_t i = 0; i < population % num_parents; ++i) ++counts[i];
  return counts;
}

absl::StatusOr<Population> NextGeneration(std::span<const Sample> selected,
                                          size_t population_size,
                                          const SpanVector& spans,
                                          double gamma, Rng& rng,
                                          const Bounds* clip) {
  if (selected.empty()) {
    return absl::InvalidArgumentError("cannot breed from an empty selection");
  }
  if (selected.size() > population_size) {
    return absl::InvalidArgumentError("selection larger than the population");
  }
  Population next;
  next.samples.reserve(population_size);
  const std::vector<size_t> counts =
      ChildrenPerParent(selected.size(), population_size);
  for (size_t p = 0; p < selected.size(); ++p) {
    if (selected[p].dim() != spans.size()) {
      return absl::InvalidArgumentError("parent and span dimensions differ");
    }
    for (size_t c = 0; c < counts[p]; ++c) {
      next.samples.push_back(Mutate(selected[p], spans, gamma, rng, clip));
    }
  }
  return next;
}

Population InitialPopulation(size_t population_size, const Bounds& bounds,
                             Rng& rng) {
  Population pop;
  pop.samples.reserve(population_size);
  for (size_t n = 0; n < population_size; ++n) {
    std::vector<float> features(bounds.dim());
    for (size_t i = 0; i < bounds.dim(); ++i) {
      features[i] = bounds.low[i] == bounds.high[i]
                        ? static_cast<float>(bounds.low[i])
                        : static_cast<float>(UniformReal(
                              rng, bounds.low[i], bounds.high[i]));
    }
    pop.samples.emplace_back(std::move(features));
  }
  return pop;
}

GenerationStats ComputeGenerationStats(uint32_t generation,
                                       std::span<const SoftLabel> labels,
                                       std::span<const size_t> selected,
                                       size_t num_classes) {
  GenerationStats stats;
  stats.generation = generation;
  stats.argmax_histogram.assign(num_classes, 0);
  stats.min_max_prob = labels.empty() ? 0.0 : 1.0;
  size_t low_gap = 0;
  for (const SoftLabel& l : labels) {
    const double top = l.max_prob();
    stats.mean_max_prob += top;
    stats.min_max_prob = std::min(stats.min_max_prob, top);
    if (l.top2_gap() < kBoundaryGap) ++low_gap;
    ++stats.argmax_histogram[l.argmax()];
  }
  if (!labels.empty()) {
    stats.mean_max_prob /= static_cast<double>(labels.size());
    stats.low_gap_fraction =
        static_cast<double>(low_gap) / static_cast<double>(labels.size());
  }
  stats.distinct_classes = static_cast<size_t>(
      std::count_if(stats.argmax_histogram.begin(),
                    stats.argmax_histogram.end(),
                    [](size_t c) { return c > 0; }));

  std::vector<bool> seen(num_classes, false);
  for (size_t i : selected) {
    stats.selected_mean_max_prob += labels[i].max_prob();
    const int cls = labels[i].argmax();
    if (!seen[cls]) {
      seen[cls] = true;
      ++stats.selected_distinct_classes;
    }
  }
  if (!selected.empty()) {
    stats.selected_mean_max_prob /= static_cast<double>(selected.size());
  }
  return stats;
}

absl::StatusOr<ExtractionResult> RunExtraction(Oracle& oracle,
                                               const SamplerConfig& config) {
  const size_t dim = oracle.input_dim();
  RETURN_IF_ERROR(config.Validate(dim));
  const Bounds bounds = config.init_bounds.low.empty()
                            ? Bounds::Uniform(dim, 0.0, 1.0)
                            : config.init_bounds;
  const Bounds* clip = config.clip_to_bounds ? &bounds : nullptr;
  const uint64_t queries_before = oracle.query_count();

  ExtractionResult result{LabeledDataset(dim, oracle.num_classes()), {}, 0};
  Rng init_rng(DeriveSeed(config.seed, "initial-population"));
  Population population =
      InitialPopulation(config.population_size, bounds, init_rng);
  const uint64_t mutation_seed = DeriveSeed(config.seed, "mutation");

  for (size_t t = 0; t < config.generations; ++t) {
    population.generation = static_cast<uint32_t>(t);
    absl::StatusOr<std::vector<SoftLabel>> labels =
        LabelPopulation(oracle, population, config.oracle_workers);
    if (!labels.ok()) {
      std::string flushed;
      if (!config.partial_dataset_path.empty()) {
        absl::Status w =
            WriteDataset(config.partial_dataset_path, result.dataset);
        flushed = w.ok() ? absl::StrCat("; partial dataset (", result.dataset.size(),
                                        " records) written to ",
                                        config.partial_dataset_path)
                         : absl::StrCat("; partial dataset flush failed: ",
                                        w.message());
      }
      return absl::Status(
          labels.status().code(),
          absl::StrCat("oracle failed at generation ", t, ": ",
                       labels.status().message(), flushed));
    }
    RETURN_IF_ERROR(result.dataset.AddGeneration(population, *labels));

    ASSIGN_OR_RETURN(std::vector<size_t> selected,
                     SelectTopKIndices(*labels, config.selection_size,
                                       config.fitness_mode));
    result.stats.push_back(ComputeGenerationStats(
        population.generation, *labels, selected, oracle.num_classes()));
    VLOG(1) << "generation " << t
            << " mean_max_prob=" << result.stats.back().mean_max_prob;
    if (config.early_stop && config.early_stop(result.stats.back())) break;
    if (t + 1 == config.generations) break;

    const SpanVector spans = FeatureSpans(population);
    std::vector<Sample> parents;
    parents.reserve(selected.size());
    for (size_t i : selected) parents.push_back(population.samples[i]);
    Rng rng(DeriveSeed(mutation_seed, static_cast<uint64_t>(t)));
    ASSIGN_OR_RETURN(population,
                     NextGeneration(parents, config.population_size, spans,
                                    config.mutation_scale, rng, clip));
  }
  result.queries = oracle.query_count() - queries_before;
  return result;
}

std::string StatsToJsonLines(std::span<const GenerationStats> stats) {
  std::string out;
  for (const GenerationStats& s : stats) {
    out += s.ToJson().dump();
    out += '\n';
  }
  return out;
}

}  // namespace bam
