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
#include <filesystem>
#include <numeric>
#include <set>

#include "bam/core/dataset_io.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace bam {
namespace {

using ::testing::ElementsAre;
using ::testing::Each;
using ::testing::AllOf;
using ::testing::Ge;
using ::testing::Le;

std::vector<SoftLabel> Labels(std::initializer_list<std::vector<float>> rows) {
  std::vector<SoftLabel> out;
  for (const auto& r : rows) out.emplace_back(r);
  return out;
}

Population PopulationOf(std::initializer_list<std::vector<float>> rows) {
  Population p;
  for (const auto& r : rows) p.samples.emplace_back(r);
  return p;
}

SamplerConfig LinearConfig(FitnessMode mode, uint64_t seed = 3) {
  SamplerConfig c;
  c.population_size = 1000;
  c.selection_size = 300;
  c.generations = 30;
  c.fitness_mode = mode;
  c.seed = seed;
  return c;
}

// Passes through to a wrapped oracle until `fail_after` calls have been made.
class FlakyOracle final : public Oracle {
 public:
  FlakyOracle(Oracle& inner, int fail_after)
      : Oracle(inner.input_dim(), inner.num_classes(), inner.backend()),
        inner_(inner),
        fail_after_(fail_after) {}

 protected:
  absl::StatusOr<std::vector<SoftLabel>> Predict(
      std::span<const Sample> batch) override {
    if (calls_++ >= fail_after_) return absl::UnavailableError("victim down");
    return inner_.PredictProba(batch);
  }

 private:
  Oracle& inner_;
  int fail_after_;
  int calls_ = 0;
};

TEST(FitnessTest, HighAndLowConfidenceAreNegations) {
  const SoftLabel l(std::vector<float>{0.7f, 0.2f, 0.1f});
  EXPECT_FLOAT_EQ(Fitness(l, FitnessMode::kLowConfidence), -0.7f);
  EXPECT_FLOAT_EQ(Fitness(l, FitnessMode::kHighConfidence), 0.7f);
}

TEST(FitnessTest, ModeNamesRoundTrip) {
  for (FitnessMode m : {FitnessMode::kLowConfidence, FitnessMode::kHighConfidence}) {
    ASSERT_OK_AND_ASSIGN(FitnessMode back, ParseFitnessMode(FitnessModeName(m)));
    EXPECT_EQ(back, m);
  }
  EXPECT_EQ(ParseFitnessMode("mid").status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(SelectTopKTest, LowConfidencePicksLeastConfident) {
  const auto labels = Labels({{0.9f, 0.1f}, {0.6f, 0.4f}, {0.5f, 0.5f}});
  ASSERT_OK_AND_ASSIGN(auto idx,
                       SelectTopKIndices(labels, 1, FitnessMode::kLowConfidence));
  EXPECT_THAT(idx, ElementsAre(2));
}

TEST(SelectTopKTest, HighConfidencePicksMostConfident) {
  const auto labels = Labels({{0.9f, 0.1f}, {0.6f, 0.4f}, {0.5f, 0.5f}});
  ASSERT_OK_AND_ASSIGN(auto idx,
                       SelectTopKIndices(labels, 1, FitnessMode::kHighConfidence));
  EXPECT_THAT(idx, ElementsAre(0));
}

TEST(SelectTopKTest, FullSelectionIsSortedPermutation) {
  const auto labels =
      Labels({{0.6f, 0.4f}, {0.9f, 0.1f}, {0.5f, 0.5f}, {0.7f, 0.3f}});
  ASSERT_OK_AND_ASSIGN(auto idx,
                       SelectTopKIndices(labels, 4, FitnessMode::kLowConfidence));
  EXPECT_THAT(idx, ElementsAre(2, 0, 3, 1));
}

TEST(SelectTopKTest, TiesKeepPopulationOrder) {
  const auto labels = Labels({{0.6f, 0.4f}, {0.4f, 0.6f}, {0.6f, 0.4f}});
  ASSERT_OK_AND_ASSIGN(auto idx,
                       SelectTopKIndices(labels, 3, FitnessMode::kHighConfidence));
  EXPECT_THAT(idx, ElementsAre(0, 1, 2));
}

TEST(SelectTopKTest, RejectsBadK) {
  const auto labels = Labels({{0.9f, 0.1f}, {0.6f, 0.4f}});
  EXPECT_EQ(SelectTopKIndices(labels, 3, FitnessMode::kLowConfidence)
                .status()
                .code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(SelectTopKIndices(labels, 0, FitnessMode::kLowConfidence)
                .status()
                .code(),
            absl::StatusCode::kInvalidArgument);
  const Population pop = PopulationOf({{0.0f}});
  EXPECT_EQ(SelectTopK(pop, labels, 1, FitnessMode::kLowConfidence)
                .status()
                .code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(FeatureSpansTest, MaxMinusMin) {
  const Population p = PopulationOf({{0.0f, 1.5f}, {2.0f, 1.5f}, {4.0f, 1.5f}});
  const SpanVector spans = FeatureSpans(p);
  EXPECT_DOUBLE_EQ(spans[0], 4.0);
  EXPECT_DOUBLE_EQ(spans[1], kSpanFloor);
}

TEST(FeatureSpansTest, UniformPopulationSpansNearOne) {
  Rng rng(5);
  const Population p = InitialPopulation(10000, Bounds::Uniform(4, 0.0, 1.0), rng);
  // Expected range of N uniforms is 1 - 2/(N+1).
  EXPECT_THAT(FeatureSpans(p), Each(AllOf(Ge(0.99), Le(1.0))));
}

TEST(MutateTest, ZeroScaleIsIdentity) {
  Rng rng(1);
  const Sample x(std::vector<float>{0.3f, -2.0f});
  EXPECT_EQ(Mutate(x, {1.0, 1.0}, 0.0, rng), x);
}

TEST(MutateTest, DisplacementBoundedByScaledSpan) {
  Rng rng(2);
  const Sample x(std::vector<float>{0.5f, 0.5f});
  const SpanVector spans{1.0, 0.25};
  for (int i = 0; i < 5000; ++i) {
    const Sample y = Mutate(x, spans, 0.1, rng);
    for (size_t d = 0; d < 2; ++d) {
      EXPECT_LE(std::abs(y[d] - x[d]), 0.1 * spans[d] + 1e-6);
    }
  }
}

TEST(MutateTest, DisplacementMomentsMatchUniform) {
  Rng rng(3);
  const double gamma = 0.1;
  const Sample x(std::vector<float>{0.0f});
  std::vector<double> disp;
  for (int i = 0; i < 10000; ++i) disp.push_back(Mutate(x, {1.0}, gamma, rng)[0]);
  const double mean = std::accumulate(disp.begin(), disp.end(), 0.0) / disp.size();
  double var = 0.0;
  for (double v : disp) var += (v - mean) * (v - mean);
  var /= disp.size() - 1;
  EXPECT_LT(std::abs(mean), 0.005);
  EXPECT_NEAR(var, gamma * gamma / 3.0, 0.1 * gamma * gamma / 3.0);
}

TEST(MutateTest, ClipKeepsInsideBounds) {
  Rng rng(4);
  const Bounds b = Bounds::Uniform(1, 0.0, 1.0);
  const Sample x(std::vector<float>{0.99f});
  for (int i = 0; i < 1000; ++i) {
    const float v = Mutate(x, {1.0}, 0.5, rng, &b)[0];
    EXPECT_GE(v, 0.0f);
    EXPECT_LE(v, 1.0f);
  }
}

TEST(ChildrenPerParentTest, RemainderGoesToFittest) {
  EXPECT_THAT(ChildrenPerParent(2, 4), ElementsAre(2, 2));
  EXPECT_THAT(ChildrenPerParent(3, 10), ElementsAre(4, 3, 3));
  const std::vector<size_t> large = ChildrenPerParent(6000, 20000);
  EXPECT_EQ(std::count(large.begin(), large.end(), 4u), 2000);
  EXPECT_EQ(std::count(large.begin(), large.end(), 3u), 4000);
  EXPECT_TRUE(std::is_sorted(large.rbegin(), large.rend()));
  EXPECT_EQ(std::accumulate(large.begin(), large.end(), size_t{0}), 20000u);
}

TEST(NextGenerationTest, ChildrenFollowParentsInOrder) {
  Rng rng(6);
  const std::vector<Sample> parents{Sample(std::vector<float>{0.0f}),
                                    Sample(std::vector<float>{10.0f}),
                                    Sample(std::vector<float>{20.0f})};
  ASSERT_OK_AND_ASSIGN(Population next,
                       NextGeneration(parents, 10, {1.0}, 0.1, rng));
  ASSERT_EQ(next.size(), 10u);
  const std::vector<float> expected_parent{0, 0, 0, 0, 10, 10, 10, 20, 20, 20};
  for (size_t i = 0; i < 10; ++i) {
    EXPECT_NEAR(next.samples[i][0], expected_parent[i], 0.1 + 1e-6);
  }
}

TEST(NextGenerationTest, RejectsEmptyOrOversizedSelection) {
  Rng rng(7);
  EXPECT_EQ(NextGeneration({}, 4, {1.0}, 0.1, rng).status().code(),
            absl::StatusCode::kInvalidArgument);
  const std::vector<Sample> parents(3, Sample(std::vector<float>{0.0f}));
  EXPECT_EQ(NextGeneration(parents, 2, {1.0}, 0.1, rng).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(InitialPopulationTest, DrawsInsideBounds) {
  Rng rng(8);
  Bounds b;
  b.low = {-1.0, 5.0};
  b.high = {1.0, 5.0};
  const Population p = InitialPopulation(500, b, rng);
  ASSERT_EQ(p.size(), 500u);
  for (const Sample& s : p.samples) {
    EXPECT_GE(s[0], -1.0f);
    EXPECT_LE(s[0], 1.0f);
    EXPECT_EQ(s[1], 5.0f);
  }
}

TEST(SamplerConfigTest, Validation) {
  SamplerConfig c;
  EXPECT_OK(c.Validate(2));
  c.selection_size = c.population_size + 1;
  EXPECT_EQ(c.Validate(2).code(), absl::StatusCode::kInvalidArgument);
  c = SamplerConfig();
  c.generations = 0;
  EXPECT_EQ(c.Validate(2).code(), absl::StatusCode::kInvalidArgument);
  c = SamplerConfig();
  c.init_bounds = Bounds::Uniform(3, 0, 1);
  EXPECT_EQ(c.Validate(2).code(), absl::StatusCode::kInvalidArgument);
}

TEST(RunExtractionTest, AccountingIdentity) {
  auto victim = testing::ThreeClassVictim();
  SamplerConfig c;
  c.population_size = 100;
  c.selection_size = 30;
  c.generations = 5;
  ASSERT_OK_AND_ASSIGN(ExtractionResult r, RunExtraction(*victim, c));
  EXPECT_EQ(r.dataset.size(), 500u);
  EXPECT_EQ(r.queries, 500u);
  EXPECT_EQ(victim->query_count(), 500u);
  EXPECT_EQ(r.stats.size(), 5u);
  for (uint32_t g = 0; g < 5; ++g) {
    EXPECT_EQ(std::count(r.dataset.generations().begin(),
                         r.dataset.generations().end(), g),
              100);
  }
}

TEST(RunExtractionTest, InitialPopulationIsUniformOverBounds) {
  auto victim = testing::ThreeClassVictim();
  SamplerConfig c;
  c.population_size = 4000;
  c.selection_size = 10;
  c.generations = 1;
  ASSERT_OK_AND_ASSIGN(ExtractionResult r, RunExtraction(*victim, c));
  double mean = 0.0;
  for (const Sample& s : r.dataset.samples()) {
    EXPECT_GE(s[0], 0.0f);
    EXPECT_LE(s[0], 1.0f);
    mean += s[0];
  }
  EXPECT_NEAR(mean / 4000.0, 0.5, 0.02);
}

// Checks the reported max-probabilities against an independent margin
// computation for the linear victim: p = sigmoid(40 |x0 - 0.5|).
void ExpectLinearMarginConsistency(const LabeledDataset& d) {
  for (size_t i = 0; i < d.size(); i += 97) {
    const double margin = 40.0 * std::abs(d.sample(i)[0] - 0.5);
    EXPECT_NEAR(d.label(i).max_prob(), 1.0 / (1.0 + std::exp(-margin)), 1e-5);
  }
}

TEST(RunExtractionTest, LowConfidenceConvergesToLinearBoundary) {
  auto victim = testing::TwoClassLinearVictim();
  ASSERT_OK_AND_ASSIGN(ExtractionResult r,
                       RunExtraction(*victim, LinearConfig(FitnessMode::kLowConfidence)));
  ASSERT_EQ(r.stats.size(), 30u);
  EXPECT_GT(r.stats.front().mean_max_prob, 0.9);
  EXPECT_LT(r.stats.back().mean_max_prob, 0.55);
  ExpectLinearMarginConsistency(r.dataset);
  // Final generation sits within a logit margin of log(0.55/0.45) on average.
  double dist = 0.0;
  size_t n = 0;
  for (size_t i = 0; i < r.dataset.size(); ++i) {
    if (r.dataset.generation(i) != 29) continue;
    dist += std::abs(r.dataset.sample(i)[0] - 0.5);
    ++n;
  }
  EXPECT_LT(40.0 * dist / n, std::log(0.55 / 0.45) * 2.0);
}

TEST(RunExtractionTest, HighConfidenceMovesAwayFromBoundary) {
  auto victim = testing::TwoClassLinearVictim();
  ASSERT_OK_AND_ASSIGN(ExtractionResult r,
                       RunExtraction(*victim, LinearConfig(FitnessMode::kHighConfidence)));
  EXPECT_GT(r.stats.back().mean_max_prob, 0.99);
  ExpectLinearMarginConsistency(r.dataset);
}

TEST(RunExtractionTest, SelectedConfidenceDecreasesUnderLowConfidence) {
  auto victim = testing::TwoClassLinearVictim();
  for (uint64_t seed : {1, 2, 3}) {
    ASSERT_OK_AND_ASSIGN(
        ExtractionResult r,
        RunExtraction(*victim, LinearConfig(FitnessMode::kLowConfidence, seed)));
    for (size_t t = 1; t < r.stats.size(); ++t) {
      EXPECT_LE(r.stats[t].selected_mean_max_prob,
                r.stats[t - 1].selected_mean_max_prob + 0.01)
          << "seed " << seed << " generation " << t;
    }
    EXPECT_GE(r.stats.front().selected_mean_max_prob -
                  r.stats.back().selected_mean_max_prob,
              0.2);
    double early = 0.0, late = 0.0;
    for (size_t t = 0; t < 10; ++t) early += r.stats[t].selected_mean_max_prob;
    for (size_t t = 20; t < 30; ++t) late += r.stats[t].selected_mean_max_prob;
    EXPECT_GT(early / 10 - late / 10, 0.03);
  }
}

TEST(RunExtractionTest, TraversalTowardTripleJunction) {
  auto victim = testing::ThreeClassVictim();
  SamplerConfig c = LinearConfig(FitnessMode::kLowConfidence, 11);
  ASSERT_OK_AND_ASSIGN(ExtractionResult r, RunExtraction(*victim, c));
  EXPECT_GE(r.stats.back().selected_distinct_classes,
            r.stats.front().selected_distinct_classes);
  EXPECT_EQ(r.stats.back().selected_distinct_classes, 3u);
  EXPECT_GT(r.stats.back().low_gap_fraction, r.stats.front().low_gap_fraction);
}

TEST(RunExtractionTest, DualityAtGenerationZero) {
  auto victim = testing::ThreeClassVictim();
  SamplerConfig lc = LinearConfig(FitnessMode::kLowConfidence);
  lc.generations = 1;
  SamplerConfig hc = lc;
  hc.fitness_mode = FitnessMode::kHighConfidence;
  ASSERT_OK_AND_ASSIGN(ExtractionResult a, RunExtraction(*victim, lc));
  ASSERT_OK_AND_ASSIGN(ExtractionResult b, RunExtraction(*victim, hc));
  ASSERT_EQ(a.dataset, b.dataset);
  for (const SoftLabel& l : a.dataset.labels()) {
    EXPECT_EQ(Fitness(l, FitnessMode::kHighConfidence),
              -Fitness(l, FitnessMode::kLowConfidence));
  }
}

TEST(RunExtractionTest, DeterministicAndWorkerInvariant) {
  auto victim = testing::ThreeClassVictim();
  SamplerConfig c;
  c.population_size = 200;
  c.selection_size = 50;
  c.generations = 6;
  c.seed = 42;
  ASSERT_OK_AND_ASSIGN(ExtractionResult a, RunExtraction(*victim, c));
  ASSERT_OK_AND_ASSIGN(ExtractionResult b, RunExtraction(*victim, c));
  c.oracle_workers = 4;
  ASSERT_OK_AND_ASSIGN(ExtractionResult w, RunExtraction(*victim, c));
  EXPECT_EQ(EncodeDataset(a.dataset), EncodeDataset(b.dataset));
  EXPECT_EQ(EncodeDataset(a.dataset), EncodeDataset(w.dataset));
  c.oracle_workers = 1;
  c.seed = 43;
  ASSERT_OK_AND_ASSIGN(ExtractionResult other, RunExtraction(*victim, c));
  EXPECT_NE(EncodeDataset(a.dataset), EncodeDataset(other.dataset));
}

TEST(RunExtractionTest, ChildrenStayWithinMutationRadiusOfSelectedParents) {
  auto victim = testing::ThreeClassVictim();
  SamplerConfig c;
  c.population_size = 60;
  c.selection_size = 20;
  c.generations = 2;
  ASSERT_OK_AND_ASSIGN(ExtractionResult r, RunExtraction(*victim, c));
  Population gen0;
  std::vector<SoftLabel> labels0;
  for (size_t i = 0; i < 60; ++i) {
    gen0.samples.push_back(r.dataset.sample(i));
    labels0.push_back(r.dataset.label(i));
  }
  const SpanVector spans = FeatureSpans(gen0);
  ASSERT_OK_AND_ASSIGN(auto parents,
                       SelectTopK(gen0, labels0, 20, FitnessMode::kLowConfidence));
  const std::vector<size_t> counts = ChildrenPerParent(20, 60);
  size_t child = 60;
  for (size_t p = 0; p < 20; ++p) {
    for (size_t j = 0; j < counts[p]; ++j, ++child) {
      for (size_t d = 0; d < 2; ++d) {
        EXPECT_LE(std::abs(r.dataset.sample(child)[d] - parents[p][d]),
                  0.1 * spans[d] + 1e-6);
      }
    }
  }
}

TEST(RunExtractionTest, EarlyStopHookEndsRun) {
  auto victim = testing::ThreeClassVictim();
  SamplerConfig c;
  c.population_size = 50;
  c.selection_size = 10;
  c.generations = 10;
  c.early_stop = [](const GenerationStats& s) { return s.generation == 2; };
  ASSERT_OK_AND_ASSIGN(ExtractionResult r, RunExtraction(*victim, c));
  EXPECT_EQ(r.stats.size(), 3u);
  EXPECT_EQ(r.dataset.size(), 150u);
}

TEST(RunExtractionTest, OracleFailureFlushesPartialDataset) {
  auto victim = testing::ThreeClassVictim();
  FlakyOracle flaky(*victim, 3);
  const std::string dir = testing::TempDir("sampler_partial");
  SamplerConfig c;
  c.population_size = 40;
  c.selection_size = 10;
  c.generations = 6;
  c.partial_dataset_path = dir + "/partial.bamd";
  absl::StatusOr<ExtractionResult> r = RunExtraction(flaky, c);
  EXPECT_EQ(r.status().code(), absl::StatusCode::kUnavailable);
  EXPECT_THAT(std::string(r.status().message()),
              ::testing::HasSubstr("generation 3"));
  ASSERT_OK_AND_ASSIGN(LabeledDataset partial, ReadDataset(c.partial_dataset_path));
  EXPECT_EQ(partial.size(), 120u);
  EXPECT_EQ(flaky.query_count(), 120u);
}

TEST(GenerationStatsTest, CountsAndFractions) {
  const auto labels = Labels({{0.52f, 0.48f, 0.0f},
                              {0.1f, 0.9f, 0.0f},
                              {0.0f, 0.46f, 0.54f},
                              {1.0f, 0.0f, 0.0f}});
  const std::vector<size_t> selected{0, 2};
  const GenerationStats s = ComputeGenerationStats(4, labels, selected, 3);
  EXPECT_EQ(s.generation, 4u);
  EXPECT_NEAR(s.mean_max_prob, (0.52 + 0.9 + 0.54 + 1.0) / 4, 1e-6);
  EXPECT_NEAR(s.min_max_prob, 0.52, 1e-6);
  EXPECT_DOUBLE_EQ(s.low_gap_fraction, 0.5);
  EXPECT_THAT(s.argmax_histogram, ElementsAre(2, 1, 1));
  EXPECT_EQ(s.distinct_classes, 3u);
  EXPECT_NEAR(s.selected_mean_max_prob, (0.52 + 0.54) / 2, 1e-6);
  EXPECT_EQ(s.selected_distinct_classes, 2u);
  const std::string line = StatsToJsonLines(std::vector<GenerationStats>{s});
  EXPECT_EQ(nlohmann::json::parse(line)["low_gap_fraction"], 0.5);
}

}  // namespace
}  // namespace bam
