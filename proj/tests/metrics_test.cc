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

#include "bam/metrics/metrics.h"

#include <cmath>
#include <iterator>
#include <numeric>
#include <set>

#include "auc_oracle.h"
#include "bam/core/random.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace bam {
namespace {

using ::testing::ElementsAre;

SoftLabel Label(std::vector<float> p) { return SoftLabel(std::move(p)); }

TEST(AccuracyTest, Cases) {
  const std::vector<SoftLabel> preds{Label({0.9f, 0.1f}), Label({0.2f, 0.8f}),
                                     Label({0.6f, 0.4f}), Label({0.3f, 0.7f})};
  const std::vector<int> all_right{0, 1, 0, 1};
  const std::vector<int> half_right{0, 1, 1, 0};
  EXPECT_DOUBLE_EQ(Accuracy(preds, all_right).value(), 1.0);
  EXPECT_DOUBLE_EQ(Accuracy(preds, half_right).value(), 0.5);
  EXPECT_EQ(Accuracy(preds, std::vector<int>{0}).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(Accuracy({}, {}).status().code(), absl::StatusCode::kInvalidArgument);
}

TEST(AccuracyTest, RandomPredictionsScoreAboutOneOverC) {
  Rng rng(1);
  std::vector<SoftLabel> preds;
  std::vector<int> truth;
  for (int i = 0; i < 10000; ++i) {
    std::vector<float> p(10);
    for (float& v : p) v = static_cast<float>(UniformReal(rng, 0.5, 1.5));
    const float s = std::accumulate(p.begin(), p.end(), 0.0f);
    for (float& v : p) v /= s;
    preds.push_back(Label(p));
    truth.push_back(i % 10);
  }
  EXPECT_NEAR(Accuracy(preds, truth).value(), 0.1, 0.01);
}

TEST(AgreementTest, CountsMatchingArgmax) {
  const std::vector<SoftLabel> a{Label({0.9f, 0.1f, 0.0f}), Label({0.2f, 0.3f, 0.5f}),
                                 Label({0.1f, 0.8f, 0.1f})};
  const std::vector<SoftLabel> b{Label({0.6f, 0.3f, 0.1f}), Label({0.5f, 0.3f, 0.2f}),
                                 Label({0.0f, 0.6f, 0.4f})};
  EXPECT_NEAR(Agreement(a, b).value(), 2.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(Agreement(a, a).value(), 1.0);
  EXPECT_FALSE(Agreement(a, std::span(b).first(2)).ok());
}

TEST(AgreementTest, InvariantUnderConsistentLabelPermutation) {
  Rng rng(2);
  std::vector<SoftLabel> p, q, p_perm, q_perm;
  std::vector<int> truth, truth_perm;
  const std::vector<int> perm{2, 0, 3, 1};
  auto permute = [&](const std::vector<float>& v) {
    std::vector<float> out(4);
    for (size_t c = 0; c < 4; ++c) out[perm[c]] = v[c];
    return Label(out);
  };
  for (int i = 0; i < 200; ++i) {
    std::vector<float> a(4), b(4);
    for (size_t c = 0; c < 4; ++c) {
      a[c] = static_cast<float>(UniformReal(rng, 0, 1));
      b[c] = static_cast<float>(UniformReal(rng, 0, 1));
    }
    p.push_back(Label(a));
    q.push_back(Label(b));
    p_perm.push_back(permute(a));
    q_perm.push_back(permute(b));
    truth.push_back(i % 4);
    truth_perm.push_back(perm[i % 4]);
  }
  EXPECT_DOUBLE_EQ(Agreement(p, q).value(), Agreement(p_perm, q_perm).value());
  EXPECT_DOUBLE_EQ(Accuracy(p, truth).value(), Accuracy(p_perm, truth_perm).value());
}

TEST(BinaryAucTest, HandCases) {
  const bool positive[] = {true, true, true, false, false, false};
  // 0.35 beats 0.3 and 0.2: 3 + 3 + 2 of 9 pairs.
  const std::vector<double> scores{0.9, 0.8, 0.35, 0.7, 0.3, 0.2};
  EXPECT_NEAR(BinaryAuc(scores, positive).value(), 8.0 / 9.0, 1e-9);
  // 0.35 beats only 0.2: 3 + 3 + 1 of 9 pairs.
  const std::vector<double> closer{0.9, 0.8, 0.35, 0.7, 0.4, 0.2};
  EXPECT_NEAR(BinaryAuc(closer, positive).value(), 7.0 / 9.0, 1e-9);
}

TEST(BinaryAucTest, TiesCountHalf) {
  const std::vector<double> scores{0.5, 0.5, 0.5, 0.5};
  const bool positive[] = {true, false, true, false};
  EXPECT_DOUBLE_EQ(BinaryAuc(scores, positive).value(), 0.5);
  const std::vector<double> some{0.9, 0.5, 0.5, 0.1};
  const bool pos2[] = {true, true, false, false};
  // Pairs: (0.9 > 0.5), (0.9 > 0.1), (0.5 = 0.5), (0.5 > 0.1) -> 3.5 / 4.
  EXPECT_DOUBLE_EQ(BinaryAuc(some, pos2).value(), 3.5 / 4);
}

TEST(BinaryAucTest, PerfectAndEmpty) {
  const std::vector<double> scores{0.1, 0.2, 0.8, 0.9};
  const bool positive[] = {false, false, true, true};
  EXPECT_DOUBLE_EQ(BinaryAuc(scores, positive).value(), 1.0);
  const bool none[] = {false, false, false, false};
  EXPECT_EQ(BinaryAuc(scores, none).status().code(), absl::StatusCode::kInvalidArgument);
}

TEST(MacroAucTest, MatchesBruteForceOracle) {
  Rng rng(3);
  for (int instance = 0; instance < 20; ++instance) {
    const testing::AucInstance inst = testing::RandomAucInstance(rng);
    ASSERT_OK_AND_ASSIGN(AucReport r, MacroAuc(inst.predictions, inst.truth));
    EXPECT_NEAR(r.macro, testing::BruteForceMacroAuc(inst.predictions, inst.truth),
                1e-9)
        << "instance " << instance;
  }
}

TEST(MacroAucTest, RandomScoresGiveHalf) {
  Rng rng(4);
  std::vector<SoftLabel> preds;
  std::vector<int> truth;
  for (int i = 0; i < 10000; ++i) {
    const float p = static_cast<float>(UniformReal(rng, 0, 1));
    preds.push_back(Label({p, 1 - p}));
    truth.push_back(UniformReal(rng, 0, 1) < 0.5 ? 0 : 1);
  }
  EXPECT_NEAR(MacroAuc(preds, truth).value().macro, 0.5, 0.02);
}

TEST(MacroAucTest, PerfectSeparationIsOne) {
  const std::vector<SoftLabel> preds{Label({0.8f, 0.1f, 0.1f}), Label({0.1f, 0.7f, 0.2f}),
                                     Label({0.2f, 0.1f, 0.7f}), Label({0.6f, 0.3f, 0.1f})};
  const std::vector<int> truth{0, 1, 2, 0};
  ASSERT_OK_AND_ASSIGN(AucReport r, MacroAuc(preds, truth));
  EXPECT_DOUBLE_EQ(r.macro, 1.0);
  EXPECT_THAT(r.per_class, ElementsAre(1.0, 1.0, 1.0));
}

TEST(MacroAucTest, InvariantUnderMonotoneColumnTransform) {
  Rng rng(5);
  const testing::AucInstance inst = testing::RandomAucInstance(rng);
  const size_t classes = inst.predictions.front().num_classes();
  for (size_t col = 0; col < classes; ++col) {
    // Strictly increasing and exact: each score becomes the rank of its
    // value among the column's distinct values.
    std::set<float> distinct;
    for (const SoftLabel& l : inst.predictions) distinct.insert(l[col]);
    std::vector<SoftLabel> transformed;
    for (const SoftLabel& l : inst.predictions) {
      std::vector<float> p(l.probs().begin(), l.probs().end());
      p[col] = static_cast<float>(std::distance(distinct.begin(), distinct.find(p[col])));
      transformed.push_back(Label(p));
    }
    ASSERT_OK_AND_ASSIGN(AucReport before, MacroAuc(inst.predictions, inst.truth));
    ASSERT_OK_AND_ASSIGN(AucReport after, MacroAuc(transformed, inst.truth));
    if (std::isnan(before.per_class[col])) continue;
    EXPECT_NEAR(before.per_class[col], after.per_class[col], 1e-12);
  }
}

TEST(MacroAucTest, SkipsClassesWithoutPositives) {
  const std::vector<SoftLabel> preds{Label({0.8f, 0.1f, 0.1f}), Label({0.3f, 0.6f, 0.1f}),
                                     Label({0.5f, 0.4f, 0.1f})};
  const std::vector<int> truth{0, 1, 0};
  ASSERT_OK_AND_ASSIGN(AucReport r, MacroAuc(preds, truth));
  EXPECT_THAT(r.skipped, ElementsAre(2));
  EXPECT_TRUE(std::isnan(r.per_class[2]));
  EXPECT_DOUBLE_EQ(r.macro, (r.per_class[0] + r.per_class[1]) / 2);
  const std::vector<int> single{0, 0, 0};
  EXPECT_EQ(MacroAuc(preds, single).status().code(), absl::StatusCode::kInvalidArgument);
}

TEST(QueryRatioTest, ReferenceRatios) {
  EXPECT_NEAR(QueryRatio(620000, 50000).value(), 12.4, 1e-9);
  // 1.41M queries over the reference size implied by a 4.28 ratio.
  const uint64_t implied = static_cast<uint64_t>(std::llround(1410000 / 4.28));
  EXPECT_NEAR(QueryRatio(1410000, implied).value(), 4.28, 5e-5);
  EXPECT_DOUBLE_EQ(QueryRatio(777, 777).value(), 1.0);
  EXPECT_EQ(QueryRatio(10, 0).status().code(), absl::StatusCode::kInvalidArgument);
}

TEST(EvalReportTest, JsonNamesAveragingAndWritesNullForSkipped) {
  EvalReport r;
  r.accuracy = 0.9;
  r.per_class_auc = {0.8, std::nan("")};
  r.query_count = 100;
  r.query_ratio = 2.0;
  const nlohmann::json j = r.ToJson();
  EXPECT_EQ(j["auc_averaging"], "macro one-vs-rest");
  EXPECT_TRUE(j["per_class_auc"][1].is_null());
  EXPECT_EQ(j["query_count"], 100);
  EXPECT_DOUBLE_EQ(j["accuracy"].get<double>(), 0.9);
}

}  // namespace
}  // namespace bam
