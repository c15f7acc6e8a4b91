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

#include "bam/oracle/net_oracle.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace bam {
namespace {

// Linear softmax substitute (no hidden layers) with the given rows.
Mlp LinearNet(const std::vector<std::vector<double>>& w,
              const std::vector<double>& b) {
  NetSpec spec;
  spec.input_dim = w.front().size();
  spec.num_classes = w.size();
  Mlp net = Mlp::Zero(spec).value();
  for (size_t c = 0; c < w.size(); ++c) {
    for (size_t i = 0; i < w[c].size(); ++i) net.mutable_weights(0)(c, i) = w[c][i];
    net.mutable_biases(0)(c) = b[c];
  }
  return net;
}

// Three linear classes meeting near the centre of the unit square.
Mlp ThreeWayNet() {
  return LinearNet({{-6, -6}, {6, -6}, {0, 8}}, {4, -2, -3});
}

ExampleSet UniformTestSet(const Mlp& labeler, size_t n, uint64_t seed) {
  Rng rng(seed);
  ExampleSet set;
  for (size_t i = 0; i < n; ++i) {
    set.samples.emplace_back(std::vector<float>{
        static_cast<float>(UniformReal(rng, 0, 1)),
        static_cast<float>(UniformReal(rng, 0, 1))});
  }
  const std::vector<SoftLabel> labels = labeler.Forward(set.samples).value();
  for (const SoftLabel& l : labels) {
    set.labels.push_back(l.argmax());
  }
  return set;
}

double MaxAbs(std::span<const float> v) {
  double m = 0.0;
  for (float x : v) m = std::max(m, std::abs(static_cast<double>(x)));
  return m;
}

TEST(AttackConfigTest, DefaultsAndValidation) {
  AttackConfig cfg;
  EXPECT_DOUBLE_EQ(cfg.epsilon, 30.0 / 255.0);
  EXPECT_EQ(cfg.steps, 10);
  EXPECT_DOUBLE_EQ(cfg.EffectiveStepSize(), 2.0 * cfg.epsilon / 10);
  EXPECT_TRUE(cfg.random_start);
  EXPECT_OK(cfg.Validate());
  cfg.steps = 0;
  EXPECT_FALSE(cfg.Validate().ok());
  cfg = AttackConfig();
  cfg.epsilon = -1;
  EXPECT_FALSE(cfg.Validate().ok());
}

TEST(ProjectToBallTest, FeasiblePointIsUnchanged) {
  const Sample center(std::vector<float>{0.5f, 0.5f});
  const Sample inside(std::vector<float>{0.55f, 0.45f});
  EXPECT_EQ(ProjectToBall(inside, center, 0.1, ClampRange{}), inside);
  const Sample projected =
      ProjectToBall(Sample(std::vector<float>{0.9f, -0.3f}), center, 0.1, std::nullopt);
  EXPECT_NEAR(projected[0], 0.6f, 1e-6);
  EXPECT_NEAR(projected[1], 0.4f, 1e-6);
  EXPECT_EQ(ProjectToBall(projected, center, 0.1, std::nullopt), projected);
}

TEST(ProjectToBallTest, ClampAppliesAfterBall) {
  const Sample center(std::vector<float>{0.02f, 0.98f});
  const Sample p = ProjectToBall(Sample(std::vector<float>{-0.5f, 1.5f}), center,
                                 0.1, ClampRange{0.0, 1.0});
  EXPECT_EQ(p[0], 0.0f);
  EXPECT_EQ(p[1], 1.0f);
}

TEST(PgdAttackTest, TinyBudgetLeavesInputUnchanged) {
  const Mlp net = ThreeWayNet();
  AttackConfig cfg;
  cfg.epsilon = 1e-12;
  Rng rng(1);
  const Sample x(std::vector<float>{0.3f, 0.7f});
  const AdversarialExample ex = PgdAttack(net, x, 2, cfg, rng);
  for (size_t i = 0; i < 2; ++i) EXPECT_NEAR(ex.perturbed[i], x[i], 1e-9);
}

TEST(PgdAttackTest, SingleStepMatchesClosedFormFgsm) {
  // Two classes: d CE / dx for label y is (1 - p_y)(w_other - w_y), so the
  // step direction is sign(w_other - w_y).
  const Mlp net = LinearNet({{1.0, -2.0}, {3.0, -2.5}}, {0.1, -0.2});
  AttackConfig cfg;
  cfg.epsilon = 0.05;
  cfg.steps = 1;
  cfg.step_size = cfg.epsilon;
  cfg.random_start = false;
  Rng rng(2);
  const Sample x(std::vector<float>{0.4f, 0.6f});
  const AdversarialExample from0 = PgdAttack(net, x, 0, cfg, rng);
  EXPECT_FLOAT_EQ(from0.perturbed[0], 0.4f + 0.05f);
  EXPECT_FLOAT_EQ(from0.perturbed[1], 0.6f - 0.05f);
  const AdversarialExample from1 = PgdAttack(net, x, 1, cfg, rng);
  EXPECT_FLOAT_EQ(from1.perturbed[0], 0.4f - 0.05f);
  EXPECT_FLOAT_EQ(from1.perturbed[1], 0.6f + 0.05f);
  cfg.clamp = ClampRange{0.0, 0.42};
  const AdversarialExample clamped =
      PgdAttack(net, Sample(std::vector<float>{0.4f, 0.3f}), 0, cfg, rng);
  EXPECT_FLOAT_EQ(clamped.perturbed[0], 0.42f);
  EXPECT_FLOAT_EQ(clamped.perturbed[1], 0.3f - 0.05f);
}

TEST(PgdAttackTest, BudgetHoldsOverManySamples) {
  const Mlp net = ThreeWayNet();
  const ExampleSet set = UniformTestSet(net, 1000, 3);
  AttackConfig cfg;
  Rng rng(4);
  for (size_t i = 0; i < set.size(); ++i) {
    const AdversarialExample ex = PgdAttack(net, set.samples[i], set.labels[i], cfg, rng);
    ASSERT_LE(MaxAbs(ex.delta), cfg.epsilon + kBudgetTolerance);
    for (size_t d = 0; d < 2; ++d) {
      ASSERT_FLOAT_EQ(ex.delta[d], ex.perturbed[d] - ex.original[d]);
    }
    EXPECT_EQ(ex.source_label, set.labels[i]);
  }
}

TEST(PgdAttackTest, IteratesStayFeasibleUnderReprojection) {
  const Mlp net = ThreeWayNet();
  AttackConfig cfg;
  cfg.clamp = ClampRange{0.0, 1.0};
  Rng rng(5);
  const ExampleSet set = UniformTestSet(net, 200, 6);
  for (size_t i = 0; i < set.size(); ++i) {
    const AdversarialExample ex = PgdAttack(net, set.samples[i], set.labels[i], cfg, rng);
    EXPECT_EQ(ProjectToBall(ex.perturbed, ex.original, cfg.epsilon, cfg.clamp),
              ex.perturbed);
  }
}

// Brute-force check: does any point of a fine grid over the clamped ball
// around x change the model's argmax?
bool BallCrossesBoundary(const Mlp& net, const Sample& x, int label, double eps) {
  std::vector<Sample> probes;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      probes.emplace_back(std::vector<float>{
          static_cast<float>(std::clamp(x[0] - eps + eps * i / 10.0, 0.0, 1.0)),
          static_cast<float>(std::clamp(x[1] - eps + eps * j / 10.0, 0.0, 1.0))});
    }
  }
  const std::vector<SoftLabel> labels = net.Forward(probes).value();
  for (const SoftLabel& l : labels) {
    if (l.argmax() != label) return true;
  }
  return false;
}

TEST(EvaluateTransferTest, SelfTransferWithGenerousBudget) {
  const Mlp net = ThreeWayNet();
  NetOracle victim(net);
  const ExampleSet set = UniformTestSet(net, 500, 7);
  AttackConfig cfg;
  cfg.epsilon = 0.5;
  cfg.steps = 20;
  cfg.clamp = ClampRange{0.0, 1.0};
  size_t crossable = 0;
  for (size_t i = 0; i < set.size(); ++i) {
    crossable += BallCrossesBoundary(net, set.samples[i], set.labels[i], cfg.epsilon);
  }
  ASSERT_GE(static_cast<double>(crossable) / set.size(), 0.95);
  ASSERT_OK_AND_ASSIGN(TransferReport r, EvaluateTransfer(net, victim, set, cfg, 8));
  EXPECT_EQ(r.eligible_count, 500u);
  EXPECT_GE(r.asr, 0.95);
  EXPECT_DOUBLE_EQ(r.asr, r.asr_whitebox);
  EXPECT_GE(r.asr, r.asr_noise_baseline);
  EXPECT_LE(r.max_abs_delta, cfg.epsilon + kBudgetTolerance);
}

TEST(EvaluateTransferTest, VanishingBudgetGivesZeroSuccess) {
  const Mlp net = ThreeWayNet();
  NetOracle victim(net);
  const ExampleSet set = UniformTestSet(net, 300, 9);
  AttackConfig cfg;
  cfg.epsilon = 1e-12;
  ASSERT_OK_AND_ASSIGN(TransferReport r, EvaluateTransfer(net, victim, set, cfg, 1));
  EXPECT_EQ(r.asr, 0.0);
  EXPECT_EQ(r.asr_raw_flip, 0.0);
  EXPECT_EQ(r.asr_noise_baseline, 0.0);
}

TEST(EvaluateTransferTest, CountsOnlyVictimCorrectPoints) {
  const Mlp net = ThreeWayNet();
  NetOracle victim(net);
  ExampleSet set = UniformTestSet(net, 100, 10);
  for (size_t i = 0; i < 40; ++i) set.labels[i] = (set.labels[i] + 1) % 3;
  AttackConfig cfg;
  ASSERT_OK_AND_ASSIGN(TransferReport r, EvaluateTransfer(net, victim, set, cfg, 2));
  EXPECT_EQ(r.eligible_count, 60u);
  EXPECT_EQ(r.epsilon, cfg.epsilon);
  EXPECT_EQ(r.steps, 10);
  // Clean pass plus adversarial and noise passes over every point.
  EXPECT_EQ(r.victim_queries, victim.query_count());
  EXPECT_GE(r.victim_queries, 100u);
}

TEST(EvaluateTransferTest, EmptyEligibleSetIsFailedPrecondition) {
  const Mlp net = ThreeWayNet();
  NetOracle victim(net);
  ExampleSet set = UniformTestSet(net, 20, 11);
  for (int& y : set.labels) y = (y + 1) % 3;
  EXPECT_EQ(EvaluateTransfer(net, victim, set, AttackConfig(), 3).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(EvaluateTransferTest, DeterministicForSeed) {
  const Mlp net = ThreeWayNet();
  NetOracle victim(net);
  const ExampleSet set = UniformTestSet(net, 200, 12);
  ASSERT_OK_AND_ASSIGN(TransferReport a, EvaluateTransfer(net, victim, set, AttackConfig(), 5));
  ASSERT_OK_AND_ASSIGN(TransferReport b, EvaluateTransfer(net, victim, set, AttackConfig(), 5));
  EXPECT_EQ(a.ToJson().dump(), b.ToJson().dump());
}

TEST(EvaluateTransferTest, JsonHasReportFields) {
  const Mlp net = ThreeWayNet();
  NetOracle victim(net);
  ASSERT_OK_AND_ASSIGN(TransferReport r, EvaluateTransfer(net, victim,
                                                          UniformTestSet(net, 50, 13),
                                                          AttackConfig(), 5));
  const nlohmann::json j = r.ToJson();
  for (const char* key : {"asr", "asr_raw_flip", "asr_whitebox", "asr_noise_baseline",
                          "epsilon", "steps", "eligible_count"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

}  // namespace
}  // namespace bam
