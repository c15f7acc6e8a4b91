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

// Drives the bam binary end to end and checks exit codes and outputs.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "bam/runner/config.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "test_util.h"

namespace bam {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

int RunCli(const std::string& args) {
  const std::string command =
      std::string(BAM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int raw = std::system(command.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string WriteConfig(const std::string& dir, const RunConfig& config) {
  const std::string path = dir + "/config.json";
  json j = RunConfigToJson(config);
  j["output_dir"] = config.output_dir;
  std::ofstream(path) << j.dump(2);
  return path;
}

RunConfig TinyConfig(const std::string& dir) {
  RunConfig c = testing::ThreeClassRunConfig(dir + "/out", 4);
  c.sampler.population_size = 40;
  c.sampler.selection_size = 10;
  c.sampler.generations = 3;
  c.train.epochs = 2;
  c.evaluation.test_size = 50;
  c.evaluation.agreement_grid = 10;
  return c;
}

TEST(CliTest, HelpExitsZeroAndMissingSubcommandIsConfigError) {
  EXPECT_EQ(RunCli("--help"), 0);
  EXPECT_EQ(RunCli("full-run --help"), 0);
  EXPECT_EQ(RunCli(""), 2);
  EXPECT_EQ(RunCli("frobnicate"), 2);
}

TEST(CliTest, BadConfigExitsTwo) {
  const std::string dir = testing::TempDir("cli_bad_config");
  std::ofstream(dir + "/bad.json") << R"({"victim": {"kind": "nope"}})";
  EXPECT_EQ(RunCli("extract --config " + dir + "/bad.json"), 2);
  std::ofstream(dir + "/broken.json") << "{ not json";
  EXPECT_EQ(RunCli("extract --config " + dir + "/broken.json"), 2);
  EXPECT_EQ(RunCli("extract --config " + dir + "/missing.json"), 2);
  EXPECT_EQ(RunCli("extract"), 2);
}

TEST(CliTest, UnreachableOracleExitsThree) {
  const std::string dir = testing::TempDir("cli_unreachable");
  const std::string config = WriteConfig(dir, TinyConfig(dir));
  EXPECT_EQ(RunCli("serve-check --oracle-url http://127.0.0.1:1"), 3);
  EXPECT_EQ(RunCli("extract --config " + config + " --oracle-url http://127.0.0.1:1"), 3);
}

TEST(CliTest, DivergentTrainingExitsFour) {
  const std::string dir = testing::TempDir("cli_diverge");
  RunConfig c = TinyConfig(dir);
  c.train.learning_rate = 1e300;
  c.train.validation_fraction = 0.0;
  EXPECT_EQ(RunCli("full-run --config " + WriteConfig(dir, c)), 4);
}

TEST(CliTest, PhaseCommandsChainThroughFiles) {
  const std::string dir = testing::TempDir("cli_chain");
  const RunConfig c = TinyConfig(dir);
  const std::string config = WriteConfig(dir, c);
  const std::string out = c.output_dir;
  ASSERT_EQ(RunCli("extract --csv --config " + config), 0);
  EXPECT_TRUE(fs::exists(out + "/dataset.bamd"));
  EXPECT_TRUE(fs::exists(out + "/dataset.csv"));
  EXPECT_TRUE(fs::exists(out + "/stats.jsonl"));
  ASSERT_EQ(RunCli("train-substitute --config " + config + " --dataset " + out +
                   "/dataset.bamd"),
            0);
  EXPECT_TRUE(fs::exists(out + "/substitute.bamm"));
  ASSERT_EQ(RunCli("evaluate --config " + config + " --substitute " + out +
                   "/substitute.bamm"),
            0);
  EXPECT_TRUE(fs::exists(out + "/eval.json"));
  ASSERT_EQ(RunCli("attack --config " + config + " --substitute " + out +
                   "/substitute.bamm"),
            0);
  EXPECT_TRUE(fs::exists(out + "/transfer.json"));
}

TEST(CliTest, FullRunSeedOverrideAndSweep) {
  const std::string dir = testing::TempDir("cli_full");
  const RunConfig c = TinyConfig(dir);
  const std::string config = WriteConfig(dir, c);
  ASSERT_EQ(RunCli("full-run --seed 9 --config " + config), 0);
  RunConfig seeded = c;
  seeded.seed = 9;
  const std::string report = c.output_dir + "/run-" + ConfigHash(seeded) + "/report.json";
  ASSERT_TRUE(fs::exists(report));
  EXPECT_EQ(json::parse(std::ifstream(report))["config"]["seed"], 9);
  ASSERT_EQ(RunCli("sweep --axis N --values 20,40 --config " + config), 0);
  EXPECT_TRUE(fs::exists(c.output_dir + "/sweep-" + ConfigHash(c) + "/sweep-N.csv"));
  EXPECT_EQ(RunCli("sweep --axis gamma --values 1 --config " + config), 2);
}

}  // namespace
}  // namespace bam
