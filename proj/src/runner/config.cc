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

#include "bam/runner/config.h"

#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "bam/core/random.h"
#include "bam/core/status_macros.h"

namespace bam {
namespace {

using nlohmann::json;

json MatrixToJson(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd MatrixFromJson(const json& j) {
  const size_t rows = j.size();
  const size_t cols = rows == 0 ? 0 : j.at(0).size();
  Eigen::MatrixXd m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    if (j.at(r).size() != cols) throw std::invalid_argument("ragged matrix");
    for (size_t c = 0; c < cols; ++c) m(r, c) = j.at(r).at(c).get<double>();
  }
  return m;
}

Eigen::VectorXd VectorFromJson(const json& j) {
  const std::vector<double> v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
}

std::vector<double> VectorToStd(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

std::string SyntheticKindName(SyntheticKind kind) {
  return kind == SyntheticKind::kBlobs ? "blobs" : "prototypes";
}

SyntheticDataSpec DataSpecFromJson(const json& j) {
  SyntheticDataSpec d;
  const std::string kind = j.value("kind", std::string("blobs"));
  if (kind == "blobs") {
    d.kind = SyntheticKind::kBlobs;
  } else if (kind == "prototypes") {
    d.kind = SyntheticKind::kPrototypes;
  } else {
    throw std::invalid_argument("unknown synthetic data kind " + kind);
  }
  d.num_classes = j.value("num_classes", d.num_classes);
  d.dim = j.value("dim", d.dim);
  d.per_class = j.value("per_class", d.per_class);
  d.noise = j.value("noise", d.noise);
  d.centers = j.value("centers", d.centers);
  d.seed = j.value("seed", d.seed);
  return d;
}

json DataSpecToJson(const SyntheticDataSpec& d) {
  return json{{"kind", SyntheticKindName(d.kind)},
              {"num_classes", d.num_classes},
              {"dim", d.dim},
              {"per_class", d.per_class},
              {"noise", d.noise},
              {"centers", d.centers},
              {"seed", d.seed}};
}

TrainConfig TrainFromJson(const json& j, TrainConfig t) {
  t.epochs = j.value("epochs", t.epochs);
  t.batch_size = j.value("batch_size", t.batch_size);
  t.learning_rate = j.value("learning_rate", t.learning_rate);
  t.beta1 = j.value("beta1", t.beta1);
  t.beta2 = j.value("beta2", t.beta2);
  t.adam_epsilon = j.value("adam_epsilon", t.adam_epsilon);
  t.validation_fraction = j.value("validation_fraction", t.validation_fraction);
  return t;
}

json TrainToJson(const TrainConfig& t) {
  return json{{"epochs", t.epochs},
              {"batch_size", t.batch_size},
              {"learning_rate", t.learning_rate},
              {"beta1", t.beta1},
              {"beta2", t.beta2},
              {"adam_epsilon", t.adam_epsilon},
              {"validation_fraction", t.validation_fraction}};
}

VictimSpec VictimFromJson(const json& j) {
  VictimSpec v;
  absl::StatusOr<VictimKind> kind =
      ParseVictimKind(j.at("kind").get<std::string>());
  if (!kind.ok()) throw std::invalid_argument(std::string(kind.status().message()));
  v.kind = *kind;
  switch (v.kind) {
    case VictimKind::kLinear:
      v.weights = MatrixFromJson(j.at("weights"));
      v.bias = VectorFromJson(j.at("bias"));
      break;
    case VictimKind::kGaussianMixture:
      for (const json& c : j.at("components")) {
        GaussianComponent comp;
        comp.prior = c.value("prior", 1.0);
        comp.mean = VectorFromJson(c.at("mean"));
        if (c.contains("variance")) {
          comp.covariance = Eigen::MatrixXd::Identity(comp.mean.size(),
                                                      comp.mean.size()) *
                            c.at("variance").get<double>();
        } else {
          comp.covariance = MatrixFromJson(c.at("covariance"));
        }
        v.components.push_back(std::move(comp));
      }
      break;
    case VictimKind::kTrainedNet:
      v.data = DataSpecFromJson(j.at("data"));
      v.hidden = j.value("hidden", v.hidden);
      v.train = TrainFromJson(j.value("train", json::object()), v.train);
      v.held_out_fraction = j.value("held_out_fraction", v.held_out_fraction);
      v.checkpoint = j.value("checkpoint", std::string());
      break;
    case VictimKind::kRemote:
      v.url = j.at("url").get<std::string>();
      v.remote.batch_limit = j.value("batch_limit", v.remote.batch_limit);
      v.remote.max_attempts = j.value("max_attempts", v.remote.max_attempts);
      v.remote.timeout =
          std::chrono::seconds(j.value("timeout_s", v.remote.timeout.count()));
      break;
  }
  return v;
}

json VictimToJson(const VictimSpec& v) {
  json j{{"kind", VictimKindName(v.kind)}};
  switch (v.kind) {
    case VictimKind::kLinear:
      j["weights"] = MatrixToJson(v.weights);
      j["bias"] = VectorToStd(v.bias);
      break;
    case VictimKind::kGaussianMixture: {
      json comps = json::array();
      for (const GaussianComponent& c : v.components) {
        comps.push_back(json{{"prior", c.prior},
                             {"mean", VectorToStd(c.mean)},
                             {"covariance", MatrixToJson(c.covariance)}});
      }
      j["components"] = std::move(comps);
      break;
    }
    case VictimKind::kTrainedNet:
      j["data"] = DataSpecToJson(v.data);
      j["hidden"] = v.hidden;
      j["train"] = TrainToJson(v.train);
      j["held_out_fraction"] = v.held_out_fraction;
      j["checkpoint"] = v.checkpoint;
      break;
    case VictimKind::kRemote:
      j["url"] = v.url;
      j["batch_limit"] = v.remote.batch_limit;
      j["max_attempts"] = v.remote.max_attempts;
      j["timeout_s"] = v.remote.timeout.count();
      break;
  }
  return j;
}

// Accepts a scalar (broadcast to every feature) or an explicit array.
std::vector<double> BoundFromJson(const json& j, size_t dim) {
  if (j.is_number()) {
    return std::vector<double>(dim == 0 ? 1 : dim, j.get<double>());
  }
  return j.get<std::vector<double>>();
}

}  // namespace

absl::StatusOr<VictimKind> ParseVictimKind(const std::string& name) {
  if (name == "linear") return VictimKind::kLinear;
  if (name == "gaussian_mixture") return VictimKind::kGaussianMixture;
  if (name == "trained_net") return VictimKind::kTrainedNet;
  if (name == "remote") return VictimKind::kRemote;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown victim kind \"", name,
      "\" (want linear, gaussian_mixture, trained_net or remote)"));
}

std::string VictimKindName(VictimKind kind) {
  switch (kind) {
    case VictimKind::kLinear:
      return "linear";
    case VictimKind::kGaussianMixture:
      return "gaussian_mixture";
    case VictimKind::kTrainedNet:
      return "trained_net";
    case VictimKind::kRemote:
      return "remote";
  }
  return "unknown";
}

size_t RunConfig::InputDim() const {
  switch (victim.kind) {
    case VictimKind::kLinear:
      return static_cast<size_t>(victim.weights.cols());
    case VictimKind::kGaussianMixture:
      return victim.components.empty()
                 ? 0
                 : static_cast<size_t>(victim.components.front().mean.size());
    case VictimKind::kTrainedNet:
      return victim.data.dim;
    case VictimKind::kRemote:
      return 0;
  }
  return 0;
}

size_t RunConfig::NumClasses() const {
  switch (victim.kind) {
    case VictimKind::kLinear:
      return static_cast<size_t>(victim.weights.rows());
    case VictimKind::kGaussianMixture:
      return victim.components.size();
    case VictimKind::kTrainedNet:
      return victim.data.num_classes;
    case VictimKind::kRemote:
      return 0;
  }
  return 0;
}

absl::Status RunConfig::Validate() const {
  const size_t dim = InputDim();
  if (victim.kind != VictimKind::kRemote) {
    if (dim == 0) return absl::InvalidArgumentError("victim has no inputs");
    if (NumClasses() < 2) {
      return absl::InvalidArgumentError("victim needs at least 2 classes");
    }
    if (victim.kind == VictimKind::kLinear && victim.bias.size() !=
                                                  victim.weights.rows()) {
      return absl::InvalidArgumentError("linear victim bias length != classes");
    }
  } else if (victim.url.empty()) {
    return absl::InvalidArgumentError("remote victim needs a url");
  }
  SamplerConfig sampler_check = sampler;
  if (dim == 0) sampler_check.init_bounds = {};
  RETURN_IF_ERROR(sampler_check.Validate(dim == 0 ? 1 : dim));
  if (victim.kind == VictimKind::kTrainedNet) {
    RETURN_IF_ERROR(victim.train.Validate());
  }
  RETURN_IF_ERROR(train.Validate());
  RETURN_IF_ERROR(attack.Validate());
  if (evaluation.test_size == 0) {
    return absl::InvalidArgumentError("evaluation.test_size must be > 0");
  }
  if (evaluation.agreement_grid < 2) {
    return absl::InvalidArgumentError("evaluation.agreement_grid must be >= 2");
  }
  return absl::OkStatus();
}

absl::StatusOr<RunConfig> RunConfigFromJson(const json& j) {
  RunConfig c;
  try {
    if (!j.is_object()) throw std::invalid_argument("config is not an object");
    c.seed = j.value("seed", c.seed);
    c.victim = VictimFromJson(j.at("victim"));
    const size_t dim = c.InputDim();

    const json s = j.value("sampler", json::object());
    c.sampler.population_size =
        s.value("population_size", c.sampler.population_size);
    c.sampler.selection_size =
        s.value("selection_size", c.sampler.selection_size);
    c.sampler.generations = s.value("generations", c.sampler.generations);
    c.sampler.mutation_scale =
        s.value("mutation_scale", c.sampler.mutation_scale);
    ASSIGN_OR_RETURN(c.sampler.fitness_mode,
                     ParseFitnessMode(s.value("fitness_mode", std::string("LC"))));
    if (s.contains("init_bounds")) {
      c.sampler.init_bounds.low = BoundFromJson(s["init_bounds"].at("low"), dim);
      c.sampler.init_bounds.high =
          BoundFromJson(s["init_bounds"].at("high"), dim);
    }
    c.sampler.clip_to_bounds =
        s.value("clip_to_bounds", c.sampler.clip_to_bounds);
    c.sampler.oracle_workers =
        s.value("oracle_workers", c.sampler.oracle_workers);

    const json sub = j.value("substitute", json::object());
    c.substitute_hidden = sub.value("hidden", c.substitute_hidden);
    c.train = TrainFromJson(j.value("training", json::object()), c.train);

    const json a = j.value("attack", json::object());
    c.attack.epsilon = a.value("epsilon", c.attack.epsilon);
    c.attack.steps = a.value("steps", c.attack.steps);
    if (a.contains("step_size") && !a["step_size"].is_null()) {
      c.attack.step_size = a["step_size"].get<double>();
    }
    c.attack.random_start = a.value("random_start", c.attack.random_start);
    if (a.contains("clamp") && !a["clamp"].is_null()) {
      const auto range = a["clamp"].get<std::vector<double>>();
      if (range.size() != 2) throw std::invalid_argument("clamp is [low, high]");
      c.attack.clamp = ClampRange{range[0], range[1]};
    }

    const json e = j.value("evaluation", json::object());
    c.evaluation.test_size = e.value("test_size", c.evaluation.test_size);
    c.evaluation.agreement_grid =
        e.value("agreement_grid", c.evaluation.agreement_grid);
    c.evaluation.reference_size =
        e.value("reference_size", c.evaluation.reference_size);
    c.output_dir = j.value("output_dir", c.output_dir);
  } catch (const std::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("bad run config: ", e.what()));
  }
  RETURN_IF_ERROR(c.Validate());
  return c;
}

absl::StatusOr<RunConfig> LoadRunConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::InvalidArgumentError(absl::StrCat("cannot open ", path));
  json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError(absl::StrCat(path, " is not valid JSON"));
  }
  return RunConfigFromJson(j);
}

json RunConfigToJson(const RunConfig& c) {
  json sampler{{"population_size", c.sampler.population_size},
               {"selection_size", c.sampler.selection_size},
               {"generations", c.sampler.generations},
               {"mutation_scale", c.sampler.mutation_scale},
               {"fitness_mode", std::string(FitnessModeName(c.sampler.fitness_mode))},
               {"clip_to_bounds", c.sampler.clip_to_bounds},
               {"oracle_workers", c.sampler.oracle_workers}};
  if (c.sampler.init_bounds.dim() > 0) {
    sampler["init_bounds"] = json{{"low", c.sampler.init_bounds.low},
                                  {"high", c.sampler.init_bounds.high}};
  }
  json attack{{"epsilon", c.attack.epsilon},
              {"steps", c.attack.steps},
              {"random_start", c.attack.random_start},
              {"step_size", nullptr},
              {"clamp", nullptr}};
  if (c.attack.step_size) attack["step_size"] = *c.attack.step_size;
  if (c.attack.clamp) {
    attack["clamp"] = std::vector<double>{c.attack.clamp->low,
                                          c.attack.clamp->high};
  }
  return json{{"seed", c.seed},
              {"victim", VictimToJson(c.victim)},
              {"sampler", std::move(sampler)},
              {"substitute", json{{"hidden", c.substitute_hidden}}},
              {"training", TrainToJson(c.train)},
              {"attack", std::move(attack)},
              {"evaluation", json{{"test_size", c.evaluation.test_size},
                                  {"agreement_grid", c.evaluation.agreement_grid},
                                  {"reference_size", c.evaluation.reference_size}}}};
}

std::string ConfigHash(const RunConfig& config) {
  const std::string canonical = RunConfigToJson(config).dump();
  return absl::StrFormat("%016x", DeriveSeed(0, canonical));
}

PhaseSeeds DerivePhaseSeeds(uint64_t master_seed) {
  PhaseSeeds s;
  s.victim = DeriveSeed(master_seed, "victim");
  s.extraction = DeriveSeed(master_seed, "extraction");
  s.substitute_init = DeriveSeed(master_seed, "substitute-init");
  s.substitute_shuffle = DeriveSeed(master_seed, "substitute-shuffle");
  s.evaluation = DeriveSeed(master_seed, "evaluation");
  s.attack = DeriveSeed(master_seed, "attack");
  return s;
}

}  // namespace bam
