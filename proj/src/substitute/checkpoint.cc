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

#include "bam/substitute/checkpoint.h"

#include "absl/strings/str_cat.h"
#include "bam/core/binary_io.h"
#include "bam/core/status_macros.h"

namespace bam {

nlohmann::json NetSpecToJson(const NetSpec& spec) {
  return nlohmann::json{{"input_dim", spec.input_dim},
                        {"hidden", spec.hidden},
                        {"num_classes", spec.num_classes},
                        {"activation", "relu"},
                        {"init", "uniform_fan_in"},
                        {"seed", spec.seed}};
}

absl::StatusOr<NetSpec> NetSpecFromJson(const nlohmann::json& json) {
  NetSpec spec;
  try {
    spec.input_dim = json.at("input_dim").get<size_t>();
    spec.hidden = json.value("hidden", std::vector<size_t>{});
    spec.num_classes = json.at("num_classes").get<size_t>();
    spec.seed = json.value("seed", uint64_t{0});
    if (json.value("activation", std::string("relu")) != "relu") {
      return absl::InvalidArgumentError("only relu activation is supported");
    }
    if (json.value("init", std::string("uniform_fan_in")) != "uniform_fan_in") {
      return absl::InvalidArgumentError("unknown weight init scheme");
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("bad net spec: ", e.what()));
  }
  RETURN_IF_ERROR(spec.Validate());
  return spec;
}

std::string EncodeCheckpoint(const Mlp& model) {
  ByteWriter w;
  w.PutBytes(kCheckpointMagic);
  const std::string header = NetSpecToJson(model.spec()).dump();
  w.PutU32(static_cast<uint32_t>(header.size()));
  w.PutBytes(header);
  for (size_t l = 0; l < model.num_layers(); ++l) {
    const Eigen::MatrixXd& weights = model.weights(l);
    for (Eigen::Index r = 0; r < weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < weights.cols(); ++c) {
        w.PutF32(static_cast<float>(weights(r, c)));
      }
    }
    for (Eigen::Index r = 0; r < model.biases(l).size(); ++r) {
      w.PutF32(static_cast<float>(model.biases(l)(r)));
    }
  }
  return w.Release();
}

absl::StatusOr<Mlp> DecodeCheckpoint(std::string_view bytes) {
  ByteReader r(bytes);
  ASSIGN_OR_RETURN(std::string_view magic, r.GetBytes(4));
  if (magic != kCheckpointMagic) {
    return absl::InvalidArgumentError("not a model checkpoint (bad magic)");
  }
  ASSIGN_OR_RETURN(uint32_t header_len, r.GetU32());
  ASSIGN_OR_RETURN(std::string_view header, r.GetBytes(header_len));
  const nlohmann::json json = nlohmann::json::parse(header, nullptr, false);
  if (json.is_discarded()) {
    return absl::InvalidArgumentError("checkpoint header is not valid JSON");
  }
  ASSIGN_OR_RETURN(NetSpec spec, NetSpecFromJson(json));
  ASSIGN_OR_RETURN(Mlp model, Mlp::Zero(spec));
  for (size_t l = 0; l < model.num_layers(); ++l) {
    Eigen::MatrixXd& weights = model.mutable_weights(l);
    for (Eigen::Index row = 0; row < weights.rows(); ++row) {
      for (Eigen::Index c = 0; c < weights.cols(); ++c) {
        ASSIGN_OR_RETURN(float v, r.GetF32());
        weights(row, c) = v;
      }
    }
    Eigen::VectorXd& biases = model.mutable_biases(l);
    for (Eigen::Index row = 0; row < biases.size(); ++row) {
      ASSIGN_OR_RETURN(float v, r.GetF32());
      biases(row) = v;
    }
  }
  if (r.remaining() != 0) {
    return absl::DataLossError("trailing bytes after checkpoint tensors");
  }
  return model;
}

absl::Status WriteCheckpoint(const std::string& path, const Mlp& model) {
  return WriteFileBytes(path, EncodeCheckpoint(model));
}

absl::StatusOr<Mlp> ReadCheckpoint(const std::string& path) {
  ASSIGN_OR_RETURN(std::string bytes, ReadFileBytes(path));
  return DecodeCheckpoint(bytes);
}

Mlp RoundToCheckpointPrecision(const Mlp& model) {
  Mlp rounded = model;
  for (size_t l = 0; l < rounded.num_layers(); ++l) {
    rounded.mutable_weights(l) =
        rounded.weights(l).cast<float>().cast<double>();
    rounded.mutable_biases(l) = rounded.biases(l).cast<float>().cast<double>();
  }
  return rounded;
}

}  // namespace bam
