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

// Model checkpoint container:
//
//   "BAMM" | header_len u32 | header_len bytes of NetSpec JSON |
//   for each layer: weights (out x in, row-major) f32 | biases f32
//
// Little-endian throughout. Parameters are stored at 32-bit precision, so a
// decoded model equals the saved one rounded to float.

#ifndef BAM_SUBSTITUTE_CHECKPOINT_H_
#define BAM_SUBSTITUTE_CHECKPOINT_H_

#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "bam/substitute/network.h"
#include "json.hpp"

namespace bam {

inline constexpr std::string_view kCheckpointMagic = "BAMM";

nlohmann::json NetSpecToJson(const NetSpec& spec);
absl::StatusOr<NetSpec> NetSpecFromJson(const nlohmann::json& json);

std::string EncodeCheckpoint(const Mlp& model);
absl::StatusOr<Mlp> DecodeCheckpoint(std::string_view bytes);

absl::Status WriteCheckpoint(const std::string& path, const Mlp& model);
absl::StatusOr<Mlp> ReadCheckpoint(const std::string& path);

// The model with every parameter rounded to float, i.e. what a checkpoint
// round-trip yields.
Mlp RoundToCheckpointPrecision(const Mlp& model);

}  // namespace bam

#endif  // BAM_SUBSTITUTE_CHECKPOINT_H_
