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

// Desk-scale training sets for in-repo victims. The attacker side never reads
// these; only victim training and evaluation do.

#ifndef BAM_ORACLE_SYNTHETIC_DATA_H_
#define BAM_ORACLE_SYNTHETIC_DATA_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "bam/core/types.h"

namespace bam {

enum class SyntheticKind {
  // Isotropic Gaussian blobs around explicit centers.
  kBlobs,
  // Image-like vectors in [0,1]^d: each class is a smooth random template on
  // a square grid, observed with random contrast and pixel noise.
  kPrototypes,
};

struct SyntheticDataSpec {
  SyntheticKind kind = SyntheticKind::kBlobs;
  size_t num_classes = 3;
  size_t dim = 2;
  size_t per_class = 500;
  double noise = 0.1;
  // kBlobs only; num_classes rows of length dim.
  std::vector<std::vector<double>> centers;
  uint64_t seed = 0;
};

// Class-balanced, interleaved (0, 1, ..., C-1, 0, 1, ...) order.
absl::StatusOr<ExampleSet> GenerateSyntheticData(const SyntheticDataSpec& spec);

}  // namespace bam

#endif  // BAM_ORACLE_SYNTHETIC_DATA_H_
