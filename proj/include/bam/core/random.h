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

#ifndef BAM_CORE_RANDOM_H_
#define BAM_CORE_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace bam {

using Rng = std::mt19937_64;

// Derives an independent stream seed from a parent seed and a label (phase
// name) or an index. Derivation is a pure function, so adding a new phase
// never perturbs the seeds of existing ones.
uint64_t DeriveSeed(uint64_t parent, std::string_view label);
uint64_t DeriveSeed(uint64_t parent, uint64_t index);

inline double UniformReal(Rng& rng, double low, double high) {
  return std::uniform_real_distribution<double>(low, high)(rng);
}

}  // namespace bam

#endif  // BAM_CORE_RANDOM_H_
