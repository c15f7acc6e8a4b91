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

// Binary dataset container:
//
//   "BAMD" | version u32 | n u32 | d u32 | C u32
//   n x ( d x f32 features | C x f32 probabilities | generation u32 )
//
// All integers and floats are little-endian. The CSV export is for
// inspection only and does not round-trip.

#ifndef BAM_CORE_DATASET_IO_H_
#define BAM_CORE_DATASET_IO_H_

#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "bam/core/types.h"

namespace bam {

inline constexpr std::string_view kDatasetMagic = "BAMD";
inline constexpr uint32_t kDatasetVersion = 1;

std::string EncodeDataset(const LabeledDataset& dataset);
absl::StatusOr<LabeledDataset> DecodeDataset(std::string_view bytes);

absl::Status WriteDataset(const std::string& path,
                          const LabeledDataset& dataset);
absl::StatusOr<LabeledDataset> ReadDataset(const std::string& path);

// Header row f0..f{d-1},p0..p{C-1},gen.
std::string DatasetToCsv(const LabeledDataset& dataset);
absl::Status WriteDatasetCsv(const std::string& path,
                             const LabeledDataset& dataset);

}  // namespace bam

#endif  // BAM_CORE_DATASET_IO_H_
