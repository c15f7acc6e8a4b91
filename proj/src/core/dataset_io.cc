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

#include "bam/core/dataset_io.h"

#include <fstream>
#include <iterator>
#include <limits>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "bam/core/binary_io.h"
#include "bam/core/status_macros.h"

namespace bam {

absl::StatusOr<std::string> ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

absl::Status WriteFileBytes(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot open ", path, " for writing"));
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) return absl::DataLossError(absl::StrCat("short write to ", path));
  return absl::OkStatus();
}

std::string EncodeDataset(const LabeledDataset& dataset) {
  ByteWriter w;
  w.PutBytes(kDatasetMagic);
  w.PutU32(kDatasetVersion);
  w.PutU32(static_cast<uint32_t>(dataset.size()));
  w.PutU32(static_cast<uint32_t>(dataset.dim()));
  w.PutU32(static_cast<uint32_t>(dataset.num_classes()));
  for (size_t i = 0; i < dataset.size(); ++i) {
    for (float v : dataset.sample(i).features()) w.PutF32(v);
    for (float p : dataset.label(i).probs()) w.PutF32(p);
    w.PutU32(dataset.generation(i));
  }
  return w.Release();
}

absl::StatusOr<LabeledDataset> DecodeDataset(std::string_view bytes) {
  ByteReader r(bytes);
  ASSIGN_OR_RETURN(std::string_view magic, r.GetBytes(4));
  if (magic != kDatasetMagic) {
    return absl::InvalidArgumentError("not a dataset container (bad magic)");
  }
  ASSIGN_OR_RETURN(uint32_t version, r.GetU32());
  if (version != kDatasetVersion) {
    return absl::InvalidArgumentError(
        absl::StrCat("unsupported dataset version ", version));
  }
  ASSIGN_OR_RETURN(uint32_t n, r.GetU32());
  ASSIGN_OR_RETURN(uint32_t d, r.GetU32());
  ASSIGN_OR_RETURN(uint32_t num_classes, r.GetU32());
  const uint64_t record_bytes = 4ull * (d + num_classes + 1);
  if (record_bytes * n != r.remaining()) {
    return absl::DataLossError(absl::StrCat(
        "dataset body is ", r.remaining(), " bytes, expected ",
        record_bytes * n));
  }
  LabeledDataset dataset(d, num_classes);
  for (uint32_t i = 0; i < n; ++i) {
    std::vector<float> features(d);
    for (auto& v : features) {
      ASSIGN_OR_RETURN(v, r.GetF32());
    }
    std::vector<float> probs(num_classes);
    for (auto& p : probs) {
      ASSIGN_OR_RETURN(p, r.GetF32());
    }
    ASSIGN_OR_RETURN(uint32_t generation, r.GetU32());
    RETURN_IF_ERROR(dataset.Add(Sample(std::move(features)),
                                SoftLabel(std::move(probs)), generation));
  }
  return dataset;
}

absl::Status WriteDataset(const std::string& path,
                          const LabeledDataset& dataset) {
  if (dataset.size() > std::numeric_limits<uint32_t>::max()) {
    return absl::OutOfRangeError("dataset too large for the container");
  }
  return WriteFileBytes(path, EncodeDataset(dataset));
}

absl::StatusOr<LabeledDataset> ReadDataset(const std::string& path) {
  ASSIGN_OR_RETURN(std::string bytes, ReadFileBytes(path));
  return DecodeDataset(bytes);
}

std::string DatasetToCsv(const LabeledDataset& dataset) {
  std::string out;
  for (size_t j = 0; j < dataset.dim(); ++j) absl::StrAppend(&out, "f", j, ",");
  for (size_t c = 0; c < dataset.num_classes(); ++c) {
    absl::StrAppend(&out, "p", c, ",");
  }
  out += "gen\n";
  for (size_t i = 0; i < dataset.size(); ++i) {
    for (float v : dataset.sample(i).features()) {
      absl::StrAppendFormat(&out, "%.9g,", v);
    }
    for (float p : dataset.label(i).probs()) {
      absl::StrAppendFormat(&out, "%.9g,", p);
    }
    absl::StrAppend(&out, dataset.generation(i), "\n");
  }
  return out;
}

absl::Status WriteDatasetCsv(const std::string& path,
                             const LabeledDataset& dataset) {
  return WriteFileBytes(path, DatasetToCsv(dataset));
}

}  // namespace bam
