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

#include "bam/oracle/oracle.h"

#include "absl/strings/str_cat.h"
#include "bam/core/status_macros.h"

namespace bam {

std::string_view OracleBackendName(OracleBackend backend) {
  switch (backend) {
    case OracleBackend::kLinearSoftmax:
      return "analytic-linear-softmax";
    case OracleBackend::kGaussianMixture:
      return "analytic-gaussian-mixture";
    case OracleBackend::kTrainedNet:
      return "in-repo-trained-net";
    case OracleBackend::kRemote:
      return "remote-http";
  }
  return "unknown";
}

absl::StatusOr<std::vector<SoftLabel>> Oracle::PredictProba(
    std::span<const Sample> batch) {
  if (batch.empty()) return absl::InvalidArgumentError("empty query batch");
  for (size_t i = 0; i < batch.size(); ++i) {
    if (batch[i].dim() != input_dim_) {
      return absl::InvalidArgumentError(
          absl::StrCat("query ", i, " has dimension ", batch[i].dim(),
                       ", oracle expects ", input_dim_));
    }
  }
  ASSIGN_OR_RETURN(std::vector<SoftLabel> labels, Predict(batch));
  if (labels.size() != batch.size()) {
    return absl::InternalError(absl::StrCat(
        "oracle returned ", labels.size(), " labels for ", batch.size(),
        " queries"));
  }
  queries_.fetch_add(batch.size(), std::memory_order_relaxed);
  return labels;
}

}  // namespace bam
