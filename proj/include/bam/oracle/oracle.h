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

#ifndef BAM_ORACLE_ORACLE_H_
#define BAM_ORACLE_ORACLE_H_

#include <atomic>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "bam/core/types.h"

namespace bam {

enum class OracleBackend {
  kLinearSoftmax,
  kGaussianMixture,
  kTrainedNet,
  kRemote,
};

std::string_view OracleBackendName(OracleBackend backend);

// The black-box victim: maps batches of samples to probability vectors and
// meters every labeled sample.
//
// PredictProba is safe to call from several threads at once; the counter is
// atomic, so the total always equals the number of samples labeled.
class Oracle {
 public:
  virtual ~Oracle() = default;

  Oracle(const Oracle&) = delete;
  Oracle& operator=(const Oracle&) = delete;

  // One label per sample, in order. The query counter grows by batch.size()
  // when labels are returned; a failed call labels nothing and counts nothing.
  absl::StatusOr<std::vector<SoftLabel>> PredictProba(
      std::span<const Sample> batch);

  uint64_t query_count() const {
    return queries_.load(std::memory_order_relaxed);
  }
  size_t input_dim() const { return input_dim_; }
  size_t num_classes() const { return num_classes_; }
  OracleBackend backend() const { return backend_; }

 protected:
  Oracle(size_t input_dim, size_t num_classes, OracleBackend backend)
      : input_dim_(input_dim), num_classes_(num_classes), backend_(backend) {}

  // Called with a non-empty, dimension-checked batch.
  virtual absl::StatusOr<std::vector<SoftLabel>> Predict(
      std::span<const Sample> batch) = 0;

 private:
  const size_t input_dim_;
  const size_t num_classes_;
  const OracleBackend backend_;
  std::atomic<uint64_t> queries_{0};
};

}  // namespace bam

#endif  // BAM_ORACLE_ORACLE_H_
