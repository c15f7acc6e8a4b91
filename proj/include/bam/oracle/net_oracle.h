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

#ifndef BAM_ORACLE_NET_ORACLE_H_
#define BAM_ORACLE_NET_ORACLE_H_

#include <memory>

#include "bam/oracle/oracle.h"
#include "bam/substitute/network.h"

namespace bam {

// A victim backed by a network trained in-process.
class NetOracle final : public Oracle {
 public:
  explicit NetOracle(Mlp model)
      : Oracle(model.spec().input_dim, model.spec().num_classes,
               OracleBackend::kTrainedNet),
        model_(std::move(model)) {}

  const Mlp& model() const { return model_; }

 protected:
  absl::StatusOr<std::vector<SoftLabel>> Predict(
      std::span<const Sample> batch) override {
    return model_.Forward(batch);
  }

 private:
  const Mlp model_;
};

}  // namespace bam

#endif  // BAM_ORACLE_NET_ORACLE_H_
