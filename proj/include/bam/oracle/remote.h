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

// HTTP client for a victim served behind the prediction wire protocol
// (docs/protocol.md):
//
//   GET  /v1/health  -> {"status": "ok"}
//   GET  /v1/info    -> {"input_dim": d, "class_count": C}
//   POST /v1/predict    {"inputs": [[d floats], ...]}
//                    -> {"probabilities": [[C floats], ...], "model_id": "..."}
//
// Anything other than a 200 with a conforming body is a transport failure.

#ifndef BAM_ORACLE_REMOTE_H_
#define BAM_ORACLE_REMOTE_H_

#include <chrono>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "bam/oracle/oracle.h"

namespace bam {

struct RemoteOptions {
  size_t batch_limit = 1024;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{50};
  std::chrono::milliseconds max_backoff{1000};
  std::chrono::seconds timeout{30};
};

struct RemoteInfo {
  size_t input_dim = 0;
  size_t class_count = 0;
};

// Wire codecs, exposed for protocol conformance tests.
std::string EncodePredictRequest(std::span<const Sample> batch);
absl::StatusOr<std::vector<Sample>> DecodePredictRequest(std::string_view body,
                                                         size_t input_dim);
std::string EncodePredictResponse(std::span<const SoftLabel> labels,
                                  std::string_view model_id);
// Validates the schema: expected_rows rows of class_count probabilities that
// form valid soft labels, plus a string model_id.
absl::StatusOr<std::vector<SoftLabel>> DecodePredictResponse(
    std::string_view body, size_t expected_rows, size_t class_count);
absl::StatusOr<RemoteInfo> DecodeInfoResponse(std::string_view body);
absl::Status DecodeHealthResponse(std::string_view body);

class RemoteOracle final : public Oracle {
 public:
  // base_url like "http://127.0.0.1:8080". Fetches /v1/info to learn the
  // dimensions; fails with Unavailable if the server cannot be reached.
  static absl::StatusOr<std::unique_ptr<RemoteOracle>> Connect(
      const std::string& base_url, RemoteOptions options = {});

  const std::string& base_url() const { return base_url_; }
  // model_id reported by the most recent successful response.
  std::string last_model_id() const;

 protected:
  // Splits into requests of at most batch_limit samples. Each request is
  // retried up to max_attempts times with capped exponential backoff.
  absl::StatusOr<std::vector<SoftLabel>> Predict(
      std::span<const Sample> batch) override;

 private:
  RemoteOracle(std::string base_url, RemoteOptions options, RemoteInfo info);

  const std::string base_url_;
  const RemoteOptions options_;
  mutable std::mutex model_id_mu_;
  std::string model_id_;
};

// GET /v1/health and /v1/info against a server.
absl::StatusOr<RemoteInfo> ServeCheck(const std::string& base_url,
                                      RemoteOptions options = {});

}  // namespace bam

#endif  // BAM_ORACLE_REMOTE_H_
