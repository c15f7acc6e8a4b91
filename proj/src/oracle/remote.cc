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

#include "bam/oracle/remote.h"

#include <algorithm>
#include <functional>
#include <mutex>
#include <thread>

#include "absl/strings/str_cat.h"
#include "bam/core/status_macros.h"
#include "glog/logging.h"
#include "httplib.h"
#include "json.hpp"

namespace bam {
namespace {

using nlohmann::json;

absl::StatusOr<json> ParseObject(std::string_view body) {
  json parsed = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded() || !parsed.is_object()) {
    return absl::UnavailableError("response body is not a JSON object");
  }
  return parsed;
}

absl::StatusOr<size_t> PositiveCount(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_unsigned() || it->get<size_t>() == 0) {
    return absl::UnavailableError(
        absl::StrCat("missing or invalid \"", key, "\""));
  }
  return it->get<size_t>();
}

}  // namespace

std::string EncodePredictRequest(std::span<const Sample> batch) {
  json inputs = json::array();
  for (const Sample& s : batch) {
    inputs.push_back(std::vector<float>(s.features().begin(), s.features().end()));
  }
  return json{{"inputs", std::move(inputs)}}.dump();
}

absl::StatusOr<std::vector<Sample>> DecodePredictRequest(std::string_view body,
                                                         size_t input_dim) {
  json parsed = json::parse(body, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object() ||
      !parsed.contains("inputs") || !parsed["inputs"].is_array()) {
    return absl::InvalidArgumentError("request must be {\"inputs\": [...]}");
  }
  std::vector<Sample> out;
  for (const json& row : parsed["inputs"]) {
    if (!row.is_array() || row.size() != input_dim) {
      return absl::InvalidArgumentError(
          absl::StrCat("each input must be an array of ", input_dim, " numbers"));
    }
    std::vector<float> features;
    for (const json& v : row) {
      if (!v.is_number()) {
        return absl::InvalidArgumentError("input entries must be numbers");
      }
      features.push_back(v.get<float>());
    }
    out.emplace_back(std::move(features));
  }
  return out;
}

std::string EncodePredictResponse(std::span<const SoftLabel> labels,
                                  std::string_view model_id) {
  json rows = json::array();
  for (const SoftLabel& l : labels) {
    rows.push_back(std::vector<float>(l.probs().begin(), l.probs().end()));
  }
  return json{{"probabilities", std::move(rows)},
              {"model_id", std::string(model_id)}}
      .dump();
}

absl::StatusOr<std::vector<SoftLabel>> DecodePredictResponse(
    std::string_view body, size_t expected_rows, size_t class_count) {
  ASSIGN_OR_RETURN(json parsed, ParseObject(body));
  auto model_id = parsed.find("model_id");
  if (model_id == parsed.end() || !model_id->is_string()) {
    return absl::UnavailableError("response lacks a string \"model_id\"");
  }
  auto rows = parsed.find("probabilities");
  if (rows == parsed.end() || !rows->is_array() ||
      rows->size() != expected_rows) {
    return absl::UnavailableError(absl::StrCat(
        "response must carry ", expected_rows, " probability rows"));
  }
  std::vector<SoftLabel> out;
  out.reserve(expected_rows);
  for (const json& row : *rows) {
    if (!row.is_array() || row.size() != class_count) {
      return absl::UnavailableError(absl::StrCat(
          "probability rows must have ", class_count, " entries"));
    }
    std::vector<float> probs;
    probs.reserve(class_count);
    for (const json& v : row) {
      if (!v.is_number()) {
        return absl::UnavailableError("probabilities must be numbers");
      }
      probs.push_back(v.get<float>());
    }
    SoftLabel label(std::move(probs));
    if (absl::Status s = ValidateSoftLabel(label, class_count); !s.ok()) {
      return absl::UnavailableError(
          absl::StrCat("invalid probability row: ", s.message()));
    }
    out.push_back(std::move(label));
  }
  return out;
}

absl::StatusOr<RemoteInfo> DecodeInfoResponse(std::string_view body) {
  ASSIGN_OR_RETURN(json parsed, ParseObject(body));
  RemoteInfo info;
  ASSIGN_OR_RETURN(info.input_dim, PositiveCount(parsed, "input_dim"));
  ASSIGN_OR_RETURN(info.class_count, PositiveCount(parsed, "class_count"));
  if (info.class_count < 2) {
    return absl::UnavailableError("class_count must be at least 2");
  }
  return info;
}

absl::Status DecodeHealthResponse(std::string_view body) {
  ASSIGN_OR_RETURN(json parsed, ParseObject(body));
  auto status = parsed.find("status");
  if (status == parsed.end() || *status != "ok") {
    return absl::UnavailableError("health status is not \"ok\"");
  }
  return absl::OkStatus();
}

namespace {

absl::StatusOr<std::string> RequestOnce(
    const std::string& base_url, const RemoteOptions& options,
    const std::string& path,
    const std::function<httplib::Result(httplib::Client&)>& request) {
  // A fresh connection per request, so concurrent PredictProba calls never
  // share a socket.
  httplib::Client cli(base_url);
  cli.set_connection_timeout(options.timeout);
  cli.set_read_timeout(options.timeout);
  cli.set_write_timeout(options.timeout);
  httplib::Result res = request(cli);
  if (!res) {
    return absl::UnavailableError(absl::StrCat(
        "transport error on ", path, ": ", httplib::to_string(res.error())));
  }
  if (res->status != 200) {
    return absl::UnavailableError(
        absl::StrCat(path, " returned HTTP ", res->status));
  }
  return res->body;
}

// Runs request, then validates the body with check. Transport and schema
// failures are both retried, up to options.max_attempts in total.
absl::Status CallWithRetries(
    const std::string& base_url, const RemoteOptions& options,
    const std::string& path,
    const std::function<httplib::Result(httplib::Client&)>& request,
    const std::function<absl::Status(const std::string&)>& check) {
  absl::Status last = absl::UnavailableError("no attempt made");
  std::chrono::milliseconds backoff = options.initial_backoff;
  for (int attempt = 1; attempt <= options.max_attempts; ++attempt) {
    absl::StatusOr<std::string> body =
        RequestOnce(base_url, options, path, request);
    last = body.ok() ? check(*body) : body.status();
    if (last.ok()) return last;
    LOG(WARNING) << "oracle request " << path << " attempt " << attempt << "/"
                 << options.max_attempts << " failed: " << last;
    if (attempt < options.max_attempts) {
      std::this_thread::sleep_for(backoff);
      backoff = std::min(backoff * 2, options.max_backoff);
    }
  }
  return absl::UnavailableError(absl::StrCat("oracle request ", path,
                                             " failed after ",
                                             options.max_attempts,
                                             " attempts: ", last.message()));
}

}  // namespace

RemoteOracle::RemoteOracle(std::string base_url, RemoteOptions options,
                           RemoteInfo info)
    : Oracle(info.input_dim, info.class_count, OracleBackend::kRemote),
      base_url_(std::move(base_url)),
      options_(options) {}

absl::StatusOr<std::unique_ptr<RemoteOracle>> RemoteOracle::Connect(
    const std::string& base_url, RemoteOptions options) {
  if (options.batch_limit == 0 || options.max_attempts < 1) {
    return absl::InvalidArgumentError(
        "remote batch_limit and max_attempts must be positive");
  }
  RemoteInfo info;
  RETURN_IF_ERROR(CallWithRetries(
      base_url, options, "/v1/info",
      [](httplib::Client& cli) { return cli.Get("/v1/info"); },
      [&](const std::string& body) {
        absl::StatusOr<RemoteInfo> decoded = DecodeInfoResponse(body);
        if (decoded.ok()) info = *decoded;
        return decoded.status();
      }));
  return std::unique_ptr<RemoteOracle>(
      new RemoteOracle(base_url, options, info));
}

std::string RemoteOracle::last_model_id() const {
  std::lock_guard<std::mutex> lock(model_id_mu_);
  return model_id_;
}

absl::StatusOr<std::vector<SoftLabel>> RemoteOracle::Predict(
    std::span<const Sample> batch) {
  std::vector<SoftLabel> out;
  out.reserve(batch.size());
  for (size_t start = 0; start < batch.size(); start += options_.batch_limit) {
    const auto chunk = batch.subspan(
        start, std::min(options_.batch_limit, batch.size() - start));
    const std::string request = EncodePredictRequest(chunk);
    std::vector<SoftLabel> labels;
    std::string model_id;
    RETURN_IF_ERROR(CallWithRetries(
        base_url_, options_, "/v1/predict",
        [&](httplib::Client& cli) {
          return cli.Post("/v1/predict", request, "application/json");
        },
        [&](const std::string& body) {
          absl::StatusOr<std::vector<SoftLabel>> decoded =
              DecodePredictResponse(body, chunk.size(), num_classes());
          if (!decoded.ok()) return decoded.status();
          labels = std::move(*decoded);
          model_id = json::parse(body).at("model_id").get<std::string>();
          return absl::OkStatus();
        }));
    {
      std::lock_guard<std::mutex> lock(model_id_mu_);
      model_id_ = std::move(model_id);
    }
    out.insert(out.end(), std::make_move_iterator(labels.begin()),
               std::make_move_iterator(labels.end()));
  }
  return out;
}

absl::StatusOr<RemoteInfo> ServeCheck(const std::string& base_url,
                                      RemoteOptions options) {
  httplib::Client cli(base_url);
  cli.set_connection_timeout(options.timeout);
  cli.set_read_timeout(options.timeout);
  auto health = cli.Get("/v1/health");
  if (!health || health->status != 200) {
    return absl::UnavailableError(absl::StrCat(base_url, "/v1/health unreachable"));
  }
  RETURN_IF_ERROR(DecodeHealthResponse(health->body));
  auto info = cli.Get("/v1/info");
  if (!info || info->status != 200) {
    return absl::UnavailableError(absl::StrCat(base_url, "/v1/info unreachable"));
  }
  return DecodeInfoResponse(info->body);
}

}  // namespace bam
