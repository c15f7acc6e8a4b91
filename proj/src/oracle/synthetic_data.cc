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

#include "bam/oracle/synthetic_data.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "bam/core/random.h"

namespace bam {
namespace {

constexpr int kBumpsPerTemplate = 3;

std::vector<double> MakeTemplate(size_t side, Rng& rng) {
  std::vector<double> pixels(side * side, 0.0);
  const double s = static_cast<double>(side);
  for (int b = 0; b < kBumpsPerTemplate; ++b) {
    const double cx = UniformReal(rng, 0.0, s);
    const double cy = UniformReal(rng, 0.0, s);
    const double width = UniformReal(rng, s / 8.0, s / 3.0);
    const double amplitude = UniformReal(rng, 0.5, 1.0);
    for (size_t y = 0; y < side; ++y) {
      for (size_t x = 0; x < side; ++x) {
        const double dx = static_cast<double>(x) + 0.5 - cx;
        const double dy = static_cast<double>(y) + 0.5 - cy;
        pixels[y * side + x] +=
            amplitude * std::exp(-(dx * dx + dy * dy) / (2 * width * width));
      }
    }
  }
  const double peak = *std::max_element(pixels.begin(), pixels.end());
  for (double& p : pixels) p /= peak;
  return pixels;
}

}  // namespace

absl::StatusOr<ExampleSet> GenerateSyntheticData(
    const SyntheticDataSpec& spec) {
  if (spec.num_classes < 2 || spec.dim == 0 || spec.per_class == 0) {
    return absl::InvalidArgumentError(
        "synthetic data needs >= 2 classes, dim > 0 and per_class > 0");
  }
  if (!(spec.noise >= 0.0)) {
    return absl::InvalidArgumentError("synthetic noise must be >= 0");
  }
  Rng rng(DeriveSeed(spec.seed, "synthetic-data"));
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<std::vector<double>> centers;
  bool clip_to_unit = false;
  switch (spec.kind) {
    case SyntheticKind::kBlobs:
      if (spec.centers.size() != spec.num_classes) {
        return absl::InvalidArgumentError(
            "blobs need one center per class");
      }
      for (const auto& c : spec.centers) {
        if (c.size() != spec.dim) {
          return absl::InvalidArgumentError(
              absl::StrCat("blob center has length ", c.size(),
                           ", expected ", spec.dim));
        }
      }
      centers = spec.centers;
      break;
    case SyntheticKind::kPrototypes: {
      const size_t side = static_cast<size_t>(
          std::lround(std::sqrt(static_cast<double>(spec.dim))));
      if (side * side != spec.dim) {
        return absl::InvalidArgumentError(
            "prototype data needs a square dimension");
      }
      for (size_t c = 0; c < spec.num_classes; ++c) {
        centers.push_back(MakeTemplate(side, rng));
      }
      clip_to_unit = true;
      break;
    }
  }

  ExampleSet out;
  for (size_t i = 0; i < spec.per_class; ++i) {
    for (size_t c = 0; c < spec.num_classes; ++c) {
      const double contrast = clip_to_unit ? UniformReal(rng, 0.7, 1.0) : 1.0;
      std::vector<float> features(spec.dim);
      for (size_t j = 0; j < spec.dim; ++j) {
        double v = contrast * centers[c][j] + spec.noise * normal(rng);
        if (clip_to_unit) v = std::clamp(v, 0.0, 1.0);
        features[j] = static_cast<float>(v);
      }
      out.samples.emplace_back(std::move(features));
      out.labels.push_back(static_cast<int>(c));
    }
  }
  return out;
}

}  // namespace bam
