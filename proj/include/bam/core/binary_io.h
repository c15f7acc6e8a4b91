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

// Little-endian encoding helpers for the binary containers. Independent of
// host byte order.

#ifndef BAM_CORE_BINARY_IO_H_
#define BAM_CORE_BINARY_IO_H_

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace bam {

class ByteWriter {
 public:
  void PutU32(uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<char>(v >> (8 * i)));
  }
  void PutF32(float v) { PutU32(std::bit_cast<uint32_t>(v)); }
  void PutBytes(std::string_view s) { bytes_.append(s); }

  const std::string& bytes() const { return bytes_; }
  std::string Release() { return std::move(bytes_); }

 private:
  std::string bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  absl::StatusOr<uint32_t> GetU32() {
    if (remaining() < 4) return Truncated();
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<uint32_t>(static_cast<unsigned char>(bytes_[pos_ + i]))
           << (8 * i);
    }
    pos_ += 4;
    return v;
  }
  absl::StatusOr<float> GetF32() {
    auto v = GetU32();
    if (!v.ok()) return v.status();
    return std::bit_cast<float>(*v);
  }
  absl::StatusOr<std::string_view> GetBytes(size_t n) {
    if (remaining() < n) return Truncated();
    std::string_view out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  size_t remaining() const { return bytes_.size() - pos_; }

 private:
  static absl::Status Truncated() {
    return absl::DataLossError("truncated binary container");
  }

  std::string_view bytes_;
  size_t pos_ = 0;
};

absl::StatusOr<std::string> ReadFileBytes(const std::string& path);
absl::Status WriteFileBytes(const std::string& path, std::string_view bytes);

}  // namespace bam

#endif  // BAM_CORE_BINARY_IO_H_
