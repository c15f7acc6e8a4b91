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

#ifndef BAM_CORE_STATUS_MACROS_H_
#define BAM_CORE_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define BAM_STATUS_CONCAT_INNER_(a, b) a##b
#define BAM_STATUS_CONCAT_(a, b) BAM_STATUS_CONCAT_INNER_(a, b)

#define RETURN_IF_ERROR(expr)                  \
  do {                                         \
    const ::absl::Status _bam_status = (expr); \
    if (!_bam_status.ok()) return _bam_status; \
  } while (0)

#define BAM_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, rexpr) \
  auto tmp = (rexpr);                               \
  if (!tmp.ok()) return tmp.status();               \
  lhs = std::move(tmp).value()

#define ASSIGN_OR_RETURN(lhs, rexpr) \
  BAM_ASSIGN_OR_RETURN_IMPL_(        \
      BAM_STATUS_CONCAT_(_bam_statusor_, __LINE__), lhs, rexpr)

#endif  // BAM_CORE_STATUS_MACROS_H_
