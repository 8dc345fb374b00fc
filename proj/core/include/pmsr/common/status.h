/*
 * Copyright 2026 The PMSR Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef PMSR_COMMON_STATUS_H_
#define PMSR_COMMON_STATUS_H_

#include <optional>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace pmsr {

// Domain error kinds. Each maps onto a canonical absl::StatusCode and is
// attached to the status as a payload so callers can branch on the kind.
enum class ErrorCode {
  kInvalidProposal,
  kSchemaViolation,
  kParseError,
  kInvalidSignature,
  kUnknownAddress,
  kNotPending,
  kBudgetExhausted,
  kMissingField,
  kEmptyDataset,
  kInvalidEpsilon,
  kOutOfRange,
  kMissingParty,
  kDuplicateParty,
  kPartyMismatch,
  kInvalidThreshold,
  kInsufficientShares,
  kDuplicateX,
  kEvaluationPointMismatch,
  kPlaintextOutOfRange,
  kMalformedCiphertext,
  kMalformedWire,
  kZeroMean,
  kEmpty,
  kZeroTotal,
  kDimensionMismatch,
  kUnknownComputation,
  kPhaseClosed,
  kQuorumMemberUnavailable,
  kConfigInvalid,
  kCategoryMismatch,
  kZeroBaseline,
  kNotImplemented,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

// Builds a status whose message reads "<ErrorName>: <detail>".
absl::Status MakeError(ErrorCode code, std::string_view detail = {});

// Returns the domain error kind carried by `status`, if any.
std::optional<ErrorCode> ErrorCodeOf(const absl::Status& status);

inline bool HasErrorCode(const absl::Status& status, ErrorCode code) {
  return ErrorCodeOf(status) == code;
}

}  // namespace pmsr

#define PMSR_RETURN_IF_ERROR(expr)            \
  do {                                        \
    ::absl::Status pmsr_status_ = (expr);     \
    if (!pmsr_status_.ok()) return pmsr_status_; \
  } while (0)

#define PMSR_CONCAT_INNER_(a, b) a##b
#define PMSR_CONCAT_(a, b) PMSR_CONCAT_INNER_(a, b)

#define PMSR_ASSIGN_OR_RETURN(lhs, rexpr) \
  PMSR_ASSIGN_OR_RETURN_IMPL_(PMSR_CONCAT_(pmsr_statusor_, __LINE__), lhs, rexpr)

#define PMSR_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                \
  if (!statusor.ok()) return statusor.status();           \
  lhs = std::move(statusor).value()

#endif  // PMSR_COMMON_STATUS_H_
