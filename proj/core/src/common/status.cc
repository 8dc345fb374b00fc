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
#include "pmsr/common/status.h"

#include <array>
#include <string>
#include <utility>

#include "absl/strings/cord.h"

namespace pmsr {
namespace {

constexpr char kPayloadUrl[] = "type.pmsr/error_code";

struct ErrorInfo {
  ErrorCode code;
  std::string_view name;
  absl::StatusCode canonical;
};

constexpr std::array kErrors = {
    ErrorInfo{ErrorCode::kInvalidProposal, "InvalidProposal",
              absl::StatusCode::kInvalidArgument},
    ErrorInfo{ErrorCode::kSchemaViolation, "SchemaViolation",
              absl::StatusCode::kInvalidArgument},
    ErrorInfo{ErrorCode::kParseError, "ParseError",
              absl::StatusCode::kInvalidArgument},
    ErrorInfo{ErrorCode::kInvalidSignature, "InvalidSignature",
              absl::StatusCode::kUnauthenticated},
    ErrorInfo{ErrorCode::kUnknownAddress, "UnknownAddress",
              absl::StatusCode::kNotFound},
    ErrorInfo{ErrorCode::kNotPending, "NotPending",
              absl::StatusCode::kFailedPrecondition},
    ErrorInfo{ErrorCode::kBudgetExhausted, "BudgetExhausted",
              absl::StatusCode::kResourceExhausted},
    ErrorInfo{ErrorCode::kMissingField, "MissingField",
              absl::StatusCode::kNotFound},
    ErrorInfo{ErrorCode::kEmptyDataset, "EmptyDataset",
              absl::StatusCode::kFailedPrecondition},
    ErrorInfo{ErrorCode::kInvalidEpsilon, "InvalidEpsilon",
              absl::StatusCode::kInvalidArgument},
    ErrorInfo{ErrorCode::kOutOfRange, "OutOfRange",
              absl::StatusCode::kOutOfRange},
    ErrorInfo{ErrorCode::kMissingParty, "MissingParty",
              absl::StatusCode::kInvalidArgument},
    ErrorInfo{ErrorCode::kDuplicateParty, "DuplicateParty",
              absl::StatusCode::kInvalidArgument},
    ErrorInfo{ErrorCode::kPartyMismatch, "PartyMismatch",
              absl::StatusCode::kInvalidArgument},
    ErrorInfo{ErrorCode::kInvalidThreshold, "InvalidThreshold",
              absl::StatusCode::kInvalidArgument},
    ErrorInfo{ErrorCode::kInsufficientShares, "InsufficientShares",
              absl::StatusCode::kFailedPrecondition},
    ErrorInfo{ErrorCode::kDuplicateX, "DuplicateX",
              absl::StatusCode::kInvalidArgument},
    ErrorInfo{ErrorCode::kEvaluationPointMismatch, "EvaluationPointMismatch",
              absl::StatusCode::kInvalidArgument},
    ErrorInfo{ErrorCode::kPlaintextOutOfRange, "PlaintextOutOfRange",
              absl::StatusCode::kOutOfRange},
    ErrorInfo{ErrorCode::kMalformedCiphertext, "MalformedCiphertext",
              absl::StatusCode::kInvalidArgument},
    ErrorInfo{ErrorCode::kMalformedWire, "MalformedWire",
              absl::StatusCode::kInvalidArgument},
    ErrorInfo{ErrorCode::kZeroMean, "ZeroMean",
              absl::StatusCode::kInvalidArgument},
    ErrorInfo{ErrorCode::kEmpty, "Empty", absl::StatusCode::kInvalidArgument},
    ErrorInfo{ErrorCode::kZeroTotal, "ZeroTotal",
              absl::StatusCode::kInvalidArgument},
    ErrorInfo{ErrorCode::kDimensionMismatch, "DimensionMismatch",
              absl::StatusCode::kInvalidArgument},
    ErrorInfo{ErrorCode::kUnknownComputation, "UnknownComputation",
              absl::StatusCode::kNotFound},
    ErrorInfo{ErrorCode::kPhaseClosed, "PhaseClosed",
              absl::StatusCode::kFailedPrecondition},
    ErrorInfo{ErrorCode::kQuorumMemberUnavailable, "QuorumMemberUnavailable",
              absl::StatusCode::kUnavailable},
    ErrorInfo{ErrorCode::kConfigInvalid, "ConfigInvalid",
              absl::StatusCode::kInvalidArgument},
    ErrorInfo{ErrorCode::kCategoryMismatch, "CategoryMismatch",
              absl::StatusCode::kInvalidArgument},
    ErrorInfo{ErrorCode::kZeroBaseline, "ZeroBaseline",
              absl::StatusCode::kInvalidArgument},
    ErrorInfo{ErrorCode::kNotImplemented, "NotImplemented",
              absl::StatusCode::kUnimplemented},
    ErrorInfo{ErrorCode::kIoError, "IoError", absl::StatusCode::kInternal},
};

constexpr bool TableMatchesEnum() {
  for (size_t i = 0; i < kErrors.size(); ++i) {
    if (static_cast<size_t>(kErrors[i].code) != i) return false;
  }
  return true;
}
static_assert(TableMatchesEnum(), "kErrors must follow ErrorCode order");

const ErrorInfo& Lookup(ErrorCode code) {
  return kErrors[static_cast<size_t>(code)];
}

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) { return Lookup(code).name; }

absl::Status MakeError(ErrorCode code, std::string_view detail) {
  const ErrorInfo& info = Lookup(code);
  std::string message(info.name);
  if (!detail.empty()) {
    message += ": ";
    message += detail;
  }
  absl::Status status(info.canonical, message);
  status.SetPayload(kPayloadUrl,
                    absl::Cord(std::to_string(static_cast<int>(code))));
  return status;
}

std::optional<ErrorCode> ErrorCodeOf(const absl::Status& status) {
  if (status.ok()) return std::nullopt;
  auto payload = status.GetPayload(kPayloadUrl);
  if (!payload.has_value()) return std::nullopt;
  int value = std::stoi(std::string(*payload));
  if (value < 0 || value >= static_cast<int>(kErrors.size())) {
    return std::nullopt;
  }
  return static_cast<ErrorCode>(value);
}

}  // namespace pmsr
