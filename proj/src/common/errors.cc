/*
 * Copyright 2026 The SAMA Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "sama/common/errors.h"

namespace sama {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kNotInvertible: return "NotInvertible";
    case ErrorCode::kSearchExhausted: return "SearchExhausted";
    case ErrorCode::kPoolExhausted: return "PoolExhausted";
    case ErrorCode::kKeyMismatch: return "KeyMismatch";
    case ErrorCode::kPlaintextOutOfRange: return "PlaintextOutOfRange";
    case ErrorCode::kEmptyUniverse: return "EmptyUniverse";
    case ErrorCode::kUnknownAttribute: return "UnknownAttribute";
    case ErrorCode::kMalformedTree: return "MalformedTree";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kPolicyNotSatisfied: return "PolicyNotSatisfied";
    case ErrorCode::kIntegrityError: return "IntegrityError";
    case ErrorCode::kUnknownDataOwner: return "UnknownDataOwner";
    case ErrorCode::kEmptyRange: return "EmptyRange";
    case ErrorCode::kMaskAlreadyConsumed: return "MaskAlreadyConsumed";
    case ErrorCode::kNoData: return "NoData";
    case ErrorCode::kUnknownEndpoint: return "UnknownEndpoint";
    case ErrorCode::kUnknownMessageType: return "UnknownMessageType";
    case ErrorCode::kMalformedMessage: return "MalformedMessage";
    case ErrorCode::kProtocolState: return "ProtocolState";
  }
  return "Unknown";
}

}  // namespace sama
