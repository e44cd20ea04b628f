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

#ifndef SAMA_COMMON_ERRORS_H_
#define SAMA_COMMON_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sama {

enum class ErrorCode {
  kInvalidArgument,
  kDomainError,
  kNotInvertible,
  kSearchExhausted,
  kPoolExhausted,
  kKeyMismatch,
  kPlaintextOutOfRange,
  kEmptyUniverse,
  kUnknownAttribute,
  kMalformedTree,
  kSyntaxError,
  kPolicyNotSatisfied,
  kIntegrityError,
  kUnknownDataOwner,
  kEmptyRange,
  kMaskAlreadyConsumed,
  kNoData,
  kUnknownEndpoint,
  kUnknownMessageType,
  kMalformedMessage,
  kProtocolState,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as sama::Error carrying a stable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Policy text errors also carry the byte offset where parsing stopped.
class PolicySyntaxError : public Error {
 public:
  PolicySyntaxError(std::size_t position, const std::string& message)
      : Error(ErrorCode::kSyntaxError,
              message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace sama

#endif  // SAMA_COMMON_ERRORS_H_
