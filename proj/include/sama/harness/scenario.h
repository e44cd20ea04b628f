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


#ifndef SAMA_HARNESS_SCENARIO_H_
#define SAMA_HARNESS_SCENARIO_H_

// JSON scenarios: data owners with data and policies, requesters with
// attribute sets, and a request list. Every request is checked against a
// plaintext oracle unless the scenario states the expectation itself.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sama/common/bytes.h"
#include "sama/common/errors.h"
#include "sama/protocol/deployment.h"

namespace sama::harness {

struct ScenarioOwner {
  std::string name;
  std::optional<std::string> ap_s;
  std::optional<std::string> ap_m;
  std::vector<BigInt> data;
};

struct ScenarioRequester {
  std::string name;
  cpabe::AttributeSet attributes;
  // What the requester tells SP; defaults to `attributes`.
  std::optional<cpabe::AttributeSet> claimed;
};

struct ScenarioRequest {
  protocol::RequestKind kind = protocol::RequestKind::kDoDo;
  std::string owner;      // do-do, drs-do
  std::string requester;  // drs-do, drs-dos
  std::uint64_t first = 0;
  std::optional<std::uint64_t> count;  // default: through the last item
  std::optional<std::uint64_t> slot;   // drs-dos
  std::optional<BigInt> expect;
  std::optional<ErrorCode> expect_error;
};

struct Scenario {
  int n_bits = 1024;
  std::uint64_t seed = 1;
  bool allow_any_size = false;
  protocol::DemaskMode demask = protocol::DemaskMode::kNegateInClear;
  // Default: every attribute named in a policy or requester set.
  std::vector<std::string> universe;
  std::vector<ScenarioOwner> owners;
  std::vector<ScenarioRequester> requesters;
  std::vector<ScenarioRequest> requests;
};

// Throws kInvalidArgument with the offending field.
Scenario ParseScenario(std::string_view json_text);
Scenario LoadScenario(const std::string& path);

struct RequestReport {
  std::size_t index = 0;
  protocol::RequestKind kind = protocol::RequestKind::kDoDo;
  std::optional<BigInt> value;
  std::optional<ErrorCode> error;
  std::optional<BigInt> want_value;
  std::optional<ErrorCode> want_error;
  bool pass = false;
};

struct ScenarioResult {
  std::vector<RequestReport> requests;
  std::vector<std::string> warnings;
  Bytes transcript;  // canonical transcript bytes

  bool ok() const;
};

ScenarioResult RunScenario(const Scenario& scenario);

// One JSON object per line.
std::string FormatRequestReport(const RequestReport& r);

ErrorCode ParseErrorCode(std::string_view name);

}  // namespace sama::harness

#endif  // SAMA_HARNESS_SCENARIO_H_
