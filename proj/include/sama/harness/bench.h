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


#ifndef SAMA_HARNESS_BENCH_H_
#define SAMA_HARNESS_BENCH_H_

// Benchmark driver: builds a deployment for one use case, uploads once, then
// repeats the request and reports per-role counters, payload bits and time.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sama/arith/op_counts.h"
#include "sama/harness/bus.h"
#include "sama/protocol/deployment.h"

namespace sama::harness {

using protocol::RequestKind;

// Throws kInvalidArgument.
RequestKind ParseUseCase(std::string_view text);

struct BenchConfig {
  RequestKind use_case = RequestKind::kDrsDo;
  int n_bits = 1024;
  // Messages per owner for DO-DO and DRs-DO, owners for DRs-DOs.
  std::uint64_t count = 10;
  // The access policy is the AND of this many attributes.
  std::size_t attrs = 2;
  std::uint64_t seed = 1;
  int repeats = 20;
  // Off: time_ms is written as 0 so reports are byte-reproducible.
  bool record_time = true;
  bool allow_any_size = false;
  cpabe::AbeOptions abe;
};

// Role names in reports: DO, DO*, SP, CP, DR. DO* is the owner opening a
// DO-DO result. KA is not reported.
struct CostRow {
  std::string use_case;
  std::string role;
  int n_bits = 0;
  std::uint64_t n = 0;
  std::size_t attrs = 0;
  OpCounts ops;
  std::uint64_t bits_in = 0;   // payload bits, framing excluded
  std::uint64_t bits_out = 0;
  double time_ms = 0;

  friend bool operator==(const CostRow&, const CostRow&) = default;
};

struct BenchResult {
  std::vector<CostRow> rows;
  Transcript transcript;
  // Id of the first measured request; uploads carry request id 0.
  std::uint64_t first_request = 0;
  std::size_t leaf_count = 0;
  std::size_t leaf_component_bits = 0;
  // Per-repeat request times by role ("SP", "CP", "DR", "DO*").
  std::map<std::string, std::vector<double>> samples_ms;
};

// Throws kInvalidArgument on a bad config, kProtocolState if a request
// fails, returns the wrong sum, or counts differently across repeats.
BenchResult RunBench(const BenchConfig& config);

// Attribute names used by the bench: "a0", "a1", ...
std::vector<std::string> BenchUniverse(std::size_t attrs);

}  // namespace sama::harness

#endif  // SAMA_HARNESS_BENCH_H_
