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


#ifndef SAMA_HARNESS_CONFORMANCE_H_
#define SAMA_HARNESS_CONFORMANCE_H_

// Counter and byte conformance against the closed-form cost rows.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "sama/cpabe/cpabe.h"

namespace sama::harness {

struct Check {
  std::string group;  // "ops", "bits", "invariance"
  std::string name;
  std::string expected;
  std::string measured;
  bool pass = false;
};

struct ConformanceOptions {
  int n_bits = 1024;
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> counts = {1, 2, 10, 100};
  std::vector<std::size_t> leaf_counts = {1, 5, 10};
  std::vector<std::uint64_t> upload_counts = {10, 100, 1000, 10000};
  bool allow_any_size = false;
  cpabe::AbeOptions abe;
};

struct ConformanceReport {
  std::vector<Check> checks;
  // Framing totals per link, reported beside the payload checks.
  std::vector<std::string> framing;

  bool ok() const;
  std::size_t failures() const;
};

// `progress`, when set, is called with a short label before each run.
ConformanceReport VerifyTables(
    const ConformanceOptions& options,
    const std::function<void(const std::string&)>& progress = {});

void WriteConformance(std::ostream& out, const ConformanceReport& report);

}  // namespace sama::harness

#endif  // SAMA_HARNESS_CONFORMANCE_H_
