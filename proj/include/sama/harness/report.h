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


#ifndef SAMA_HARNESS_REPORT_H_
#define SAMA_HARNESS_REPORT_H_

// CSV and JSON-lines cost reports with a fixed column order.

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sama/harness/bench.h"

namespace sama::harness {

enum class ReportFormat { kCsv, kJsonl };

// Throws kInvalidArgument.
ReportFormat ParseReportFormat(std::string_view text);

inline constexpr std::array<std::string_view, 12> kReportColumns = {
    "use_case", "role",   "n_bits",  "N",       "attrs",    "modexp",
    "modmul",   "exp",    "bipair",  "bits_in", "bits_out", "time_ms"};

void WriteReport(std::ostream& out, const std::vector<CostRow>& rows,
                 ReportFormat format);
std::string FormatReport(const std::vector<CostRow>& rows,
                         ReportFormat format);

// Inverse of WriteReport; time_ms keeps the printed precision.
// Throws kMalformedMessage.
std::vector<CostRow> ParseReport(std::string_view text, ReportFormat format);

}  // namespace sama::harness

#endif  // SAMA_HARNESS_REPORT_H_
