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


#include "sama/harness/report.h"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "sama/common/errors.h"

namespace sama::harness {
namespace {

using Json = nlohmann::ordered_json;

std::string Millis(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", ms);
  return buf;
}

[[noreturn]] void Bad(const std::string& what) {
  throw Error(ErrorCode::kMalformedMessage, "report: " + what);
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::uint64_t ToU64(const std::string& s) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) Bad("bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    Bad("bad integer '" + s + "'");
  }
}

}  // namespace

ReportFormat ParseReportFormat(std::string_view text) {
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "jsonl") return ReportFormat::kJsonl;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown format '" + std::string(text) + "'");
}

void WriteReport(std::ostream& out, const std::vector<CostRow>& rows,
                 ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    for (std::size_t i = 0; i < kReportColumns.size(); ++i) {
      out << (i ? "," : "") << kReportColumns[i];
    }
    out << "\n";
    for (const CostRow& r : rows) {
      out << r.use_case << ',' << r.role << ',' << r.n_bits << ',' << r.n
          << ',' << r.attrs << ',' << r.ops.mod_exp << ',' << r.ops.mod_mul
          << ',' << r.ops.exp << ',' << r.ops.bi_pair << ',' << r.bits_in
          << ',' << r.bits_out << ',' << Millis(r.time_ms) << "\n";
    }
    return;
  }
  for (const CostRow& r : rows) {
    Json j;
    j["use_case"] = r.use_case;
    j["role"] = r.role;
    j["n_bits"] = r.n_bits;
    j["N"] = r.n;
    j["attrs"] = r.attrs;
    j["modexp"] = r.ops.mod_exp;
    j["modmul"] = r.ops.mod_mul;
    j["exp"] = r.ops.exp;
    j["bipair"] = r.ops.bi_pair;
    j["bits_in"] = r.bits_in;
    j["bits_out"] = r.bits_out;
    j["time_ms"] = std::stod(Millis(r.time_ms));
    out << j.dump() << "\n";
  }
}

std::string FormatReport(const std::vector<CostRow>& rows,
                         ReportFormat format) {
  std::ostringstream out;
  WriteReport(out, rows, format);
  return out.str();
}

std::vector<CostRow> ParseReport(std::string_view text, ReportFormat format) {
  std::vector<CostRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (format == ReportFormat::kCsv) {
    if (!std::getline(in, line)) Bad("missing header");
    const auto header = SplitCsv(line);
    if (header.size() != kReportColumns.size()) Bad("bad header");
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] != kReportColumns[i]) Bad("bad header");
    }
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto f = SplitCsv(line);
      if (f.size() != kReportColumns.size()) Bad("bad row '" + line + "'");
      CostRow r;
      r.use_case = f[0];
      r.role = f[1];
      r.n_bits = static_cast<int>(ToU64(f[2]));
      r.n = ToU64(f[3]);
      r.attrs = ToU64(f[4]);
      r.ops.mod_exp = ToU64(f[5]);
      r.ops.mod_mul = ToU64(f[6]);
      r.ops.exp = ToU64(f[7]);
      r.ops.bi_pair = ToU64(f[8]);
      r.bits_in = ToU64(f[9]);
      r.bits_out = ToU64(f[10]);
      try {
        r.time_ms = std::stod(f[11]);
      } catch (const std::logic_error&) {
        Bad("bad time '" + f[11] + "'");
      }
      rows.push_back(std::move(r));
    }
    return rows;
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const Json j = Json::parse(line);
      CostRow r;
      r.use_case = j.at("use_case").get<std::string>();
      r.role = j.at("role").get<std::string>();
      r.n_bits = j.at("n_bits").get<int>();
      r.n = j.at("N").get<std::uint64_t>();
      r.attrs = j.at("attrs").get<std::size_t>();
      r.ops.mod_exp = j.at("modexp").get<std::uint64_t>();
      r.ops.mod_mul = j.at("modmul").get<std::uint64_t>();
      r.ops.exp = j.at("exp").get<std::uint64_t>();
      r.ops.bi_pair = j.at("bipair").get<std::uint64_t>();
      r.bits_in = j.at("bits_in").get<std::uint64_t>();
      r.bits_out = j.at("bits_out").get<std::uint64_t>();
      r.time_ms = j.at("time_ms").get<double>();
      rows.push_back(std::move(r));
    } catch (const Json::exception& e) {
      Bad(e.what());
    }
  }
  return rows;
}

}  // namespace sama::harness
