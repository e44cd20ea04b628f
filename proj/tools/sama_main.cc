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


// sama: benchmark, scenario runner and cost-table conformance check.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sama/common/errors.h"
#include "sama/harness/bench.h"
#include "sama/harness/conformance.h"
#include "sama/harness/report.h"
#include "sama/harness/scenario.h"

namespace {

using namespace sama;
using namespace sama::harness;

constexpr int kDataBits = 32;  // bench draws values below 2^32

int Bench(const std::string& use_case, int n_bits, std::uint64_t count,
          std::size_t attrs, std::uint64_t seed, int repeats,
          const std::string& format, const std::string& out_path,
          bool no_timing) {
  BenchConfig c;
  c.use_case = ParseUseCase(use_case);
  c.n_bits = n_bits;
  c.count = count;
  c.attrs = attrs;
  c.seed = seed;
  c.repeats = repeats;
  c.record_time = !no_timing;
  const ReportFormat fmt = ParseReportFormat(format);
  if (BigInt(std::to_string(count)) * (BigInt(1) << kDataBits) >=
      BigInt(1) << (n_bits - 4)) {
    std::cerr << "warning: N * max(m) reaches 2^(n_bits-4); sums are only "
                 "exact mod n\n";
  }
  const BenchResult r = RunBench(c);
  if (out_path.empty() || out_path == "-") {
    WriteReport(std::cout, r.rows, fmt);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    WriteReport(out, r.rows, fmt);
  }
  return 0;
}

int Run(const std::string& path, const std::string& transcript_path) {
  const Scenario s = LoadScenario(path);
  const ScenarioResult r = RunScenario(s);
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& q : r.requests) std::cout << FormatRequestReport(q) << "\n";
  if (!transcript_path.empty()) {
    std::ofstream out(transcript_path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(r.transcript.data()),
              static_cast<std::streamsize>(r.transcript.size()));
  }
  return r.ok() ? 0 : 1;
}

int VerifyTablesCommand(const std::string& out_path, int n_bits,
                        std::uint64_t seed, bool quick) {
  ConformanceOptions o;
  o.n_bits = n_bits;
  o.seed = seed;
  if (quick) {
    o.counts = {1, 2, 10};
    o.upload_counts = {10, 100};
  }
  const ConformanceReport report = VerifyTables(
      o, [](const std::string& label) { std::cerr << "running " << label
                                                  << "\n"; });
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 2;
  }
  WriteConformance(out, report);
  std::cerr << report.checks.size() << " checks, " << report.failures()
            << " failures\n";
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy-preserving aggregation simulator"};
  app.require_subcommand(1);

  std::string use_case, format = "csv", out_path;
  int n_bits = 1024, repeats = 20;
  std::uint64_t count = 10, seed = 1;
  std::size_t attrs = 2;
  bool no_timing = false;
  auto* bench = app.add_subcommand("bench", "Run one benchmark configuration");
  bench->add_option("--use-case", use_case)
      ->required()
      ->check(CLI::IsMember({"do-do", "drs-do", "drs-dos"}));
  bench->add_option("--n-bits", n_bits)
      ->check(CLI::IsMember({512, 1024, 2048, 3072, 4096}));
  bench->add_option("--count", count, "messages (do-do, drs-do) or owners")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1'000'000}));
  bench->add_option("--attrs", attrs, "leaves in the access policy")
      ->check(CLI::Range(std::size_t{1}, std::size_t{10}));
  bench->add_option("--seed", seed);
  bench->add_option("--repeats", repeats)->check(CLI::PositiveNumber);
  bench->add_option("--format", format)
      ->check(CLI::IsMember({"csv", "jsonl"}));
  bench->add_option("--out", out_path, "report path; stdout when omitted");
  bench->add_flag("--no-timing", no_timing,
                  "write time_ms as 0 for byte-reproducible reports");

  std::string scenario, transcript_path;
  auto* run = app.add_subcommand("run", "Run a JSON scenario");
  run->add_option("--scenario", scenario)->required()->check(
      CLI::ExistingFile);
  run->add_option("--transcript", transcript_path,
                  "write the canonical transcript bytes here");

  std::string tables_out;
  int tables_bits = 1024;
  std::uint64_t tables_seed = 1;
  bool quick = false;
  auto* tables =
      app.add_subcommand("verify-tables", "Check counters and bit totals");
  tables->add_option("--out", tables_out)->required();
  tables->add_option("--n-bits", tables_bits)
      ->check(CLI::IsMember({512, 1024, 2048, 3072, 4096}));
  tables->add_option("--seed", tables_seed);
  tables->add_flag("--quick", quick, "smaller N sweep");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*bench) {
      return Bench(use_case, n_bits, count, attrs, seed, repeats, format,
                   out_path, no_timing);
    }
    if (*run) return Run(scenario, transcript_path);
    return VerifyTablesCommand(tables_out, tables_bits, tables_seed, quick);
  } catch (const sama::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
