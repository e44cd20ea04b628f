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


#include "sama/harness/conformance.h"

#include <ostream>
#include <sstream>

#include "sama/harness/bench.h"

namespace sama::harness {
namespace {

std::string Show(const OpCounts& c) {
  std::ostringstream out;
  out << c.mod_exp << " ModExp + " << c.mod_mul << " ModMul + " << c.exp
      << " Exp + " << c.bi_pair << " BiPair";
  return out.str();
}

OpCounts Ops(std::uint64_t mod_exp, std::uint64_t mod_mul,
             std::uint64_t exp = 0, std::uint64_t bi_pair = 0) {
  return {mod_exp, mod_mul, exp, bi_pair, 0};
}

const CostRow* FindRow(const BenchResult& r, const std::string& role) {
  for (const auto& row : r.rows) {
    if (row.role == role) return &row;
  }
  return nullptr;
}

std::string Label(RequestKind kind, std::uint64_t n, std::size_t leaves) {
  return std::string(protocol::RequestKindName(kind)) +
         " N=" + std::to_string(n) + " leaves=" + std::to_string(leaves);
}

class Checker {
 public:
  explicit Checker(ConformanceReport* report) : report_(report) {}

  void Ops(const std::string& name, const BenchResult& r,
           const std::string& role, const OpCounts& want) {
    const CostRow* row = FindRow(r, role);
    report_->checks.push_back({"ops", name + " " + role, Show(want),
                               row ? Show(row->ops) : "missing",
                               row != nullptr && row->ops == want});
  }

  void Bits(const std::string& name, std::uint64_t want,
            std::uint64_t got) {
    report_->checks.push_back({"bits", name, std::to_string(want),
                               std::to_string(got), want == got});
  }

  void Same(const std::string& name, const std::string& a,
            const std::string& b) {
    report_->checks.push_back({"invariance", name, a, b, a == b});
  }

  void Framing(const std::string& name, const Transcript& t, Role from,
               Role to, std::uint64_t request_id) {
    const LinkTotals l = t.Link(from, to, request_id);
    report_->framing.push_back(
        name + " " + std::string(RoleName(from)) + "->" +
        std::string(RoleName(to)) + " framing_bits=" +
        std::to_string(l.FramingBits()) + " messages=" +
        std::to_string(l.messages));
  }

 private:
  ConformanceReport* report_;
};

}  // namespace

bool ConformanceReport::ok() const { return failures() == 0; }

std::size_t ConformanceReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.pass ? 0 : 1;
  return n;
}

ConformanceReport VerifyTables(
    const ConformanceOptions& options,
    const std::function<void(const std::string&)>& progress) {
  ConformanceReport report;
  Checker check(&report);
  const std::uint64_t nb = options.n_bits;

  const auto bench = [&](RequestKind kind, std::uint64_t n,
                         std::size_t leaves, std::uint64_t seed) {
    if (progress) progress(Label(kind, n, leaves));
    BenchConfig c;
    c.use_case = kind;
    c.n_bits = options.n_bits;
    c.count = n;
    c.attrs = leaves;
    c.seed = seed;
    c.repeats = 1;
    c.record_time = false;
    c.allow_any_size = options.allow_any_size;
    c.abe = options.abe;
    return RunBench(c);
  };

  for (std::uint64_t n : options.counts) {
    {
      const std::size_t leaves = options.leaf_counts.front();
      const BenchResult r = bench(RequestKind::kDoDo, n, leaves, options.seed);
      const std::string name = Label(RequestKind::kDoDo, n, leaves);
      check.Ops(name, r, "DO", Ops(2 * n, n));
      check.Ops(name, r, "DO*", Ops(1, 1));
      check.Ops(name, r, "SP", Ops(0, n - 1));
      check.Bits(name + " SP->DO homomorphic", 2 * nb,
                 r.transcript
                     .Link(Role::kServiceProvider, Role::kDataOwner,
                           r.first_request)
                     .Bits(WireSection::kHomomorphic));
      check.Bits(name + " SP->CP messages", 0,
                 r.transcript
                     .Link(Role::kServiceProvider, Role::kComputationalParty,
                           r.first_request)
                     .messages);
    }
    for (std::size_t leaves : options.leaf_counts) {
      const BenchResult r = bench(RequestKind::kDrsDo, n, leaves, options.seed);
      const std::string name = Label(RequestKind::kDrsDo, n, leaves);
      const std::uint64_t abe_bits = leaves * r.leaf_component_bits;
      check.Ops(name, r, "DO", Ops(2 * n, n));
      check.Ops(name, r, "SP", Ops(4, n + 3));
      check.Ops(name, r, "CP", Ops(3, 2, leaves));
      check.Ops(name, r, "DR", Ops(1, 1, 0, leaves));
      const auto& t = r.transcript;
      const std::uint64_t id = r.first_request;
      check.Bits(name + " SP<->CP homomorphic", 4 * nb,
                 t.Link(Role::kServiceProvider, Role::kComputationalParty, id)
                         .Bits(WireSection::kHomomorphic) +
                     t.Link(Role::kComputationalParty, Role::kServiceProvider,
                            id)
                         .Bits(WireSection::kHomomorphic));
      check.Bits(name + " CP->SP ABE leaf", abe_bits,
                 t.Link(Role::kComputationalParty, Role::kServiceProvider, id)
                     .Bits(WireSection::kAbeLeaf));
      check.Bits(name + " SP->DR homomorphic", 2 * nb,
                 t.Link(Role::kServiceProvider, Role::kDataRequester, id)
                     .Bits(WireSection::kHomomorphic));
      check.Bits(name + " SP->DR ABE leaf", abe_bits,
                 t.Link(Role::kServiceProvider, Role::kDataRequester, id)
                     .Bits(WireSection::kAbeLeaf));
      if (n == options.counts.front() && leaves == options.leaf_counts.front()) {
        check.Framing(name, t, Role::kServiceProvider,
                      Role::kComputationalParty, id);
        check.Framing(name, t, Role::kComputationalParty,
                      Role::kServiceProvider, id);
        check.Framing(name, t, Role::kServiceProvider, Role::kDataRequester,
                      id);
      }
    }
    for (std::size_t leaves : options.leaf_counts) {
      const BenchResult r =
          bench(RequestKind::kDrsDos, n, leaves, options.seed);
      const std::string name = Label(RequestKind::kDrsDos, n, leaves);
      check.Ops(name, r, "DO", Ops(2, 1));
      check.Ops(name, r, "SP", Ops(2 * n + 2, 2 * n + 2));
      check.Ops(name, r, "CP", Ops(n + 2, n + 1, leaves));
      check.Ops(name, r, "DR", Ops(1, 1, 0, leaves));
      const auto& t = r.transcript;
      const std::uint64_t id = r.first_request;
      check.Bits(name + " SP<->CP homomorphic", 2 * (n + 1) * nb,
                 t.Link(Role::kServiceProvider, Role::kComputationalParty, id)
                         .Bits(WireSection::kHomomorphic) +
                     t.Link(Role::kComputationalParty, Role::kServiceProvider,
                            id)
                         .Bits(WireSection::kHomomorphic));
      check.Bits(name + " SP->DR homomorphic", 2 * nb,
                 t.Link(Role::kServiceProvider, Role::kDataRequester, id)
                     .Bits(WireSection::kHomomorphic));
      check.Bits(name + " SP->DR ABE leaf", leaves * r.leaf_component_bits,
                 t.Link(Role::kServiceProvider, Role::kDataRequester, id)
                     .Bits(WireSection::kAbeLeaf));
    }
  }

  // Counters depend on the configuration only, never on the seed.
  for (RequestKind kind :
       {RequestKind::kDoDo, RequestKind::kDrsDo, RequestKind::kDrsDos}) {
    const std::uint64_t n = options.counts.size() > 1 ? options.counts[1] : 2;
    const std::size_t leaves = options.leaf_counts.back();
    const BenchResult a = bench(kind, n, leaves, options.seed);
    const BenchResult b = bench(kind, n, leaves, options.seed + 1);
    for (std::size_t i = 0; i < a.rows.size() && i < b.rows.size(); ++i) {
      check.Same(Label(kind, n, leaves) + " " + a.rows[i].role +
                     " counters across seeds",
                 Show(a.rows[i].ops), Show(b.rows[i].ops));
    }
  }

  for (std::uint64_t n : options.upload_counts) {
    const BenchResult r = bench(RequestKind::kDoDo, n, 1, options.seed);
    const LinkTotals up =
        r.transcript.Link(Role::kDataOwner, Role::kServiceProvider, 0);
    check.Bits("uploads N=" + std::to_string(n) + " DO->SP homomorphic",
               2 * n * nb, up.Bits(WireSection::kHomomorphic));
    report.framing.push_back("uploads N=" + std::to_string(n) +
                             " DO->SP framing_bits=" +
                             std::to_string(up.FramingBits()) +
                             " messages=" + std::to_string(up.messages));
  }
  return report;
}

void WriteConformance(std::ostream& out, const ConformanceReport& report) {
  for (const auto& c : report.checks) {
    out << (c.pass ? "PASS" : "FAIL") << " [" << c.group << "] " << c.name
        << " expected=" << c.expected << " measured=" << c.measured << "\n";
  }
  for (const auto& f : report.framing) out << "INFO " << f << "\n";
  out << "checks=" << report.checks.size()
      << " failures=" << report.failures() << "\n";
}

}  // namespace sama::harness
