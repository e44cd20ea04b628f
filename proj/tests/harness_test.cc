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


#include <gtest/gtest.h>

#include "sama/common/errors.h"
#include "sama/harness/bench.h"
#include "sama/harness/conformance.h"
#include "sama/harness/report.h"
#include "sama/harness/scenario.h"

namespace sama::harness {
namespace {

BenchConfig Small(RequestKind kind, std::uint64_t count, std::size_t attrs = 2,
                  std::uint64_t seed = 1) {
  BenchConfig c;
  c.use_case = kind;
  c.n_bits = 512;
  c.count = count;
  c.attrs = attrs;
  c.seed = seed;
  c.repeats = 2;
  c.record_time = false;
  return c;
}

const CostRow& Row(const BenchResult& r, const std::string& role) {
  for (const auto& row : r.rows) {
    if (row.role == role) return row;
  }
  throw Error(ErrorCode::kInvalidArgument, "no row " + role);
}

OpCounts Ops(std::uint64_t mod_exp, std::uint64_t mod_mul,
             std::uint64_t exp = 0, std::uint64_t bi_pair = 0) {
  return {mod_exp, mod_mul, exp, bi_pair, 0};
}

TEST(ReportTest, EmptyRows) {
  EXPECT_EQ(FormatReport({}, ReportFormat::kCsv),
            "use_case,role,n_bits,N,attrs,modexp,modmul,exp,bipair,bits_in,"
            "bits_out,time_ms\n");
  EXPECT_EQ(FormatReport({}, ReportFormat::kJsonl), "");
  EXPECT_TRUE(ParseReport("", ReportFormat::kJsonl).empty());
}

TEST(ReportTest, RoundTripsBothFormats) {
  const std::vector<CostRow> rows = {
      {"drs-do", "SP", 1024, 10, 3, Ops(4, 13), 14320, 16224, 10.785},
      {"drs-do", "DR", 1024, 10, 3, Ops(1, 1, 0, 3), 14048, 272, 0.5},
      {"do-do", "DO*", 512, 1, 1, Ops(1, 1), 0, 0, 0}};
  for (ReportFormat f : {ReportFormat::kCsv, ReportFormat::kJsonl}) {
    EXPECT_EQ(ParseReport(FormatReport(rows, f), f), rows);
  }
  const std::string jsonl = FormatReport({rows[0]}, ReportFormat::kJsonl);
  EXPECT_EQ(jsonl,
            "{\"use_case\":\"drs-do\",\"role\":\"SP\",\"n_bits\":1024,\"N\":10,"
            "\"attrs\":3,\"modexp\":4,\"modmul\":13,\"exp\":0,\"bipair\":0,"
            "\"bits_in\":14320,\"bits_out\":16224,\"time_ms\":10.785}\n");
}

TEST(ReportTest, RejectsMalformedInput) {
  EXPECT_THROW(ParseReport("use_case,role\n", ReportFormat::kCsv), Error);
  EXPECT_THROW(ParseReport(std::string(kReportColumns[0]), ReportFormat::kCsv),
               Error);
  EXPECT_THROW(ParseReport("{\"role\":1}\n", ReportFormat::kJsonl), Error);
  EXPECT_THROW(ParseReportFormat("xml"), Error);
  EXPECT_THROW(ParseUseCase("do-dr"), Error);
}

TEST(BenchTest, DoDoRowsMatchCostTable) {
  const BenchResult r = RunBench(Small(RequestKind::kDoDo, 10));
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(Row(r, "DO").ops, Ops(20, 10));
  EXPECT_EQ(Row(r, "DO").bits_out, 2u * 10 * 512);
  EXPECT_EQ(Row(r, "DO*").ops, Ops(1, 1));
  EXPECT_EQ(Row(r, "SP").ops, Ops(0, 9));
  EXPECT_EQ(Row(r, "DO*").bits_in, 2u * 512);
  EXPECT_EQ(Row(r, "DO*").bits_in, Row(r, "SP").bits_out);
  EXPECT_EQ(Row(r, "DO*").bits_out, Row(r, "SP").bits_in);
  for (const auto& row : r.rows) EXPECT_EQ(row.time_ms, 0.0);
}

TEST(BenchTest, RequesterCountersDoNotDependOnN) {
  for (RequestKind kind : {RequestKind::kDrsDo, RequestKind::kDrsDos}) {
    const BenchResult a = RunBench(Small(kind, 2, 3));
    const BenchResult b = RunBench(Small(kind, 12, 3));
    EXPECT_EQ(Row(a, "DR").ops, Ops(1, 1, 0, 3));
    EXPECT_EQ(Row(a, "DR").ops, Row(b, "DR").ops);
    EXPECT_EQ(Row(a, "DR").bits_in, Row(b, "DR").bits_in);
  }
  const BenchResult a = RunBench(Small(RequestKind::kDrsDos, 2));
  const BenchResult b = RunBench(Small(RequestKind::kDrsDos, 12));
  EXPECT_EQ(Row(a, "DO").ops, Ops(2, 1));
  EXPECT_EQ(Row(b, "DO").ops, Ops(2, 1));
  EXPECT_EQ(Row(b, "DO").bits_out, 2u * 512);
}

TEST(BenchTest, LinkTotalsEqualTranscriptSums) {
  const BenchResult r = RunBench(Small(RequestKind::kDrsDo, 4, 2));
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> sums;
  for (const auto& e : r.transcript.ForRequest(r.first_request)) {
    if (e.sender.role == Role::kKeyAuthority ||
        e.receiver.role == Role::kKeyAuthority) {
      continue;
    }
    const std::uint64_t payload =
        e.bits() - e.SectionBits(WireSection::kFraming);
    sums[std::string(RoleName(e.sender.role))].second += payload;
    sums[std::string(RoleName(e.receiver.role))].first += payload;
  }
  for (const char* role : {"SP", "CP", "DR"}) {
    EXPECT_EQ(Row(r, role).bits_in, sums[role].first) << role;
    EXPECT_EQ(Row(r, role).bits_out, sums[role].second) << role;
  }
}

TEST(BenchTest, SameSeedSameBytesOtherSeedSameCounters) {
  const BenchConfig c = Small(RequestKind::kDrsDos, 3, 2, 5);
  const BenchResult a = RunBench(c);
  const BenchResult b = RunBench(c);
  EXPECT_EQ(a.transcript.Serialize(), b.transcript.Serialize());
  for (ReportFormat f : {ReportFormat::kCsv, ReportFormat::kJsonl}) {
    EXPECT_EQ(FormatReport(a.rows, f), FormatReport(b.rows, f));
  }
  BenchConfig other = c;
  other.seed = 6;
  const BenchResult d = RunBench(other);
  EXPECT_NE(a.transcript.Serialize(), d.transcript.Serialize());
  ASSERT_EQ(a.rows.size(), d.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].ops, d.rows[i].ops);
    EXPECT_EQ(a.rows[i].bits_in, d.rows[i].bits_in);
    EXPECT_EQ(a.rows[i].bits_out, d.rows[i].bits_out);
  }
}

TEST(BenchTest, KeepsOneTimeSamplePerRepeat) {
  BenchConfig c = Small(RequestKind::kDrsDo, 2);
  c.repeats = 3;
  c.record_time = true;
  const BenchResult r = RunBench(c);
  for (const char* role : {"SP", "CP", "DR"}) {
    ASSERT_EQ(r.samples_ms.at(role).size(), 3u) << role;
    double sum = 0;
    for (double t : r.samples_ms.at(role)) {
      EXPECT_GE(t, 0.0);
      sum += t;
    }
    EXPECT_NEAR(Row(r, role).time_ms, sum / 3, 1e-6);
  }
  EXPECT_EQ(r.samples_ms.count("DO*"), 0u);
}

TEST(BenchTest, RejectsBadConfig) {
  EXPECT_THROW(RunBench(Small(RequestKind::kDoDo, 0)), Error);
  EXPECT_THROW(RunBench(Small(RequestKind::kDoDo, 2, 0)), Error);
  BenchConfig c = Small(RequestKind::kDoDo, 2);
  c.n_bits = 700;
  EXPECT_THROW(RunBench(c), Error);
}

// Literal bit counts at n = 1024.
TEST(BenchTest, CommunicationReferenceValues) {
  BenchConfig c = Small(RequestKind::kDoDo, 10);
  c.n_bits = 1024;
  c.repeats = 1;
  const BenchResult up = RunBench(c);
  EXPECT_EQ(up.transcript.Link(Role::kDataOwner, Role::kServiceProvider, 0)
                .Bits(WireSection::kHomomorphic),
            20480u);

  c.use_case = RequestKind::kDrsDos;
  const BenchResult multi = RunBench(c);
  const auto& t = multi.transcript;
  const std::uint64_t id = multi.first_request;
  EXPECT_EQ(t.Link(Role::kServiceProvider, Role::kComputationalParty, id)
                    .Bits(WireSection::kHomomorphic) +
                t.Link(Role::kComputationalParty, Role::kServiceProvider, id)
                    .Bits(WireSection::kHomomorphic),
            22528u);
  EXPECT_EQ(t.Link(Role::kServiceProvider, Role::kDataRequester, id)
                .Bits(WireSection::kHomomorphic),
            2048u);
  EXPECT_EQ(t.Link(Role::kServiceProvider, Role::kDataRequester, id)
                .Bits(WireSection::kAbeLeaf),
            2u * 2048);
}

TEST(ConformanceTest, SmallSweepPasses) {
  ConformanceOptions o;
  o.n_bits = 512;
  o.counts = {1, 3};
  o.leaf_counts = {1, 2};
  o.upload_counts = {4};
  const ConformanceReport r = VerifyTables(o);
  EXPECT_TRUE(r.ok());
  EXPECT_GT(r.checks.size(), 40u);
  EXPECT_FALSE(r.framing.empty());
  std::ostringstream out;
  WriteConformance(out, r);
  EXPECT_NE(out.str().find("failures=0"), std::string::npos);
}

constexpr const char* kScenario = R"({
  "n_bits": 512, "seed": 9,
  "data_owners": [
    {"name": "a", "ap_s": "x and y", "ap_m": "x", "data": [5, 6, 7]},
    {"name": "b", "ap_s": "y", "ap_m": "x or z", "data": [100, "200"]},
    {"name": "c", "ap_s": "z", "ap_m": "z", "data": [1000]}
  ],
  "data_requesters": [
    {"name": "xy", "attributes": ["x", "y"]},
    {"name": "z", "attributes": ["z"]},
    {"name": "liar", "attributes": ["y"], "claimed": ["x"]}
  ],
  "requests": [
    {"kind": "do-do", "owner": "a", "first": 1},
    {"kind": "drs-do", "requester": "xy", "owner": "a"},
    {"kind": "drs-do", "requester": "z", "owner": "a"},
    {"kind": "drs-dos", "requester": "xy"},
    {"kind": "drs-dos", "requester": "z"},
    {"kind": "drs-dos", "requester": "liar"},
    {"kind": "drs-dos", "requester": "z", "slot": 1},
    {"kind": "do-do", "owner": "c", "count": 0}
  ]
})";

TEST(ScenarioTest, OracleAgreesWithEveryRequest) {
  const Scenario s = ParseScenario(kScenario);
  EXPECT_EQ(s.universe, (std::vector<std::string>{"x", "y", "z"}));
  const ScenarioResult r = RunScenario(s);
  ASSERT_EQ(r.requests.size(), 8u);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(*r.requests[0].value, BigInt(13));
  EXPECT_EQ(*r.requests[1].value, BigInt(18));
  EXPECT_EQ(r.requests[2].error, ErrorCode::kPolicyNotSatisfied);
  EXPECT_EQ(*r.requests[3].value, BigInt(207));
  EXPECT_EQ(*r.requests[4].value, BigInt(1200));
  EXPECT_EQ(r.requests[5].error, ErrorCode::kPolicyNotSatisfied);
  EXPECT_EQ(r.requests[6].error, ErrorCode::kNoData);
  EXPECT_EQ(r.requests[7].error, ErrorCode::kEmptyRange);
  EXPECT_EQ(RunScenario(s).transcript, r.transcript);
}

TEST(ScenarioTest, WrongExpectationFails) {
  std::string text = kScenario;
  text.replace(text.find("\"first\": 1}"), 11,
               "\"first\": 1, \"expect\": 14}");
  const ScenarioResult r = RunScenario(ParseScenario(text));
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(r.requests[0].pass);
  EXPECT_NE(FormatRequestReport(r.requests[0]).find("\"FAIL\""),
            std::string::npos);
}

TEST(ScenarioTest, ParseErrorsNameTheProblem) {
  const auto fails = [](const std::string& text, const std::string& word) {
    try {
      ParseScenario(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
      EXPECT_NE(std::string(e.what()).find(word), std::string::npos)
          << e.what();
    }
  };
  fails("{\"bogus\": 1}", "bogus");
  fails("{\"requests\": [{\"kind\": \"do-do\", \"owner\": \"q\"}]}", "q");
  fails("{\"data_owners\": [{\"name\": \"a\", \"data\": [-1]}]}", "data");
  fails("{\"data_owners\": [{\"name\": \"a\", \"data\": [\"1x\"]}]}", "1x");
  fails("{\"data_owners\": [{\"name\": \"a\", \"ap_s\": \"x\"}]}", "ap_m");
  fails("{\"data_owners\": [{\"name\": \"a\", \"ap_s\": \"x and\", "
        "\"ap_m\": \"x\"}]}",
        "SyntaxError");
  fails("{\"requests\": [{\"kind\": \"all\"}]}", "all");
  fails("{\"requests\": [{\"kind\": \"drs-dos\", \"requester\": \"r\", "
        "\"expect_error\": \"Oops\"}]}",
        "r");
  fails("not json", "scenario");
}

TEST(ScenarioTest, ErrorCodeNamesRoundTrip) {
  for (int c = 0; c <= static_cast<int>(ErrorCode::kProtocolState); ++c) {
    const auto code = static_cast<ErrorCode>(c);
    EXPECT_EQ(ParseErrorCode(ErrorCodeName(code)), code);
  }
  EXPECT_THROW(ParseErrorCode("Nope"), Error);
}

}  // namespace
}  // namespace sama::harness
