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


#include "sama/harness/bus.h"

#include <gtest/gtest.h>

#include "sama/common/errors.h"

namespace sama::harness {
namespace {

const Endpoint kSp{Role::kServiceProvider, 0};
const Endpoint kCp{Role::kComputationalParty, 0};
const Endpoint kDo1{Role::kDataOwner, 1};
const Endpoint kDo2{Role::kDataOwner, 2};

Message Make(Endpoint from, Endpoint to, std::uint16_t type,
             std::uint64_t request_id, Bytes payload) {
  Message m{type, request_id, from, to, std::move(payload), {}};
  m.sections[static_cast<std::size_t>(WireSection::kControl)] =
      m.payload.size();
  return m;
}

class BusTest : public ::testing::Test {
 protected:
  void SetUp() override {
    for (const auto& e : {kSp, kCp, kDo1, kDo2}) bus_.Register(e);
  }
  MessageBus bus_;
};

TEST_F(BusTest, DeliversInGlobalSendOrder) {
  bus_.Send(Make(kDo1, kSp, 1, 0, {1}));
  bus_.Send(Make(kDo2, kSp, 2, 0, {2}));
  bus_.Send(Make(kSp, kCp, 3, 7, {3}));
  bus_.Send(Make(kDo1, kSp, 4, 0, {4}));
  EXPECT_EQ(bus_.pending(), 4u);
  for (std::uint16_t want = 1; want <= 4; ++want) {
    auto m = bus_.Next();
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(m->type, want);
    EXPECT_EQ(m->payload, Bytes{static_cast<std::uint8_t>(want)});
  }
  EXPECT_FALSE(bus_.Next().has_value());
}

TEST_F(BusTest, UnregisteredEndpointIsRejectedAndNotRecorded) {
  const Endpoint stranger{Role::kDataRequester, 9};
  try {
    bus_.Send(Make(kSp, stranger, 1, 0, {}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownEndpoint);
  }
  EXPECT_THROW(bus_.Send(Make(stranger, kSp, 1, 0, {})), Error);
  EXPECT_EQ(bus_.transcript().size(), 0u);
  EXPECT_EQ(bus_.pending(), 0u);
}

TEST_F(BusTest, TallyMustCoverPayload) {
  Message m = Make(kDo1, kSp, 1, 0, {1, 2, 3});
  m.sections[static_cast<std::size_t>(WireSection::kControl)] = 2;
  EXPECT_THROW(bus_.Send(m), Error);
}

TEST_F(BusTest, TranscriptKeepsBytesAndSequence) {
  bus_.Send(Make(kDo1, kSp, 1, 0, {9, 9}));
  bus_.Send(Make(kSp, kCp, 2, 5, {1, 2, 3}));
  bus_.Next();
  const auto& es = bus_.transcript().entries();
  ASSERT_EQ(es.size(), 2u);
  EXPECT_EQ(es[0].seq, 1u);
  EXPECT_EQ(es[1].seq, 2u);
  EXPECT_EQ(es[1].payload, (Bytes{1, 2, 3}));
  EXPECT_EQ(es[1].bits(), 24u);
  EXPECT_EQ(es[1].FramingBits(), 8 * kEnvelopeHeaderBytes);
  EXPECT_EQ(bus_.transcript().ForRequest(5).size(), 1u);
}

TEST_F(BusTest, LinkTotalsSumOverInstances) {
  Message a = Make(kDo1, kSp, 1, 0, {});
  a.payload = Bytes(10, 0);
  a.sections = {};
  a.sections[static_cast<std::size_t>(WireSection::kHomomorphic)] = 8;
  a.sections[static_cast<std::size_t>(WireSection::kFraming)] = 2;
  Message b = a;
  b.sender = kDo2;
  bus_.Send(a);
  bus_.Send(b);
  bus_.Send(Make(kSp, kCp, 3, 1, {1}));
  const LinkTotals t =
      bus_.transcript().Link(Role::kDataOwner, Role::kServiceProvider);
  EXPECT_EQ(t.messages, 2u);
  EXPECT_EQ(t.Bits(WireSection::kHomomorphic), 128u);
  EXPECT_EQ(t.PayloadBits(), 128u);
  EXPECT_EQ(t.FramingBits(), 32u + 2 * 8 * kEnvelopeHeaderBytes);
  EXPECT_EQ(bus_.transcript()
                .Link(Role::kServiceProvider, Role::kComputationalParty, 2)
                .messages,
            0u);
}

TEST(EnvelopeTest, RoundTripsAndHasFixedHeader) {
  const Message m = Make(kSp, kCp, 0x0021, 0x0102030405060708ULL, {7, 8, 9});
  const Bytes wire = EncodeEnvelope(m);
  EXPECT_EQ(wire.size(), kEnvelopeHeaderBytes + 3);
  const Envelope e = DecodeEnvelope(wire);
  EXPECT_EQ(e.type, 0x0021);
  EXPECT_EQ(e.request_id, 0x0102030405060708ULL);
  EXPECT_EQ(e.sender, Role::kServiceProvider);
  EXPECT_EQ(e.receiver, Role::kComputationalParty);
  EXPECT_EQ(e.payload, (Bytes{7, 8, 9}));
}

TEST(EnvelopeTest, RejectsTruncationAndBadRoles) {
  Bytes wire = EncodeEnvelope(Make(kSp, kCp, 1, 1, {1, 2}));
  for (std::size_t cut = 0; cut < wire.size(); ++cut) {
    Bytes shorter(wire.begin(), wire.begin() + cut);
    EXPECT_THROW(DecodeEnvelope(shorter), Error) << cut;
  }
  Bytes bad = wire;
  bad[10] = 0;
  EXPECT_THROW(DecodeEnvelope(bad), Error);
  bad[10] = 6;
  EXPECT_THROW(DecodeEnvelope(bad), Error);
  Bytes longer = wire;
  longer.push_back(0);
  EXPECT_THROW(DecodeEnvelope(longer), Error);
}

TEST(EndpointTest, Names) {
  EXPECT_EQ(EndpointName(kDo2), "DO/2");
  EXPECT_EQ(RoleName(Role::kKeyAuthority), "KA");
}

}  // namespace
}  // namespace sama::harness
