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

#include "sama/common/bytes.h"

#include <cstdint>
#include <vector>

#include "gtest/gtest.h"
#include "sama/common/errors.h"
#include "sama/common/rng.h"

namespace sama {
namespace {

TEST(ByteWriterTest, BigIntFramingIsLengthPrefixedMinimalBigEndian) {
  ByteWriter w;
  w.PutBigInt(0);
  w.PutBigInt(256);
  const Bytes expected = {0, 0, 0, 0, 0, 0, 0, 2, 0x01, 0x00};
  EXPECT_EQ(w.bytes(), expected);
}

TEST(ByteWriterTest, FixedWidthPadsOnTheLeft) {
  ByteWriter w;
  w.set_section(WireSection::kHomomorphic);
  w.PutFixedBigInt(0x0102, 4);
  const Bytes expected = {0, 0, 0, 4, 0, 0, 1, 2};
  EXPECT_EQ(w.bytes(), expected);
  EXPECT_EQ(w.tally()[static_cast<int>(WireSection::kFraming)], 4u);
  EXPECT_EQ(w.tally()[static_cast<int>(WireSection::kHomomorphic)], 4u);
  EXPECT_THROW(w.PutFixedBigInt(BigInt(1) << 40, 4), Error);
}

TEST(ByteWriterTest, NegativeIntegersAreRejected) {
  ByteWriter w;
  EXPECT_THROW(w.PutBigInt(-1), Error);
}

TEST(ByteReaderTest, RandomRoundTrip) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    ByteWriter w;
    std::vector<BigInt> values;
    const int count = 1 + static_cast<int>(rng.Below(std::uint64_t{6}));
    for (int i = 0; i < count; ++i) {
      values.push_back(rng.Bits(rng.Below(std::uint64_t{700})));
      w.PutBigInt(values.back());
    }
    w.PutU16(0xBEEF);
    w.PutString("tail");
    ByteReader r(w.bytes());
    for (const auto& v : values) EXPECT_EQ(r.GetBigInt(), v);
    EXPECT_EQ(r.GetU16(), 0xBEEF);
    EXPECT_EQ(r.GetString(), "tail");
    EXPECT_TRUE(r.done());
  }
}

TEST(ByteReaderTest, TruncationIsMalformed) {
  ByteWriter w;
  w.PutBigInt(123456789);
  Bytes b = w.bytes();
  b.pop_back();
  ByteReader r(b);
  try {
    r.GetBigInt();
    FAIL() << "expected throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedMessage);
  }
}

TEST(RngTest, SameSeedSameStream) {
  Rng a(99), b(99);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.Bits(300), b.Bits(300));
  Rng c = Rng::Derive(5, "sp");
  Rng d = Rng::Derive(5, "sp");
  Rng e = Rng::Derive(5, "cp");
  const BigInt x = c.Bits(128);
  EXPECT_EQ(x, d.Bits(128));
  EXPECT_NE(x, e.Bits(128));
}

TEST(RngTest, BelowStaysInRange) {
  Rng rng(3);
  const BigInt bound("1000000000000000000000007");
  for (int i = 0; i < 500; ++i) {
    BigInt v = rng.Below(bound);
    EXPECT_GE(v, 0);
    EXPECT_LT(v, bound);
  }
}

}  // namespace
}  // namespace sama
