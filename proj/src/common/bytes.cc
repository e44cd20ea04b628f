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

#include <limits>

#include "sama/common/errors.h"

namespace sama {

std::string_view WireSectionName(WireSection section) {
  switch (section) {
    case WireSection::kFraming: return "framing";
    case WireSection::kHomomorphic: return "homomorphic";
    case WireSection::kAbeLeaf: return "abe_leaf";
    case WireSection::kAbeEnvelope: return "abe_envelope";
    case WireSection::kPolicy: return "policy";
    case WireSection::kControl: return "control";
    case WireSection::kKeyMaterial: return "key_material";
  }
  return "unknown";
}

void ByteWriter::Emit(std::span<const std::uint8_t> data,
                      WireSection section) {
  bytes_.insert(bytes_.end(), data.begin(), data.end());
  tally_[static_cast<std::size_t>(section)] += data.size();
}

void ByteWriter::PutU8(std::uint8_t v) {
  std::uint8_t b[1] = {v};
  Emit(b, section_);
}

void ByteWriter::PutU16(std::uint16_t v) {
  std::uint8_t b[2] = {static_cast<std::uint8_t>(v >> 8),
                       static_cast<std::uint8_t>(v)};
  Emit(b, section_);
}

void ByteWriter::PutU32(std::uint32_t v) {
  std::uint8_t b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<std::uint8_t>(v >> (24 - 8 * i));
  Emit(b, section_);
}

void ByteWriter::PutU64(std::uint64_t v) {
  std::uint8_t b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(v >> (56 - 8 * i));
  Emit(b, section_);
}

void ByteWriter::PutRaw(std::span<const std::uint8_t> data) {
  Emit(data, section_);
}

void ByteWriter::PutBlob(std::span<const std::uint8_t> data) {
  if (data.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "blob exceeds 4-byte length");
  }
  const WireSection saved = section_;
  section_ = WireSection::kFraming;
  PutU32(static_cast<std::uint32_t>(data.size()));
  section_ = saved;
  Emit(data, section_);
}

void ByteWriter::PutString(std::string_view s) {
  PutBlob(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

void ByteWriter::PutBigInt(const BigInt& v) { PutBlob(BigIntToBytes(v)); }

void ByteWriter::PutFixedBigInt(const BigInt& v, std::size_t width) {
  PutBlob(BigIntToFixedBytes(v, width));
}

void ByteWriter::Append(const ByteWriter& other) {
  bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.end());
  for (std::size_t i = 0; i < kWireSectionCount; ++i) tally_[i] += other.tally_[i];
}

std::span<const std::uint8_t> ByteReader::GetRaw(std::size_t n) {
  if (n > remaining()) {
    throw Error(ErrorCode::kMalformedMessage, "truncated input");
  }
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::uint8_t ByteReader::GetU8() { return GetRaw(1)[0]; }

std::uint16_t ByteReader::GetU16() {
  auto b = GetRaw(2);
  return static_cast<std::uint16_t>((b[0] << 8) | b[1]);
}

std::uint32_t ByteReader::GetU32() {
  auto b = GetRaw(4);
  std::uint32_t v = 0;
  for (auto x : b) v = (v << 8) | x;
  return v;
}

std::uint64_t ByteReader::GetU64() {
  auto b = GetRaw(8);
  std::uint64_t v = 0;
  for (auto x : b) v = (v << 8) | x;
  return v;
}

Bytes ByteReader::GetBlob() {
  const std::uint32_t n = GetU32();
  auto b = GetRaw(n);
  return Bytes(b.begin(), b.end());
}

std::string ByteReader::GetString() {
  Bytes b = GetBlob();
  return std::string(b.begin(), b.end());
}

BigInt ByteReader::GetBigInt() { return BigIntFromBytes(GetBlob()); }

void ByteReader::ExpectDone() const {
  if (!done()) {
    throw Error(ErrorCode::kMalformedMessage, "trailing bytes");
  }
}

Bytes BigIntToBytes(const BigInt& v) {
  if (sgn(v) < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative integer on the wire");
  }
  if (sgn(v) == 0) return {};
  Bytes out(ByteLength(v));
  std::size_t count = 0;
  mpz_export(out.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
  out.resize(count);
  return out;
}

Bytes BigIntToFixedBytes(const BigInt& v, std::size_t width) {
  Bytes minimal = BigIntToBytes(v);
  if (minimal.size() > width) {
    throw Error(ErrorCode::kInvalidArgument, "integer wider than field");
  }
  Bytes out(width - minimal.size(), 0);
  out.insert(out.end(), minimal.begin(), minimal.end());
  return out;
}

BigInt BigIntFromBytes(std::span<const std::uint8_t> data) {
  BigInt v;
  if (!data.empty()) {
    mpz_import(v.get_mpz_t(), data.size(), 1, 1, 1, 0, data.data());
  }
  return v;
}

std::size_t BitLength(const BigInt& v) {
  if (sgn(v) == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

std::size_t ByteLength(const BigInt& v) { return (BitLength(v) + 7) / 8; }

std::string ToHex(std::span<const std::uint8_t> data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

}  // namespace sama
