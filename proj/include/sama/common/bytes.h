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

#ifndef SAMA_COMMON_BYTES_H_
#define SAMA_COMMON_BYTES_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace sama {

using BigInt = mpz_class;
using Bytes = std::vector<std::uint8_t>;

// What a run of serialized bytes represents on the wire. Communication
// accounting reports each section separately so closed-form payload sizes can
// be checked without framing noise.
enum class WireSection : std::uint8_t {
  kFraming = 0,      // tags, ids, length prefixes
  kHomomorphic = 1,  // VP-HE / Paillier residues mod n^2
  kAbeLeaf = 2,      // per-leaf CP-ABE components
  kAbeEnvelope = 3,  // rest of a CP-ABE ciphertext
  kPolicy = 4,       // access policy text
  kControl = 5,      // request parameters, attribute claims, plaintext ints
  kKeyMaterial = 6,  // public keys and sealed-away private keys
};
inline constexpr std::size_t kWireSectionCount = 7;

std::string_view WireSectionName(WireSection section);

using SectionTally = std::array<std::uint64_t, kWireSectionCount>;

// Big-endian writer. Every byte appended is tallied against the current
// section; length prefixes always count as framing.
class ByteWriter {
 public:
  ByteWriter() = default;

  void set_section(WireSection section) { section_ = section; }
  WireSection section() const { return section_; }

  void PutU8(std::uint8_t v);
  void PutU16(std::uint16_t v);
  void PutU32(std::uint32_t v);
  void PutU64(std::uint64_t v);
  void PutRaw(std::span<const std::uint8_t> data);

  // 4-byte length prefix followed by the raw bytes.
  void PutBlob(std::span<const std::uint8_t> data);
  void PutString(std::string_view s);

  // Minimal big-endian magnitude with a 4-byte length prefix. Zero encodes
  // as an empty array. Negative values are rejected.
  void PutBigInt(const BigInt& v);

  // Left-padded big-endian magnitude of exactly `width` bytes, still with
  // the 4-byte length prefix so readers need not know the width.
  void PutFixedBigInt(const BigInt& v, std::size_t width);

  // Appends another writer's bytes and merges its tally.
  void Append(const ByteWriter& other);

  const Bytes& bytes() const { return bytes_; }
  Bytes Release() { return std::move(bytes_); }
  const SectionTally& tally() const { return tally_; }

 private:
  void Emit(std::span<const std::uint8_t> data, WireSection section);

  Bytes bytes_;
  SectionTally tally_{};
  WireSection section_ = WireSection::kControl;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t GetU8();
  std::uint16_t GetU16();
  std::uint32_t GetU32();
  std::uint64_t GetU64();
  std::span<const std::uint8_t> GetRaw(std::size_t n);
  Bytes GetBlob();
  std::string GetString();
  BigInt GetBigInt();

  std::size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }
  // Throws kMalformedMessage when trailing bytes remain.
  void ExpectDone() const;

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

// Minimal big-endian magnitude of a nonnegative integer.
Bytes BigIntToBytes(const BigInt& v);
// Left-padded to `width`; throws kInvalidArgument if v does not fit.
Bytes BigIntToFixedBytes(const BigInt& v, std::size_t width);
BigInt BigIntFromBytes(std::span<const std::uint8_t> data);

std::size_t BitLength(const BigInt& v);
std::size_t ByteLength(const BigInt& v);

std::string ToHex(std::span<const std::uint8_t> data);

}  // namespace sama

#endif  // SAMA_COMMON_BYTES_H_
