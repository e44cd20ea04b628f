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


#ifndef SAMA_HARNESS_BUS_H_
#define SAMA_HARNESS_BUS_H_

// In-process message bus. Every send is appended to the transcript before
// it is queued; delivery is global FIFO, hence FIFO on every link.

#include <compare>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sama/common/bytes.h"

namespace sama::harness {

enum class Role : std::uint8_t {
  kDataOwner = 1,
  kServiceProvider = 2,
  kComputationalParty = 3,
  kDataRequester = 4,
  kKeyAuthority = 5,
};

std::string_view RoleName(Role role);  // "DO", "SP", ...

// Instance ids are bus metadata; only the role byte goes on the wire.
struct Endpoint {
  Role role = Role::kServiceProvider;
  std::uint64_t instance = 0;

  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

std::string EndpointName(const Endpoint& e);  // "DO/3"

struct Message {
  std::uint16_t type = 0;
  std::uint64_t request_id = 0;
  Endpoint sender;
  Endpoint receiver;
  Bytes payload;
  SectionTally sections{};  // how the payload bytes split by section
};

// u16 type, u64 request id, u8 sender role, u8 receiver role, u32 length.
inline constexpr std::size_t kEnvelopeHeaderBytes = 16;

Bytes EncodeEnvelope(const Message& m);

struct Envelope {
  std::uint16_t type = 0;
  std::uint64_t request_id = 0;
  Role sender = Role::kServiceProvider;
  Role receiver = Role::kServiceProvider;
  Bytes payload;
};

// Throws kMalformedMessage.
Envelope DecodeEnvelope(std::span<const std::uint8_t> wire);

struct TranscriptEntry {
  std::uint64_t seq = 0;
  Endpoint sender;
  Endpoint receiver;
  std::uint16_t type = 0;
  std::uint64_t request_id = 0;
  Bytes payload;
  SectionTally sections{};

  std::uint64_t bits() const { return 8 * payload.size(); }
  std::uint64_t SectionBits(WireSection s) const {
    return 8 * sections[static_cast<std::size_t>(s)];
  }
  // Payload framing plus the envelope header.
  std::uint64_t FramingBits() const {
    return SectionBits(WireSection::kFraming) + 8 * kEnvelopeHeaderBytes;
  }
};

// Per-section bit totals on one directed role-to-role link.
struct LinkTotals {
  std::array<std::uint64_t, kWireSectionCount> section_bits{};
  std::uint64_t envelope_bits = 0;
  std::uint64_t messages = 0;

  std::uint64_t Bits(WireSection s) const {
    return section_bits[static_cast<std::size_t>(s)];
  }
  // Everything but framing.
  std::uint64_t PayloadBits() const;
  std::uint64_t FramingBits() const {
    return Bits(WireSection::kFraming) + envelope_bits;
  }
};

class Transcript {
 public:
  const std::vector<TranscriptEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Assigns the next sequence number.
  const TranscriptEntry& Append(TranscriptEntry e);

  // Sums over all instances of the two roles; restricted to one request
  // when given.
  LinkTotals Link(Role from, Role to,
                  std::optional<std::uint64_t> request_id = std::nullopt) const;
  std::vector<TranscriptEntry> ForRequest(std::uint64_t request_id) const;

  // Canonical bytes: per entry seq, endpoints, then the wire envelope.
  Bytes Serialize() const;

 private:
  std::vector<TranscriptEntry> entries_;
};

class MessageBus {
 public:
  void Register(const Endpoint& e);
  bool IsRegistered(const Endpoint& e) const;

  // Throws kUnknownEndpoint when either end is not registered.
  void Send(Message m);
  std::optional<Message> Next();
  std::size_t pending() const;

  const Transcript& transcript() const { return transcript_; }

 private:
  mutable std::mutex mu_;
  std::set<Endpoint> endpoints_;
  std::deque<Message> queue_;
  Transcript transcript_;
};

}  // namespace sama::harness

#endif  // SAMA_HARNESS_BUS_H_
