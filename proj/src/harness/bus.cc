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

#include <utility>

#include "sama/common/errors.h"

namespace sama::harness {

std::string_view RoleName(Role role) {
  switch (role) {
    case Role::kDataOwner: return "DO";
    case Role::kServiceProvider: return "SP";
    case Role::kComputationalParty: return "CP";
    case Role::kDataRequester: return "DR";
    case Role::kKeyAuthority: return "KA";
  }
  return "??";
}

std::string EndpointName(const Endpoint& e) {
  return std::string(RoleName(e.role)) + "/" + std::to_string(e.instance);
}

Bytes EncodeEnvelope(const Message& m) {
  ByteWriter w;
  w.PutU16(m.type);
  w.PutU64(m.request_id);
  w.PutU8(static_cast<std::uint8_t>(m.sender.role));
  w.PutU8(static_cast<std::uint8_t>(m.receiver.role));
  w.PutBlob(m.payload);
  return w.Release();
}

Envelope DecodeEnvelope(std::span<const std::uint8_t> wire) {
  ByteReader r(wire);
  Envelope e;
  e.type = r.GetU16();
  e.request_id = r.GetU64();
  const auto role = [](std::uint8_t b) {
    if (b < 1 || b > 5) {
      throw Error(ErrorCode::kMalformedMessage, "bad role byte");
    }
    return static_cast<Role>(b);
  };
  e.sender = role(r.GetU8());
  e.receiver = role(r.GetU8());
  e.payload = r.GetBlob();
  r.ExpectDone();
  return e;
}

std::uint64_t LinkTotals::PayloadBits() const {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < kWireSectionCount; ++i) {
    if (i != static_cast<std::size_t>(WireSection::kFraming)) {
      total += section_bits[i];
    }
  }
  return total;
}

const TranscriptEntry& Transcript::Append(TranscriptEntry e) {
  e.seq = entries_.size() + 1;
  entries_.push_back(std::move(e));
  return entries_.back();
}

LinkTotals Transcript::Link(Role from, Role to,
                            std::optional<std::uint64_t> request_id) const {
  LinkTotals t;
  for (const auto& e : entries_) {
    if (e.sender.role != from || e.receiver.role != to) continue;
    if (request_id && e.request_id != *request_id) continue;
    for (std::size_t i = 0; i < kWireSectionCount; ++i) {
      t.section_bits[i] += 8 * e.sections[i];
    }
    t.envelope_bits += 8 * kEnvelopeHeaderBytes;
    ++t.messages;
  }
  return t;
}

std::vector<TranscriptEntry> Transcript::ForRequest(
    std::uint64_t request_id) const {
  std::vector<TranscriptEntry> out;
  for (const auto& e : entries_) {
    if (e.request_id == request_id) out.push_back(e);
  }
  return out;
}

Bytes Transcript::Serialize() const {
  ByteWriter w;
  for (const auto& e : entries_) {
    w.PutU64(e.seq);
    w.PutU8(static_cast<std::uint8_t>(e.sender.role));
    w.PutU64(e.sender.instance);
    w.PutU8(static_cast<std::uint8_t>(e.receiver.role));
    w.PutU64(e.receiver.instance);
    Message m{e.type, e.request_id, e.sender, e.receiver, e.payload, {}};
    w.PutBlob(EncodeEnvelope(m));
  }
  return w.Release();
}

void MessageBus::Register(const Endpoint& e) {
  std::lock_guard lock(mu_);
  endpoints_.insert(e);
}

bool MessageBus::IsRegistered(const Endpoint& e) const {
  std::lock_guard lock(mu_);
  return endpoints_.count(e) > 0;
}

void MessageBus::Send(Message m) {
  std::lock_guard lock(mu_);
  for (const Endpoint* e : {&m.sender, &m.receiver}) {
    if (!endpoints_.count(*e)) {
      throw Error(ErrorCode::kUnknownEndpoint,
                  "endpoint " + EndpointName(*e) + " not registered");
    }
  }
  std::uint64_t total = 0;
  for (auto n : m.sections) total += n;
  if (total != m.payload.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "section tally does not cover the payload");
  }
  transcript_.Append(
      {0, m.sender, m.receiver, m.type, m.request_id, m.payload, m.sections});
  queue_.push_back(std::move(m));
}

std::optional<Message> MessageBus::Next() {
  std::lock_guard lock(mu_);
  if (queue_.empty()) return std::nullopt;
  Message m = std::move(queue_.front());
  queue_.pop_front();
  return m;
}

std::size_t MessageBus::pending() const {
  std::lock_guard lock(mu_);
  return queue_.size();
}

}  // namespace sama::harness
