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


#include "sama/protocol/messages.h"

#include <cstdio>

namespace sama::protocol {
namespace {

Payload Finish(ByteWriter& w) {
  Payload p;
  p.sections = w.tally();
  p.bytes = w.Release();
  return p;
}

cpabe::AccessTree ReadTree(ByteReader& r) {
  const std::string text = r.GetString();
  try {
    return cpabe::ParsePolicy(text);
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedMessage,
                std::string("policy field: ") + e.what());
  }
}

void WriteTree(ByteWriter& w, const cpabe::AccessTree& tree) {
  w.set_section(WireSection::kPolicy);
  w.PutString(tree.ToString());
}

void WriteAttributes(ByteWriter& w, const cpabe::AttributeSet& attrs) {
  w.set_section(WireSection::kControl);
  w.PutU32(static_cast<std::uint32_t>(attrs.size()));
  for (const auto& a : attrs) w.PutString(a);
}

cpabe::AttributeSet ReadAttributes(ByteReader& r) {
  cpabe::AttributeSet attrs;
  const std::uint32_t n = r.GetU32();
  for (std::uint32_t i = 0; i < n; ++i) attrs.insert(r.GetString());
  return attrs;
}

void WriteRange(ByteWriter& w, const IndexRange& range) {
  w.set_section(WireSection::kControl);
  w.PutU64(range.first);
  w.PutU64(range.count);
}

IndexRange ReadRange(ByteReader& r) {
  IndexRange range;
  range.first = r.GetU64();
  range.count = r.GetU64();
  return range;
}

}  // namespace

std::string MessageTypeName(std::uint16_t type) {
  switch (static_cast<MessageType>(type)) {
    case MessageType::kPolicyRegister: return "PolicyRegister";
    case MessageType::kDataUpload: return "DataUpload";
    case MessageType::kPolicyAck: return "PolicyAck";
    case MessageType::kDoAggregateRequest: return "DoAggregateRequest";
    case MessageType::kDoAggregateResult: return "DoAggregateResult";
    case MessageType::kDrSingleRequest: return "DrSingleRequest";
    case MessageType::kMaskedSingle: return "MaskedSingle";
    case MessageType::kPreparedResult: return "PreparedResult";
    case MessageType::kResultBundle: return "ResultBundle";
    case MessageType::kDrMultiRequest: return "DrMultiRequest";
    case MessageType::kMaskedMulti: return "MaskedMulti";
    case MessageType::kPreparedMultiResult: return "PreparedMultiResult";
    case MessageType::kKeyRequest: return "KeyRequest";
    case MessageType::kPaillierKeyIssue: return "PaillierKeyIssue";
    case MessageType::kRequestFailed: return "RequestFailed";
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%04x", type);
  return buf;
}

MessageType CheckMessageType(std::uint16_t type) {
  if (MessageTypeName(type).starts_with("0x")) {
    throw Error(ErrorCode::kUnknownMessageType,
                "unknown message type " + MessageTypeName(type));
  }
  return static_cast<MessageType>(type);
}

Payload EncodePolicyRegister(const cpabe::AccessTree& ap_s,
                             const cpabe::AccessTree& ap_m) {
  ByteWriter w;
  WriteTree(w, ap_s);
  WriteTree(w, ap_m);
  return Finish(w);
}

std::pair<cpabe::AccessTree, cpabe::AccessTree> DecodePolicyRegister(
    const Bytes& b) {
  ByteReader r(b);
  cpabe::AccessTree ap_s = ReadTree(r);
  cpabe::AccessTree ap_m = ReadTree(r);
  r.ExpectDone();
  return {std::move(ap_s), std::move(ap_m)};
}

Payload EncodePolicyAck(std::uint64_t version) {
  ByteWriter w;
  w.set_section(WireSection::kControl);
  w.PutU64(version);
  return Finish(w);
}

std::uint64_t DecodePolicyAck(const Bytes& b) {
  ByteReader r(b);
  const std::uint64_t v = r.GetU64();
  r.ExpectDone();
  return v;
}

Payload EncodeVpheCiphertext(const vphe::Ciphertext& ct, const BigInt& n) {
  ByteWriter w;
  vphe::WriteCiphertext(w, ct, n);
  return Finish(w);
}

vphe::Ciphertext DecodeVpheCiphertext(const Bytes& b) {
  ByteReader r(b);
  vphe::Ciphertext ct = vphe::ReadCiphertext(r);
  r.ExpectDone();
  return ct;
}

Payload EncodeRange(const IndexRange& range) {
  ByteWriter w;
  WriteRange(w, range);
  return Finish(w);
}

IndexRange DecodeRange(const Bytes& b) {
  ByteReader r(b);
  const IndexRange range = ReadRange(r);
  r.ExpectDone();
  return range;
}

Payload EncodeDrSingleRequest(const DrSingleRequest& req) {
  ByteWriter w;
  w.set_section(WireSection::kControl);
  w.PutU64(req.target);
  WriteRange(w, req.range);
  WriteAttributes(w, req.attributes);
  return Finish(w);
}

DrSingleRequest DecodeDrSingleRequest(const Bytes& b) {
  ByteReader r(b);
  DrSingleRequest req;
  req.target = r.GetU64();
  req.range = ReadRange(r);
  req.attributes = ReadAttributes(r);
  r.ExpectDone();
  return req;
}

Payload EncodeDrMultiRequest(const DrMultiRequest& req) {
  ByteWriter w;
  WriteAttributes(w, req.attributes);
  w.PutU8(req.slot.has_value());
  w.PutU64(req.slot.value_or(0));
  return Finish(w);
}

DrMultiRequest DecodeDrMultiRequest(const Bytes& b) {
  ByteReader r(b);
  DrMultiRequest req;
  req.attributes = ReadAttributes(r);
  const bool has_slot = r.GetU8() != 0;
  const std::uint64_t slot = r.GetU64();
  if (has_slot) req.slot = slot;
  r.ExpectDone();
  return req;
}

Payload EncodeMaskedBatch(const MaskedBatch& batch, const BigInt& n) {
  ByteWriter w;
  w.set_section(WireSection::kFraming);
  w.PutU32(static_cast<std::uint32_t>(batch.items.size()));
  for (const auto& ct : batch.items) vphe::WriteCiphertext(w, ct, n);
  WriteTree(w, batch.policy);
  return Finish(w);
}

MaskedBatch DecodeMaskedBatch(const Bytes& b) {
  ByteReader r(b);
  std::vector<vphe::Ciphertext> items;
  const std::uint32_t n = r.GetU32();
  for (std::uint32_t i = 0; i < n; ++i) items.push_back(vphe::ReadCiphertext(r));
  cpabe::AccessTree policy = ReadTree(r);
  r.ExpectDone();
  return {std::move(items), std::move(policy)};
}

Payload EncodeKeyRequest(std::uint32_t modulus_bits) {
  ByteWriter w;
  w.set_section(WireSection::kControl);
  w.PutU32(modulus_bits);
  return Finish(w);
}

std::uint32_t DecodeKeyRequest(const Bytes& b) {
  ByteReader r(b);
  const std::uint32_t bits = r.GetU32();
  r.ExpectDone();
  return bits;
}

Payload EncodePaillierKeyIssue(const paillier::KeyPair& kp) {
  ByteWriter w;
  paillier::WritePublicKey(w, kp.public_key);
  w.set_section(WireSection::kKeyMaterial);
  w.PutBlob(paillier::SerializePrivateKey(kp.private_key));
  return Finish(w);
}

paillier::KeyPair DecodePaillierKeyIssue(const Bytes& b) {
  ByteReader r(b);
  paillier::KeyPair kp;
  kp.public_key = paillier::ReadPublicKey(r);
  kp.private_key = paillier::DeserializePrivateKey(r.GetBlob());
  r.ExpectDone();
  return kp;
}

Payload EncodeResultBundle(const ResultBundle& bundle,
                           const cpabe::AbePublicParams& abe_pk) {
  ByteWriter w;
  paillier::WriteCiphertext(w, bundle.paillier_ct, bundle.ppk.n);
  cpabe::WriteCiphertext(w, abe_pk, bundle.abe_ct);
  paillier::WritePublicKey(w, bundle.ppk);
  return Finish(w);
}

ResultBundle DecodeResultBundle(const Bytes& b,
                                const cpabe::AbePublicParams& abe_pk) {
  ByteReader r(b);
  paillier::Ciphertext ct = paillier::ReadCiphertext(r);
  cpabe::AbeCiphertext abe_ct = cpabe::ReadCiphertext(r, abe_pk);
  paillier::PublicKey ppk = paillier::ReadPublicKey(r);
  r.ExpectDone();
  return {std::move(ct), std::move(abe_ct), std::move(ppk)};
}

Payload EncodeRequestFailed(const RequestFailure& f) {
  ByteWriter w;
  w.set_section(WireSection::kControl);
  w.PutU16(static_cast<std::uint16_t>(f.code));
  w.PutString(f.message);
  return Finish(w);
}

RequestFailure DecodeRequestFailed(const Bytes& b) {
  ByteReader r(b);
  RequestFailure f;
  const std::uint16_t code = r.GetU16();
  if (code > static_cast<std::uint16_t>(ErrorCode::kProtocolState)) {
    throw Error(ErrorCode::kMalformedMessage, "unknown error code");
  }
  f.code = static_cast<ErrorCode>(code);
  f.message = r.GetString();
  r.ExpectDone();
  return f;
}

}  // namespace sama::protocol
