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


#ifndef SAMA_PROTOCOL_MESSAGES_H_
#define SAMA_PROTOCOL_MESSAGES_H_

// Payload codecs for every protocol message. Each Encode* returns a
// ready-to-send payload with its section tally; each Decode* rejects
// trailing or missing bytes with kMalformedMessage.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sama/common/bytes.h"
#include "sama/common/errors.h"
#include "sama/cpabe/cpabe.h"
#include "sama/paillier/paillier.h"
#include "sama/vphe/vphe.h"

namespace sama::protocol {

enum class MessageType : std::uint16_t {
  kPolicyRegister = 0x0001,     // DO -> SP
  kDataUpload = 0x0002,         // DO -> SP
  kPolicyAck = 0x0003,          // SP -> DO
  kDoAggregateRequest = 0x0010, // DO -> SP
  kDoAggregateResult = 0x0011,  // SP -> DO
  kDrSingleRequest = 0x0020,    // DR -> SP
  kMaskedSingle = 0x0021,       // SP -> CP
  kPreparedResult = 0x0022,     // CP -> SP
  kResultBundle = 0x0023,       // SP -> DR
  kDrMultiRequest = 0x0030,     // DR -> SP
  kMaskedMulti = 0x0031,        // SP -> CP
  kPreparedMultiResult = 0x0032,// CP -> SP
  kKeyRequest = 0x0040,         // CP -> KA
  kPaillierKeyIssue = 0x0041,   // KA -> CP
  kRequestFailed = 0x00F0,      // SP -> requester
};

std::string MessageTypeName(std::uint16_t type);
// Throws kUnknownMessageType.
MessageType CheckMessageType(std::uint16_t type);

struct Payload {
  Bytes bytes;
  SectionTally sections{};
};

struct IndexRange {
  std::uint64_t first = 0;
  std::uint64_t count = 0;
};

Payload EncodePolicyRegister(const cpabe::AccessTree& ap_s,
                             const cpabe::AccessTree& ap_m);
std::pair<cpabe::AccessTree, cpabe::AccessTree> DecodePolicyRegister(
    const Bytes& b);

Payload EncodePolicyAck(std::uint64_t version);
std::uint64_t DecodePolicyAck(const Bytes& b);

// Upload and DO-DO result share one shape: a single VP-HE ciphertext.
Payload EncodeVpheCiphertext(const vphe::Ciphertext& ct, const BigInt& n);
vphe::Ciphertext DecodeVpheCiphertext(const Bytes& b);

Payload EncodeRange(const IndexRange& range);
IndexRange DecodeRange(const Bytes& b);

struct DrSingleRequest {
  vphe::UserId target = 0;
  IndexRange range;
  cpabe::AttributeSet attributes;
};
Payload EncodeDrSingleRequest(const DrSingleRequest& req);
DrSingleRequest DecodeDrSingleRequest(const Bytes& b);

struct DrMultiRequest {
  cpabe::AttributeSet attributes;
  std::optional<std::uint64_t> slot;  // default: each DO's latest upload
};
Payload EncodeDrMultiRequest(const DrMultiRequest& req);
DrMultiRequest DecodeDrMultiRequest(const Bytes& b);

// Each ciphertext's key id names the data owner it came from.
struct MaskedBatch {
  std::vector<vphe::Ciphertext> items;
  cpabe::AccessTree policy;
};
// kMaskedSingle carries exactly one item.
Payload EncodeMaskedBatch(const MaskedBatch& batch, const BigInt& n);
MaskedBatch DecodeMaskedBatch(const Bytes& b);

Payload EncodeKeyRequest(std::uint32_t modulus_bits);
std::uint32_t DecodeKeyRequest(const Bytes& b);

Payload EncodePaillierKeyIssue(const paillier::KeyPair& kp);
paillier::KeyPair DecodePaillierKeyIssue(const Bytes& b);

// kPreparedResult, kPreparedMultiResult and kResultBundle.
struct ResultBundle {
  paillier::Ciphertext paillier_ct;
  cpabe::AbeCiphertext abe_ct;
  paillier::PublicKey ppk;
};
Payload EncodeResultBundle(const ResultBundle& bundle,
                           const cpabe::AbePublicParams& abe_pk);
ResultBundle DecodeResultBundle(const Bytes& b,
                                const cpabe::AbePublicParams& abe_pk);

struct RequestFailure {
  ErrorCode code = ErrorCode::kProtocolState;
  std::string message;
};
Payload EncodeRequestFailed(const RequestFailure& f);
RequestFailure DecodeRequestFailed(const Bytes& b);

}  // namespace sama::protocol

#endif  // SAMA_PROTOCOL_MESSAGES_H_
