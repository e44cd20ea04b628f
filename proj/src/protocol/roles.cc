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


#include "sama/protocol/roles.h"

#include <chrono>
#include <set>
#include <utility>

#include "sama/arith/primes.h"
#include "sama/common/errors.h"

namespace sama::protocol {
namespace {

const Endpoint kSp{Role::kServiceProvider, 0};
const Endpoint kCp{Role::kComputationalParty, 0};
const Endpoint kKa{Role::kKeyAuthority, 0};

BigInt Mod(const BigInt& x, const BigInt& m) {
  BigInt out;
  mpz_mod(out.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return out;
}

void Start(OutcomeMap* outcomes, std::uint64_t request_id, RequestKind kind) {
  RequestOutcome& o = (*outcomes)[request_id];
  o = RequestOutcome{};
  o.request_id = request_id;
  o.kind = kind;
}

void Fail(OutcomeMap* outcomes, std::uint64_t request_id, const Error& e) {
  RequestOutcome& o = (*outcomes)[request_id];
  o.request_id = request_id;
  o.done = true;
  o.error = e.code();
  o.message = e.what();
}

}  // namespace

std::string_view RequestKindName(RequestKind kind) {
  switch (kind) {
    case RequestKind::kDoDo: return "do-do";
    case RequestKind::kDrsDo: return "drs-do";
    case RequestKind::kDrsDos: return "drs-dos";
  }
  return "?";
}

void Actor::Send(MessageBus& bus, MessageType type, std::uint64_t request_id,
                 const Endpoint& to, Payload payload) const {
  bus.Send({static_cast<std::uint16_t>(type), request_id, endpoint_, to,
            std::move(payload.bytes), payload.sections});
}

void Actor::Reject(const Message& m) const {
  CheckMessageType(m.type);
  throw Error(ErrorCode::kUnknownMessageType,
              harness::EndpointName(endpoint_) + " does not accept " +
                  MessageTypeName(m.type));
}

// ---------------------------------------------------------------- KA

KeyAuthority::KeyAuthority(vphe::System system, std::size_t pool_k,
                           cpabe::AbeSetupResult abe, int paillier_bits,
                           Rng rng)
    : Actor({Role::kKeyAuthority, 0}),
      system_(std::move(system)),
      allocator_(pool_k),
      abe_(std::move(abe)),
      paillier_bits_(paillier_bits),
      rng_(std::move(rng)) {}

vphe::UserKeyPair KeyAuthority::EnrollDataOwner(vphe::UserId id) {
  return vphe::UserKeygen(system_.params, system_.strong, allocator_, id,
                          rng_);
}

cpabe::AbeUserKey KeyAuthority::IssueAbeKey(std::string holder,
                                            const cpabe::AttributeSet& attrs) {
  return cpabe::Keygen(abe_.pk, abe_.mk, std::move(holder), attrs, rng_,
                       &setup_ops_);
}

paillier::KeyPair KeyAuthority::MintResultKey(std::uint64_t key_id) {
  const int half = paillier_bits_ / 2;
  const BigInt top = (BigInt(1) << half) - 1;
  const BigInt floor =
      system_.params.n + (BigInt(1) << (paillier_bits_ - 4));
  if (floor >= top * top) {
    throw Error(ErrorCode::kInvalidArgument,
                "system modulus leaves no room for a result key");
  }
  for (int attempt = 0; attempt < 1'000; ++attempt) {
    const BigInt p = GenPrime(half, rng_);
    // q is drawn from [ceil(floor / p), 2^half); skip p when that window
    // is too thin to hold primes comfortably.
    BigInt q_min = floor / p + 1;
    if (q_min < (BigInt(1) << (half - 1))) q_min = BigInt(1) << (half - 1);
    if (top - q_min < (BigInt(1) << (half - 8))) continue;
    for (int draw = 0; draw < 100'000; ++draw) {
      const BigInt q = rng_.Between(q_min, top) | 1;
      if (q == p || q > top || !IsProbablePrime(q)) continue;
      try {
        return paillier::KeygenFromPrimes(p, q, key_id);
      } catch (const Error&) {
        break;  // gcd(n, phi) != 1; start over with a new p
      }
    }
  }
  throw Error(ErrorCode::kSearchExhausted, "no result key above n");
}

void KeyAuthority::Handle(const Message& m, MessageBus& bus) {
  if (m.type != static_cast<std::uint16_t>(MessageType::kKeyRequest)) {
    Reject(m);
  }
  if (static_cast<int>(DecodeKeyRequest(m.payload)) != paillier_bits_) {
    throw Error(ErrorCode::kInvalidArgument, "unsupported result key size");
  }
  Send(bus, MessageType::kPaillierKeyIssue, m.request_id, m.sender,
       EncodePaillierKeyIssue(MintResultKey(m.request_id)));
}

// ---------------------------------------------------------------- DO

DataOwner::DataOwner(vphe::UserKeyPair keys, OutcomeMap* outcomes, Rng rng)
    : Actor({Role::kDataOwner, keys.public_key.user_id}),
      keys_(std::move(keys)),
      outcomes_(outcomes),
      rng_(std::move(rng)) {}

void DataOwner::SendPolicy(MessageBus& bus, const cpabe::AccessTree& ap_s,
                           const cpabe::AccessTree& ap_m) {
  Send(bus, MessageType::kPolicyRegister, 0, kSp,
       EncodePolicyRegister(ap_s, ap_m));
}

void DataOwner::Upload(MessageBus& bus, const BigInt& m) {
  const auto start = std::chrono::steady_clock::now();
  const vphe::Ciphertext ct =
      vphe::Encrypt(keys_.public_key, m, rng_, &upload_ops_);
  upload_ms_ += std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  Send(bus, MessageType::kDataUpload, 0, kSp,
       EncodeVpheCiphertext(ct, keys_.public_key.n));
}

void DataOwner::RequestAggregate(MessageBus& bus, std::uint64_t request_id,
                                 const IndexRange& range) {
  Start(outcomes_, request_id, RequestKind::kDoDo);
  Send(bus, MessageType::kDoAggregateRequest, request_id, kSp,
       EncodeRange(range));
}

void DataOwner::Handle(const Message& m, MessageBus&) {
  switch (CheckMessageType(m.type)) {
    case MessageType::kPolicyAck:
      policy_version_ = DecodePolicyAck(m.payload);
      return;
    case MessageType::kDoAggregateResult: {
      const vphe::Ciphertext ct = DecodeVpheCiphertext(m.payload);
      RequestOutcome& o = (*outcomes_)[m.request_id];
      o.value = vphe::WeakDecrypt(keys_.weak_key, keys_.public_key, ct, &ops_);
      o.done = true;
      return;
    }
    case MessageType::kRequestFailed: {
      const RequestFailure f = DecodeRequestFailed(m.payload);
      Fail(outcomes_, m.request_id, Error(f.code, f.message));
      return;
    }
    default:
      Reject(m);
  }
}

// ---------------------------------------------------------------- SP

ServiceProvider::ServiceProvider(BigInt n, cpabe::AbePublicParams abe_pk,
                                 DemaskMode demask, const TestHooks* hooks,
                                 Rng rng)
    : Actor(kSp),
      n_(std::move(n)),
      abe_pk_(std::move(abe_pk)),
      demask_(demask),
      hooks_(hooks),
      rng_(std::move(rng)) {}

void ServiceProvider::EnrollDataOwner(const vphe::UserPublicKey& vpk) {
  if (!keys_.emplace(vpk.user_id, vpk).second) {
    throw Error(ErrorCode::kInvalidArgument, "data owner already enrolled");
  }
  order_.push_back(vpk.user_id);
  store_[vpk.user_id];
}

const PolicyRecord* ServiceProvider::policy(vphe::UserId do_id) const {
  auto it = policies_.find(do_id);
  return it == policies_.end() ? nullptr : &it->second;
}

const std::vector<vphe::Ciphertext>& ServiceProvider::store(
    vphe::UserId do_id) const {
  auto it = store_.find(do_id);
  if (it == store_.end()) {
    throw Error(ErrorCode::kUnknownDataOwner,
                "no data owner " + std::to_string(do_id));
  }
  return it->second;
}

const vphe::UserPublicKey& ServiceProvider::KeyOf(vphe::UserId do_id) const {
  auto it = keys_.find(do_id);
  if (it == keys_.end()) {
    throw Error(ErrorCode::kUnknownDataOwner,
                "no data owner " + std::to_string(do_id));
  }
  return it->second;
}

std::vector<vphe::UserId> ServiceProvider::SelectDataOwners(
    const cpabe::AttributeSet& attrs) const {
  std::vector<vphe::UserId> out;
  for (vphe::UserId id : order_) {
    const PolicyRecord* rec = policy(id);
    if (rec != nullptr && cpabe::Satisfies(rec->ap_m, attrs)) {
      out.push_back(id);
    }
  }
  return out;
}

vphe::Ciphertext ServiceProvider::Aggregate(vphe::UserId do_id,
                                            const IndexRange& range) {
  const vphe::UserPublicKey& vpk = KeyOf(do_id);
  const auto& items = store(do_id);
  if (range.count == 0 || range.first >= items.size() ||
      range.count > items.size() - range.first) {
    throw Error(ErrorCode::kEmptyRange,
                "range [" + std::to_string(range.first) + ", +" +
                    std::to_string(range.count) + ") outside " +
                    std::to_string(items.size()) + " stored items");
  }
  vphe::Ciphertext acc = items[range.first];
  for (std::uint64_t i = 1; i < range.count; ++i) {
    acc = vphe::HomAdd(vpk, acc, items[range.first + i], &ops_);
  }
  return acc;
}

BigInt ServiceProvider::DrawMask(std::uint64_t request_id,
                                 vphe::UserId do_id) {
  if (hooks_ != nullptr && hooks_->forced_mask) {
    if (auto forced = hooks_->forced_mask(request_id, do_id)) {
      return Mod(*forced, n_);
    }
  }
  return rng_.Below(n_);
}

void ServiceProvider::Handle(const Message& m, MessageBus& bus) {
  switch (CheckMessageType(m.type)) {
    case MessageType::kPolicyRegister: return OnPolicy(m, bus);
    case MessageType::kDataUpload: return OnUpload(m);
    case MessageType::kDoAggregateRequest: return OnDoAggregate(m, bus);
    case MessageType::kDrSingleRequest: return OnDrSingle(m, bus);
    case MessageType::kDrMultiRequest: return OnDrMulti(m, bus);
    case MessageType::kPreparedResult:
    case MessageType::kPreparedMultiResult:
      return OnPrepared(m, bus);
    default:
      Reject(m);
  }
}

void ServiceProvider::OnPolicy(const Message& m, MessageBus& bus) {
  const vphe::UserId do_id = m.sender.instance;
  KeyOf(do_id);
  auto [ap_s, ap_m] = DecodePolicyRegister(m.payload);
  std::uint64_t version = 1;
  if (const PolicyRecord* old = policy(do_id)) version = old->version + 1;
  policies_.insert_or_assign(
      do_id, PolicyRecord{do_id, std::move(ap_s), std::move(ap_m), version});
  Send(bus, MessageType::kPolicyAck, m.request_id, m.sender,
       EncodePolicyAck(version));
}

void ServiceProvider::OnUpload(const Message& m) {
  const vphe::Ciphertext ct = DecodeVpheCiphertext(m.payload);
  KeyOf(m.sender.instance);
  if (ct.key_id != m.sender.instance) {
    throw Error(ErrorCode::kKeyMismatch,
                "upload under another owner's key");
  }
  store_[ct.key_id].push_back(ct);
}

void ServiceProvider::OnDoAggregate(const Message& m, MessageBus& bus) {
  try {
    const vphe::Ciphertext ct =
        Aggregate(m.sender.instance, DecodeRange(m.payload));
    Send(bus, MessageType::kDoAggregateResult, m.request_id, m.sender,
         EncodeVpheCiphertext(ct, n_));
  } catch (const Error& e) {
    Send(bus, MessageType::kRequestFailed, m.request_id, m.sender,
         EncodeRequestFailed({e.code(), e.what()}));
  }
}

void ServiceProvider::OnDrSingle(const Message& m, MessageBus& bus) {
  try {
    if (pending_.count(m.request_id) || masks_.count(m.request_id)) {
      throw Error(ErrorCode::kProtocolState, "request id reused");
    }
    const DrSingleRequest req = DecodeDrSingleRequest(m.payload);
    const vphe::UserPublicKey& vpk = KeyOf(req.target);
    const PolicyRecord* rec = policy(req.target);
    if (rec == nullptr) {
      throw Error(ErrorCode::kProtocolState,
                  "data owner " + std::to_string(req.target) +
                      " has no access policy");
    }
    const vphe::Ciphertext sum = Aggregate(req.target, req.range);
    const BigInt r = DrawMask(m.request_id, req.target);
    const vphe::Ciphertext masked =
        vphe::HomAdd(vpk, sum, vphe::Encrypt(vpk, r, rng_, &ops_), &ops_);
    masks_[m.request_id] = {m.request_id, {{req.target, r}}};
    pending_[m.request_id] = {RequestKind::kDrsDo, m.sender, rec->version};
    Send(bus, MessageType::kMaskedSingle, m.request_id, kCp,
         EncodeMaskedBatch({{masked}, rec->ap_s}, n_));
  } catch (const Error& e) {
    Send(bus, MessageType::kRequestFailed, m.request_id, m.sender,
         EncodeRequestFailed({e.code(), e.what()}));
  }
}

void ServiceProvider::OnDrMulti(const Message& m, MessageBus& bus) {
  try {
    if (pending_.count(m.request_id) || masks_.count(m.request_id)) {
      throw Error(ErrorCode::kProtocolState, "request id reused");
    }
    const DrMultiRequest req = DecodeDrMultiRequest(m.payload);
    const std::vector<vphe::UserId> chosen = SelectDataOwners(req.attributes);
    if (chosen.empty()) {
      throw Error(ErrorCode::kPolicyNotSatisfied,
                  "no data owner's AP_M admits the requester");
    }
    // Resolve every slot before any counted work.
    std::vector<const vphe::Ciphertext*> picks;
    for (vphe::UserId id : chosen) {
      const auto& items = store(id);
      const std::uint64_t slot =
          req.slot.value_or(items.empty() ? 0 : items.size() - 1);
      if (slot >= items.size()) {
        throw Error(ErrorCode::kNoData, "data owner " + std::to_string(id) +
                                            " has no upload in slot " +
                                            std::to_string(slot));
      }
      picks.push_back(&items[slot]);
    }
    std::vector<cpabe::PolicyNode> distinct;
    std::set<std::string> seen;
    for (vphe::UserId id : chosen) {
      const auto& tree = policy(id)->ap_m;
      if (seen.insert(tree.ToString()).second) distinct.push_back(tree.root());
    }
    cpabe::AccessTree common(distinct.size() == 1
                                 ? distinct.front()
                                 : cpabe::And(std::move(distinct)));
    MaskRecord record{m.request_id, {}};
    std::vector<vphe::Ciphertext> masked;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      const vphe::UserPublicKey& vpk = KeyOf(chosen[i]);
      const BigInt r = DrawMask(m.request_id, chosen[i]);
      masked.push_back(vphe::HomAdd(
          vpk, *picks[i], vphe::Encrypt(vpk, r, rng_, &ops_), &ops_));
      record.entries[chosen[i]] = r;
    }
    masks_[m.request_id] = std::move(record);
    pending_[m.request_id] = {RequestKind::kDrsDos, m.sender, 0};
    Send(bus, MessageType::kMaskedMulti, m.request_id, kCp,
         EncodeMaskedBatch({std::move(masked), std::move(common)}, n_));
  } catch (const Error& e) {
    Send(bus, MessageType::kRequestFailed, m.request_id, m.sender,
         EncodeRequestFailed({e.code(), e.what()}));
  }
}

void ServiceProvider::OnPrepared(const Message& m, MessageBus& bus) {
  auto mask = masks_.find(m.request_id);
  auto pending = pending_.find(m.request_id);
  if (mask == masks_.end() || pending == pending_.end()) {
    throw Error(ErrorCode::kMaskAlreadyConsumed,
                "no live mask for request " + std::to_string(m.request_id));
  }
  ResultBundle bundle = DecodeResultBundle(m.payload, abe_pk_);
  BigInt total = 0;
  for (const auto& [id, r] : mask->second.entries) total += r;
  total = Mod(total, n_);
  const Endpoint requester = pending->second.requester;
  masks_.erase(mask);
  pending_.erase(pending);

  const paillier::PublicKey& ppk = bundle.ppk;
  paillier::Ciphertext neg;
  if (demask_ == DemaskMode::kNegateInClear) {
    neg = paillier::Encrypt(ppk, Mod(n_ - total, n_), rng_, &ops_);
  } else {
    neg = paillier::HomNeg(ppk, paillier::Encrypt(ppk, total, rng_, &ops_),
                           &ops_);
  }
  bundle.paillier_ct = paillier::HomAdd(ppk, bundle.paillier_ct, neg, &ops_);
  Send(bus, MessageType::kResultBundle, m.request_id, requester,
       EncodeResultBundle(bundle, abe_pk_));
}

// ---------------------------------------------------------------- CP

ComputationalParty::ComputationalParty(vphe::StrongKey ssk,
                                       cpabe::AbePublicParams abe_pk,
                                       int paillier_bits, Rng rng)
    : Actor(kCp),
      ssk_(std::move(ssk)),
      abe_pk_(std::move(abe_pk)),
      paillier_bits_(paillier_bits),
      rng_(std::move(rng)) {}

void ComputationalParty::EnrollDataOwner(const vphe::UserPublicKey& vpk) {
  sdk_[vpk.user_id] = vphe::PrepareStrongDecryption(ssk_, vpk, &setup_ops_);
  n_ = vpk.n;
}

BigInt ComputationalParty::Open(std::uint64_t request_id,
                                const vphe::Ciphertext& ct) {
  auto it = sdk_.find(ct.key_id);
  if (it == sdk_.end()) {
    throw Error(ErrorCode::kUnknownDataOwner,
                "no strong key for owner " + std::to_string(ct.key_id));
  }
  BigInt v = vphe::StrongDecrypt(it->second, ct, &ops_);
  observations_.push_back({request_id, ct.key_id, v});
  return v;
}

void ComputationalParty::Handle(const Message& m, MessageBus& bus) {
  switch (CheckMessageType(m.type)) {
    case MessageType::kMaskedSingle:
      return OnMasked(m, bus, MessageType::kPreparedResult);
    case MessageType::kMaskedMulti:
      return OnMasked(m, bus, MessageType::kPreparedMultiResult);
    case MessageType::kPaillierKeyIssue:
      return OnKeyIssue(m, bus);
    default:
      Reject(m);
  }
}

void ComputationalParty::OnMasked(const Message& m, MessageBus& bus,
                                  MessageType reply) {
  MaskedBatch batch = DecodeMaskedBatch(m.payload);
  if (batch.items.empty() ||
      (reply == MessageType::kPreparedResult && batch.items.size() != 1)) {
    throw Error(ErrorCode::kMalformedMessage, "wrong masked item count");
  }
  if (pending_.count(m.request_id)) {
    throw Error(ErrorCode::kProtocolState, "request already in progress");
  }
  BigInt sum = 0;
  for (const auto& ct : batch.items) sum += Open(m.request_id, ct);
  pending_.emplace(m.request_id,
                   Pending{reply, Mod(sum, n_), std::move(batch.policy)});
  Send(bus, MessageType::kKeyRequest, m.request_id, kKa,
       EncodeKeyRequest(static_cast<std::uint32_t>(paillier_bits_)));
}

void ComputationalParty::OnKeyIssue(const Message& m, MessageBus& bus) {
  auto it = pending_.find(m.request_id);
  if (it == pending_.end()) {
    throw Error(ErrorCode::kProtocolState, "unexpected key issue");
  }
  const paillier::KeyPair kp = DecodePaillierKeyIssue(m.payload);
  const Pending p = std::move(it->second);
  pending_.erase(it);
  ResultBundle bundle{
      paillier::Encrypt(kp.public_key, p.masked_sum, rng_, &ops_),
      cpabe::Encrypt(abe_pk_, paillier::SerializePrivateKey(kp.private_key),
                     p.policy, rng_, &ops_),
      kp.public_key};
  Send(bus, p.reply, m.request_id, kSp, EncodeResultBundle(bundle, abe_pk_));
}

// ---------------------------------------------------------------- DR

DataRequester::DataRequester(std::uint64_t id, cpabe::AbeUserKey key,
                             cpabe::AbePublicParams abe_pk, BigInt n,
                             OutcomeMap* outcomes)
    : Actor({Role::kDataRequester, id}),
      key_(std::move(key)),
      abe_pk_(std::move(abe_pk)),
      n_(std::move(n)),
      outcomes_(outcomes) {}

void DataRequester::RequestSingle(MessageBus& bus, std::uint64_t request_id,
                                  vphe::UserId target,
                                  const IndexRange& range) {
  Start(outcomes_, request_id, RequestKind::kDrsDo);
  Send(bus, MessageType::kDrSingleRequest, request_id, kSp,
       EncodeDrSingleRequest(
           {target, range, claimed_.value_or(key_.attributes)}));
}

void DataRequester::RequestMulti(MessageBus& bus, std::uint64_t request_id,
                                 std::optional<std::uint64_t> slot) {
  Start(outcomes_, request_id, RequestKind::kDrsDos);
  Send(bus, MessageType::kDrMultiRequest, request_id, kSp,
       EncodeDrMultiRequest({claimed_.value_or(key_.attributes), slot}));
}

void DataRequester::Handle(const Message& m, MessageBus&) {
  switch (CheckMessageType(m.type)) {
    case MessageType::kResultBundle: {
      const ResultBundle bundle = DecodeResultBundle(m.payload, abe_pk_);
      Bytes psk_bytes;
      try {
        psk_bytes = cpabe::Decrypt(abe_pk_, bundle.abe_ct, key_, &ops_);
      } catch (const Error& e) {
        Fail(outcomes_, m.request_id, e);
        return;
      }
      const paillier::PrivateKey psk =
          paillier::DeserializePrivateKey(psk_bytes);
      const BigInt v =
          paillier::Decrypt(psk, bundle.ppk, bundle.paillier_ct, &ops_);
      RequestOutcome& o = (*outcomes_)[m.request_id];
      o.value = Mod(v, n_);
      o.done = true;
      return;
    }
    case MessageType::kRequestFailed: {
      const RequestFailure f = DecodeRequestFailed(m.payload);
      Fail(outcomes_, m.request_id, Error(f.code, f.message));
      return;
    }
    default:
      Reject(m);
  }
}

}  // namespace sama::protocol
