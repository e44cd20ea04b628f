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


#ifndef SAMA_PROTOCOL_ROLES_H_
#define SAMA_PROTOCOL_ROLES_H_

// The five protocol roles. Each is an actor: it owns its state, handles one
// bus message at a time, and talks to the others only through the bus.
// Operation counters are per role; `ops()` covers request handling and
// `setup_ops()` covers enrollment work charged outside the cost rows.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sama/arith/op_counts.h"
#include "sama/common/rng.h"
#include "sama/cpabe/cpabe.h"
#include "sama/harness/bus.h"
#include "sama/paillier/paillier.h"
#include "sama/protocol/messages.h"
#include "sama/vphe/vphe.h"

namespace sama::protocol {

using harness::Endpoint;
using harness::Message;
using harness::MessageBus;
using harness::Role;

enum class RequestKind : std::uint8_t { kDoDo, kDrsDo, kDrsDos };
std::string_view RequestKindName(RequestKind kind);  // "do-do", ...

// The masked sum lives mod the system modulus n while the result key has
// its own modulus n_j > n + 2^(bits-4). Subtracting the mask as n - r
// (the inverse in Z_n) keeps the integer result in [0, 2n), so the
// requester's final reduction mod n is exact for any sum below 2^(bits-4).
enum class DemaskMode : std::uint8_t {
  // [-r] = Enc_j(n - r): negation is a subtraction in the clear.
  kNegateInClear,
  // [-r] = Enc_j(r)^(n_j - 1): one extra ModExp at SP. Exact only when the
  // masked sum did not wrap mod n (probability sum / n).
  kExponentiate,
};

struct RequestOutcome {
  std::uint64_t request_id = 0;
  RequestKind kind = RequestKind::kDoDo;
  bool done = false;
  std::optional<BigInt> value;
  std::optional<ErrorCode> error;
  std::string message;
};
using OutcomeMap = std::map<std::uint64_t, RequestOutcome>;

struct TestHooks {
  // When set and returning a value, replaces SP's random mask for
  // (request id, data owner). A zero mask is not private.
  std::function<std::optional<BigInt>(std::uint64_t, vphe::UserId)>
      forced_mask;
};

// One value CP learned through strong decryption.
struct CpObservation {
  std::uint64_t request_id = 0;
  vphe::UserId do_id = 0;
  BigInt value;
};

struct PolicyRecord {
  vphe::UserId do_id = 0;
  cpabe::AccessTree ap_s;
  cpabe::AccessTree ap_m;
  std::uint64_t version = 0;
};

struct MaskRecord {
  std::uint64_t request_id = 0;
  std::map<vphe::UserId, BigInt> entries;
};

class Actor {
 public:
  explicit Actor(Endpoint endpoint) : endpoint_(endpoint) {}
  virtual ~Actor() = default;
  Actor(const Actor&) = delete;
  Actor& operator=(const Actor&) = delete;

  const Endpoint& endpoint() const { return endpoint_; }
  // Throws kUnknownMessageType for tags the role does not accept.
  virtual void Handle(const Message& m, MessageBus& bus) = 0;

  const OpCounts& ops() const { return ops_; }
  const OpCounts& setup_ops() const { return setup_ops_; }
  double busy_ms() const { return busy_ms_; }
  void AddBusy(double ms) { busy_ms_ += ms; }

 protected:
  void Send(MessageBus& bus, MessageType type, std::uint64_t request_id,
            const Endpoint& to, Payload payload) const;
  [[noreturn]] void Reject(const Message& m) const;

  OpCounts ops_;
  OpCounts setup_ops_;

 private:
  Endpoint endpoint_;
  double busy_ms_ = 0;
};

// Trusted issuer of all key material; owns the trapdoor allocation table.
class KeyAuthority : public Actor {
 public:
  KeyAuthority(vphe::System system, std::size_t pool_k,
               cpabe::AbeSetupResult abe, int paillier_bits, Rng rng);

  // Fresh result key with n_j > n + 2^(bits-4).
  paillier::KeyPair MintResultKey(std::uint64_t key_id);

  const vphe::SystemParams& params() const { return system_.params; }
  const vphe::StrongKey& strong_key() const { return system_.strong; }
  const cpabe::AbePublicParams& abe_pk() const { return abe_.pk; }

  vphe::UserKeyPair EnrollDataOwner(vphe::UserId id);
  cpabe::AbeUserKey IssueAbeKey(std::string holder,
                                const cpabe::AttributeSet& attrs);

  void Handle(const Message& m, MessageBus& bus) override;

 private:
  vphe::System system_;
  vphe::TrapdoorAllocator allocator_;
  cpabe::AbeSetupResult abe_;
  int paillier_bits_;
  Rng rng_;
};

class DataOwner : public Actor {
 public:
  DataOwner(vphe::UserKeyPair keys, OutcomeMap* outcomes, Rng rng);

  vphe::UserId id() const { return keys_.public_key.user_id; }
  const vphe::UserPublicKey& public_key() const { return keys_.public_key; }
  std::uint64_t policy_version() const { return policy_version_; }
  // Encryptions done at upload time; requests never add to these.
  const OpCounts& upload_ops() const { return upload_ops_; }
  double upload_ms() const { return upload_ms_; }

  void SendPolicy(MessageBus& bus, const cpabe::AccessTree& ap_s,
                  const cpabe::AccessTree& ap_m);
  void Upload(MessageBus& bus, const BigInt& m);
  void RequestAggregate(MessageBus& bus, std::uint64_t request_id,
                        const IndexRange& range);

  void Handle(const Message& m, MessageBus& bus) override;

 private:
  vphe::UserKeyPair keys_;
  OutcomeMap* outcomes_;
  Rng rng_;
  OpCounts upload_ops_;
  double upload_ms_ = 0;
  std::uint64_t policy_version_ = 0;
};

class ServiceProvider : public Actor {
 public:
  ServiceProvider(BigInt n, cpabe::AbePublicParams abe_pk, DemaskMode demask,
                  const TestHooks* hooks, Rng rng);

  void EnrollDataOwner(const vphe::UserPublicKey& vpk);
  // Enrollment order.
  const std::vector<vphe::UserId>& data_owners() const { return order_; }
  const PolicyRecord* policy(vphe::UserId do_id) const;
  const std::vector<vphe::Ciphertext>& store(vphe::UserId do_id) const;
  const std::map<std::uint64_t, MaskRecord>& mask_records() const {
    return masks_;
  }

  // Data owners whose AP_M the attributes satisfy, in enrollment order.
  std::vector<vphe::UserId> SelectDataOwners(
      const cpabe::AttributeSet& attrs) const;

  void Handle(const Message& m, MessageBus& bus) override;

 private:
  struct Pending {
    RequestKind kind;
    Endpoint requester;
    std::uint64_t policy_version = 0;
  };

  const vphe::UserPublicKey& KeyOf(vphe::UserId do_id) const;
  vphe::Ciphertext Aggregate(vphe::UserId do_id, const IndexRange& range);
  BigInt DrawMask(std::uint64_t request_id, vphe::UserId do_id);
  void OnPolicy(const Message& m, MessageBus& bus);
  void OnUpload(const Message& m);
  void OnDoAggregate(const Message& m, MessageBus& bus);
  void OnDrSingle(const Message& m, MessageBus& bus);
  void OnDrMulti(const Message& m, MessageBus& bus);
  void OnPrepared(const Message& m, MessageBus& bus);

  BigInt n_;
  cpabe::AbePublicParams abe_pk_;
  DemaskMode demask_;
  const TestHooks* hooks_;
  Rng rng_;
  std::vector<vphe::UserId> order_;
  std::map<vphe::UserId, vphe::UserPublicKey> keys_;
  std::map<vphe::UserId, std::vector<vphe::Ciphertext>> store_;
  std::map<vphe::UserId, PolicyRecord> policies_;
  std::map<std::uint64_t, MaskRecord> masks_;
  std::map<std::uint64_t, Pending> pending_;
};

class ComputationalParty : public Actor {
 public:
  ComputationalParty(vphe::StrongKey ssk, cpabe::AbePublicParams abe_pk,
                     int paillier_bits, Rng rng);

  // Derives the per-owner strong decryption constant; charged to setup.
  void EnrollDataOwner(const vphe::UserPublicKey& vpk);
  const std::vector<CpObservation>& observations() const {
    return observations_;
  }

  void Handle(const Message& m, MessageBus& bus) override;

 private:
  struct Pending {
    MessageType reply;
    BigInt masked_sum;
    cpabe::AccessTree policy;
  };

  BigInt Open(std::uint64_t request_id, const vphe::Ciphertext& ct);
  void OnMasked(const Message& m, MessageBus& bus, MessageType reply);
  void OnKeyIssue(const Message& m, MessageBus& bus);

  vphe::StrongKey ssk_;
  cpabe::AbePublicParams abe_pk_;
  int paillier_bits_;
  Rng rng_;
  BigInt n_;
  std::map<vphe::UserId, vphe::StrongDecryptionKey> sdk_;
  std::map<std::uint64_t, Pending> pending_;
  std::vector<CpObservation> observations_;
};

class DataRequester : public Actor {
 public:
  DataRequester(std::uint64_t id, cpabe::AbeUserKey key,
                cpabe::AbePublicParams abe_pk, BigInt n, OutcomeMap* outcomes);

  std::uint64_t id() const { return endpoint().instance; }
  const cpabe::AttributeSet& attributes() const { return key_.attributes; }
  // Attributes the requester asserts to SP; defaults to the key's set.
  void set_claimed_attributes(cpabe::AttributeSet attrs) {
    claimed_ = std::move(attrs);
  }

  void RequestSingle(MessageBus& bus, std::uint64_t request_id,
                     vphe::UserId target, const IndexRange& range);
  void RequestMulti(MessageBus& bus, std::uint64_t request_id,
                    std::optional<std::uint64_t> slot);

  void Handle(const Message& m, MessageBus& bus) override;

 private:
  cpabe::AbeUserKey key_;
  cpabe::AbePublicParams abe_pk_;
  BigInt n_;
  OutcomeMap* outcomes_;
  std::optional<cpabe::AttributeSet> claimed_;
};

}  // namespace sama::protocol

#endif  // SAMA_PROTOCOL_ROLES_H_
