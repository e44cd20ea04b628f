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


#ifndef SAMA_CPABE_CPABE_H_
#define SAMA_CPABE_CPABE_H_

// Ciphertext-policy ABE with top-down threshold sharing over a symmetric
// pairing, used as a KEM: the group secret e(g,g)^(alpha s) wraps a random
// 256-bit key, and that key seals the payload with AES-256-GCM.
//
// Operation counters follow the per-role cost model rather than raw group
// operations: setup |U|+1 Exp and 1 BiPair, keygen 2 Exp per attribute,
// encrypt 1 Exp per tree leaf, decrypt 1 BiPair per leaf of the selected
// satisfying subtree.

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sama/arith/op_counts.h"
#include "sama/common/bytes.h"
#include "sama/common/rng.h"
#include "sama/cpabe/pairing.h"
#include "sama/cpabe/policy.h"

namespace sama::cpabe {

struct AbeOptions {
  int r_bits = 160;
  int q_bits = 512;
};

struct AbePublicParams {
  std::shared_ptr<const PairingGroup> group;
  std::vector<std::string> universe;
  std::map<std::string, G1Point, std::less<>> attribute_points;  // H(a)
  G1Point g;
  G1Point h;               // g^beta
  GtElement egg_alpha;     // e(g, g)^alpha

  // Wire size of one leaf component (C_y, C'_y), in bits.
  std::size_t LeafComponentBits() const;
};

// Never leaves the key authority.
struct AbeMasterKey {
  BigInt beta;
  G1Point g_alpha;
};

struct AbeKeyComponent {
  G1Point d;        // g^r H(a)^(r_a)
  G1Point d_prime;  // g^(r_a)
};

struct AbeUserKey {
  std::string holder_id;
  AttributeSet attributes;
  G1Point d;  // g^((alpha + r) / beta)
  std::map<std::string, AbeKeyComponent, std::less<>> components;
};

struct AbeLeafComponent {
  G1Point c;        // g^(q_y(0))
  G1Point c_prime;  // H(att(y))^(q_y(0))

  friend bool operator==(const AbeLeafComponent&,
                         const AbeLeafComponent&) = default;
};

struct AbeCiphertext {
  AccessTree tree;
  G1Point c;  // h^s
  std::vector<AbeLeafComponent> leaves;  // one per leaf, left to right
  Bytes wrapped_key;  // K xor SHA-256(e(g,g)^(alpha s))
  Bytes sealed;       // AES-256-GCM(K, payload), aad = tree text

  friend bool operator==(const AbeCiphertext&, const AbeCiphertext&) = default;
};

struct AbeSetupResult {
  AbePublicParams pk;
  AbeMasterKey mk;
};

// Throws kEmptyUniverse, or kInvalidArgument on a duplicate or unprintable
// attribute.
AbeSetupResult Setup(const std::vector<std::string>& universe, Rng& rng,
                     OpCounts* ops = nullptr, const AbeOptions& options = {});
AbeSetupResult Setup(const std::vector<std::string>& universe,
                     std::shared_ptr<const PairingGroup> group, Rng& rng,
                     OpCounts* ops = nullptr);

// Throws kUnknownAttribute for attributes outside the universe.
AbeUserKey Keygen(const AbePublicParams& pk, const AbeMasterKey& mk,
                  std::string holder_id, const AttributeSet& attributes,
                  Rng& rng, OpCounts* ops = nullptr);

// Throws kUnknownAttribute.
AbeCiphertext Encrypt(const AbePublicParams& pk,
                      std::span<const std::uint8_t> payload,
                      const AccessTree& tree, Rng& rng,
                      OpCounts* ops = nullptr);

// Throws kPolicyNotSatisfied when the key's attributes do not satisfy the
// tree, kIntegrityError when the ciphertext has been tampered with.
Bytes Decrypt(const AbePublicParams& pk, const AbeCiphertext& ct,
              const AbeUserKey& sk, OpCounts* ops = nullptr);

// Tree text in the policy section, leaf components in the leaf section,
// everything else in the envelope section.
void WriteCiphertext(ByteWriter& w, const AbePublicParams& pk,
                     const AbeCiphertext& ct);
AbeCiphertext ReadCiphertext(ByteReader& r, const AbePublicParams& pk);

}  // namespace sama::cpabe

#endif  // SAMA_CPABE_CPABE_H_
