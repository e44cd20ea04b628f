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


#include "sama/cpabe/cpabe.h"

#include <set>
#include <utility>

#include "sama/arith/modular.h"
#include "sama/common/errors.h"
#include "sama/cpabe/envelope.h"
#include "sama/cpabe/shamir.h"

namespace sama::cpabe {
namespace {

std::string AttributeLabel(std::string_view a) {
  return "sama/cpabe/attr/" + std::string(a);
}

Bytes TreeAad(const AccessTree& tree) {
  const std::string text = tree.ToString();
  return Bytes(text.begin(), text.end());
}

Bytes XorKey(std::span<const std::uint8_t> key, const Bytes& pad) {
  Bytes out(key.begin(), key.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] ^= pad[i];
  return out;
}

std::size_t LeavesUnder(const PolicyNode& node) {
  if (node.is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : node.children) n += LeavesUnder(c);
  return n;
}

const G1Point& AttributePoint(const AbePublicParams& pk, std::string_view a) {
  auto it = pk.attribute_points.find(a);
  if (it == pk.attribute_points.end()) {
    throw Error(ErrorCode::kUnknownAttribute,
                "attribute '" + std::string(a) + "' not in universe");
  }
  return it->second;
}

void ShareDown(const AbePublicParams& pk, const PolicyNode& node,
               const BigInt& value, Rng& rng,
               std::vector<AbeLeafComponent>& out) {
  const PairingGroup& grp = *pk.group;
  if (node.is_leaf()) {
    out.push_back({grp.Mul(pk.g, value),
                   grp.Mul(AttributePoint(pk, node.attribute), value)});
    return;
  }
  const Polynomial poly =
      RandomPolynomial(value, node.threshold - 1, grp.r(), rng);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    ShareDown(pk, node.children[i], Evaluate(poly, BigInt(i + 1), grp.r()),
              rng, out);
  }
}

// e(g,g)^(r q_node(0)) over the selected subtree. The caller has checked
// the node is satisfied.
GtElement CombineUp(const AbePublicParams& pk, const AbeCiphertext& ct,
                    const AbeUserKey& sk, const PolicyNode& node,
                    std::size_t first_leaf) {
  const PairingGroup& grp = *pk.group;
  if (node.is_leaf()) {
    const AbeKeyComponent& kc = sk.components.find(node.attribute)->second;
    const AbeLeafComponent& lc = ct.leaves[first_leaf];
    return grp.GtMul(grp.Pair(kc.d, lc.c),
                     grp.GtInverse(grp.Pair(kc.d_prime, lc.c_prime)));
  }
  std::vector<std::size_t> offsets;
  std::size_t at = first_leaf;
  for (const auto& c : node.children) {
    offsets.push_back(at);
    at += LeavesUnder(c);
  }
  const auto picked = SelectChildren(node, sk.attributes);
  std::vector<BigInt> xs;
  for (std::size_t i : picked) xs.emplace_back(i + 1);
  GtElement acc = grp.GtOne();
  for (std::size_t i : picked) {
    const GtElement part = CombineUp(pk, ct, sk, node.children[i], offsets[i]);
    acc = grp.GtMul(acc,
                    grp.GtPow(part, LagrangeAtZero(BigInt(i + 1), xs, grp.r())));
  }
  return acc;
}

}  // namespace

std::size_t AbePublicParams::LeafComponentBits() const {
  return 2 * group->PointBytes() * 8;
}

AbeSetupResult Setup(const std::vector<std::string>& universe, Rng& rng,
                     OpCounts* ops, const AbeOptions& options) {
  if (universe.empty()) {
    throw Error(ErrorCode::kEmptyUniverse, "attribute universe is empty");
  }
  auto group = std::make_shared<const PairingGroup>(
      PairingGroup::Generate(options.r_bits, options.q_bits, rng));
  return Setup(universe, std::move(group), rng, ops);
}

AbeSetupResult Setup(const std::vector<std::string>& universe,
                     std::shared_ptr<const PairingGroup> group, Rng& rng,
                     OpCounts* ops) {
  if (universe.empty()) {
    throw Error(ErrorCode::kEmptyUniverse, "attribute universe is empty");
  }
  AbeSetupResult out;
  AbePublicParams& pk = out.pk;
  for (const auto& a : universe) {
    try {
      AccessTree probe(Leaf(a));
    } catch (const Error&) {
      throw Error(ErrorCode::kInvalidArgument, "bad attribute name '" + a + "'");
    }
    if (pk.attribute_points.count(a)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "attribute '" + a + "' repeated in universe");
    }
    pk.attribute_points.emplace(a, group->HashToG1(AttributeLabel(a)));
  }
  pk.universe = universe;
  const BigInt alpha = group->RandomScalar(rng);
  out.mk.beta = group->RandomScalar(rng);
  pk.g = group->generator();
  pk.h = group->Mul(pk.g, out.mk.beta);
  out.mk.g_alpha = group->Mul(pk.g, alpha);
  pk.egg_alpha = group->GtPow(group->Pair(pk.g, pk.g), alpha);
  pk.group = std::move(group);
  CountExp(ops, universe.size() + 1);
  CountBiPair(ops);
  return out;
}

AbeUserKey Keygen(const AbePublicParams& pk, const AbeMasterKey& mk,
                  std::string holder_id, const AttributeSet& attributes,
                  Rng& rng, OpCounts* ops) {
  const PairingGroup& grp = *pk.group;
  for (const auto& a : attributes) AttributePoint(pk, a);
  AbeUserKey sk;
  sk.holder_id = std::move(holder_id);
  sk.attributes = attributes;
  const BigInt r = grp.RandomScalar(rng);
  const G1Point g_r = grp.Mul(pk.g, r);
  sk.d = grp.Mul(grp.Add(mk.g_alpha, g_r), ModInverse(mk.beta, grp.r()));
  for (const auto& a : attributes) {
    const BigInt r_a = grp.RandomScalar(rng);
    sk.components.emplace(
        a, AbeKeyComponent{grp.Add(g_r, grp.Mul(AttributePoint(pk, a), r_a)),
                           grp.Mul(pk.g, r_a)});
  }
  CountExp(ops, 2 * attributes.size());
  return sk;
}

AbeCiphertext Encrypt(const AbePublicParams& pk,
                      std::span<const std::uint8_t> payload,
                      const AccessTree& tree, Rng& rng, OpCounts* ops) {
  const PairingGroup& grp = *pk.group;
  for (const auto& a : tree.Attributes()) AttributePoint(pk, a);
  const BigInt s = grp.RandomScalar(rng);
  std::vector<AbeLeafComponent> leaves;
  ShareDown(pk, tree.root(), s, rng, leaves);
  Bytes key(kSymmetricKeyBytes);
  rng.Fill(key);
  const Bytes pad = Sha256(grp.GtBytes(grp.GtPow(pk.egg_alpha, s)));
  AbeCiphertext ct{tree, grp.Mul(pk.h, s), std::move(leaves),
                   XorKey(key, pad), Seal(key, payload, TreeAad(tree), rng)};
  CountExp(ops, tree.LeafCount());
  return ct;
}

Bytes Decrypt(const AbePublicParams& pk, const AbeCiphertext& ct,
              const AbeUserKey& sk, OpCounts* ops) {
  const PairingGroup& grp = *pk.group;
  const auto theta = SatisfyingCost(ct.tree.root(), sk.attributes);
  if (!theta) {
    throw Error(ErrorCode::kPolicyNotSatisfied,
                "key attributes do not satisfy '" + ct.tree.ToString() + "'");
  }
  for (const auto& a : sk.attributes) {
    if (!sk.components.count(a)) {
      throw Error(ErrorCode::kKeyMismatch, "key lacks component for " + a);
    }
  }
  if (ct.leaves.size() != ct.tree.LeafCount() ||
      ct.wrapped_key.size() != kSymmetricKeyBytes) {
    throw Error(ErrorCode::kIntegrityError, "ciphertext shape mismatch");
  }
  const GtElement a = CombineUp(pk, ct, sk, ct.tree.root(), 0);
  const GtElement blind =
      grp.GtMul(grp.Pair(ct.c, sk.d), grp.GtInverse(a));  // e(g,g)^(alpha s)
  const Bytes key = XorKey(ct.wrapped_key, Sha256(grp.GtBytes(blind)));
  Bytes payload = Open(key, ct.sealed, TreeAad(ct.tree));
  CountBiPair(ops, *theta);
  return payload;
}

void WriteCiphertext(ByteWriter& w, const AbePublicParams& pk,
                     const AbeCiphertext& ct) {
  const WireSection saved = w.section();
  w.set_section(WireSection::kPolicy);
  w.PutString(ct.tree.ToString());
  w.set_section(WireSection::kAbeLeaf);
  for (const auto& leaf : ct.leaves) {
    pk.group->WritePoint(w, leaf.c);
    pk.group->WritePoint(w, leaf.c_prime);
  }
  w.set_section(WireSection::kAbeEnvelope);
  pk.group->WritePoint(w, ct.c);
  w.PutRaw(ct.wrapped_key);
  w.PutBlob(ct.sealed);
  w.set_section(saved);
}

AbeCiphertext ReadCiphertext(ByteReader& r, const AbePublicParams& pk) {
  AccessTree tree = [&] {
    const std::string text = r.GetString();
    try {
      return ParsePolicy(text);
    } catch (const Error& e) {
      throw Error(ErrorCode::kMalformedMessage,
                  std::string("ciphertext policy: ") + e.what());
    }
  }();
  std::vector<AbeLeafComponent> leaves;
  for (std::size_t i = 0; i < tree.LeafCount(); ++i) {
    G1Point c = pk.group->ReadPoint(r);
    G1Point c_prime = pk.group->ReadPoint(r);
    leaves.push_back({std::move(c), std::move(c_prime)});
  }
  G1Point c = pk.group->ReadPoint(r);
  const auto wrapped = r.GetRaw(kSymmetricKeyBytes);
  Bytes sealed = r.GetBlob();
  return AbeCiphertext{std::move(tree), std::move(c), std::move(leaves),
                       Bytes(wrapped.begin(), wrapped.end()),
                       std::move(sealed)};
}

}  // namespace sama::cpabe
