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

#include "sama/paillier/paillier.h"

#include <string>

#include "sama/arith/modular.h"
#include "sama/arith/primes.h"
#include "sama/common/errors.h"

namespace sama::paillier {
namespace {

void CheckKey(KeyId expected, KeyId got) {
  if (expected != got) {
    throw Error(ErrorCode::kKeyMismatch,
                "Paillier key " + std::to_string(got) + " used where " +
                    std::to_string(expected) + " expected");
  }
}

}  // namespace

KeyPair KeygenFromPrimes(const BigInt& p, const BigInt& q, KeyId key_id,
                         const BigInt& g) {
  if (p == q || !IsProbablePrime(p) || !IsProbablePrime(q)) {
    throw Error(ErrorCode::kInvalidArgument, "p and q must be distinct primes");
  }
  KeyPair out;
  const BigInt n = p * q;
  const BigInt n_sq = n * n;
  out.public_key = {key_id, n, n_sq, sgn(g) == 0 ? BigInt(n + 1) : g};
  out.private_key.key_id = key_id;
  out.private_key.lambda = Lcm(p - 1, q - 1);
  const BigInt l = LFunction(ModExp(out.public_key.g, out.private_key.lambda, n_sq), n);
  out.private_key.mu = ModInverse(l, n);
  return out;
}

KeyPair Keygen(int bits, KeyId key_id, Rng& rng) {
  if (bits < 64 || bits % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "Paillier modulus needs >= 64 even bits");
  }
  while (true) {
    const BigInt p = GenPrime(bits / 2, rng);
    const BigInt q = GenPrime(bits / 2, rng);
    if (p == q) continue;
    if (Gcd(p * q, (p - 1) * (q - 1)) != 1) continue;
    return KeygenFromPrimes(p, q, key_id);
  }
}

Ciphertext EncryptWithNonce(const PublicKey& ppk, const BigInt& m,
                            const BigInt& r, OpCounts* ops) {
  if (sgn(m) < 0 || m >= ppk.n) {
    throw Error(ErrorCode::kPlaintextOutOfRange, "plaintext outside Z_n");
  }
  const BigInt gm = ModExp(ppk.g, m, ppk.n_sq, ops);
  const BigInt rn = ModExp(r, ppk.n, ppk.n_sq, ops);
  return {ModMul(gm, rn, ppk.n_sq, ops), ppk.key_id};
}

Ciphertext Encrypt(const PublicKey& ppk, const BigInt& m, Rng& rng,
                   OpCounts* ops) {
  if (sgn(m) < 0 || m >= ppk.n) {
    throw Error(ErrorCode::kPlaintextOutOfRange, "plaintext outside Z_n");
  }
  return EncryptWithNonce(ppk, m, rng.Unit(ppk.n), ops);
}

BigInt Decrypt(const PrivateKey& psk, const PublicKey& ppk,
               const Ciphertext& c, OpCounts* ops) {
  CheckKey(ppk.key_id, psk.key_id);
  CheckKey(ppk.key_id, c.key_id);
  const BigInt x = ModExp(c.value, psk.lambda, ppk.n_sq, ops);
  return ModMul(LFunction(x, ppk.n), psk.mu, ppk.n, ops);
}

Ciphertext HomAdd(const PublicKey& ppk, const Ciphertext& c1,
                  const Ciphertext& c2, OpCounts* ops) {
  CheckKey(c1.key_id, c2.key_id);
  CheckKey(ppk.key_id, c1.key_id);
  return {ModMul(c1.value, c2.value, ppk.n_sq, ops), c1.key_id};
}

Ciphertext HomNeg(const PublicKey& ppk, const Ciphertext& c, OpCounts* ops) {
  CheckKey(ppk.key_id, c.key_id);
  return {ModExp(c.value, ppk.n - 1, ppk.n_sq, ops), c.key_id};
}

std::size_t CiphertextWidth(const BigInt& n) { return 2 * ByteLength(n); }

void WriteCiphertext(ByteWriter& w, const Ciphertext& c, const BigInt& n) {
  const WireSection saved = w.section();
  w.set_section(WireSection::kFraming);
  w.PutU8(kSchemeTag);
  w.PutU64(c.key_id);
  w.set_section(WireSection::kHomomorphic);
  w.PutFixedBigInt(c.value, CiphertextWidth(n));
  w.set_section(saved);
}

Ciphertext ReadCiphertext(ByteReader& r) {
  if (r.GetU8() != kSchemeTag) {
    throw Error(ErrorCode::kMalformedMessage, "not a Paillier ciphertext");
  }
  Ciphertext c;
  c.key_id = r.GetU64();
  c.value = r.GetBigInt();
  return c;
}

void WritePublicKey(ByteWriter& w, const PublicKey& ppk) {
  const WireSection saved = w.section();
  w.set_section(WireSection::kFraming);
  w.PutU8(kSchemeTag);
  w.PutU64(ppk.key_id);
  w.set_section(WireSection::kKeyMaterial);
  w.PutBigInt(ppk.n);
  w.PutBigInt(ppk.g);
  w.set_section(saved);
}

PublicKey ReadPublicKey(ByteReader& r) {
  if (r.GetU8() != kSchemeTag) {
    throw Error(ErrorCode::kMalformedMessage, "not a Paillier public key");
  }
  PublicKey ppk;
  ppk.key_id = r.GetU64();
  ppk.n = r.GetBigInt();
  ppk.n_sq = ppk.n * ppk.n;
  ppk.g = r.GetBigInt();
  return ppk;
}

Bytes SerializePrivateKey(const PrivateKey& psk) {
  ByteWriter w;
  w.PutU8(kSchemeTag);
  w.PutU64(psk.key_id);
  w.PutBigInt(psk.lambda);
  w.PutBigInt(psk.mu);
  return w.Release();
}

PrivateKey DeserializePrivateKey(std::span<const std::uint8_t> data) {
  ByteReader r(data);
  if (r.GetU8() != kSchemeTag) {
    throw Error(ErrorCode::kMalformedMessage, "not a Paillier private key");
  }
  PrivateKey psk;
  psk.key_id = r.GetU64();
  psk.lambda = r.GetBigInt();
  psk.mu = r.GetBigInt();
  r.ExpectDone();
  return psk;
}

}  // namespace sama::paillier
