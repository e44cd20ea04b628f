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

#ifndef SAMA_PAILLIER_PAILLIER_H_
#define SAMA_PAILLIER_PAILLIER_H_

// Single-key Paillier, used for the per-request result-delivery key pair.

#include <cstdint>

#include "sama/arith/op_counts.h"
#include "sama/common/bytes.h"
#include "sama/common/rng.h"

namespace sama::paillier {

using KeyId = std::uint64_t;

inline constexpr std::uint8_t kSchemeTag = 0x02;

struct PublicKey {
  KeyId key_id = 0;
  BigInt n;
  BigInt n_sq;
  BigInt g;

  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct PrivateKey {
  KeyId key_id = 0;
  BigInt lambda;
  BigInt mu;

  friend bool operator==(const PrivateKey&, const PrivateKey&) = default;
};

struct Ciphertext {
  BigInt value;
  KeyId key_id = 0;

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

struct KeyPair {
  PublicKey public_key;
  PrivateKey private_key;
};

// n = p*q with p, q of bits/2 bits each, g = n + 1. Requires bits >= 64.
KeyPair Keygen(int bits, KeyId key_id, Rng& rng);

// From known primes; g defaults to n + 1. Throws kNotInvertible when
// L(g^lambda mod n^2) has no inverse mod n.
KeyPair KeygenFromPrimes(const BigInt& p, const BigInt& q, KeyId key_id,
                         const BigInt& g = 0);

// g^m r^n mod n^2 with r uniform in Z*_n. 2 ModExp + 1 ModMul.
Ciphertext Encrypt(const PublicKey& ppk, const BigInt& m, Rng& rng,
                   OpCounts* ops = nullptr);
Ciphertext EncryptWithNonce(const PublicKey& ppk, const BigInt& m,
                            const BigInt& r, OpCounts* ops = nullptr);

// L(c^lambda mod n^2) * mu mod n. 1 ModExp + 1 ModMul.
BigInt Decrypt(const PrivateKey& psk, const PublicKey& ppk,
               const Ciphertext& c, OpCounts* ops = nullptr);

// c1 * c2 mod n^2. 1 ModMul.
Ciphertext HomAdd(const PublicKey& ppk, const Ciphertext& c1,
                  const Ciphertext& c2, OpCounts* ops = nullptr);

// c^(n-1) mod n^2, decrypting to -m mod n. 1 ModExp.
Ciphertext HomNeg(const PublicKey& ppk, const Ciphertext& c,
                  OpCounts* ops = nullptr);

std::size_t CiphertextWidth(const BigInt& n);

void WriteCiphertext(ByteWriter& w, const Ciphertext& c, const BigInt& n);
Ciphertext ReadCiphertext(ByteReader& r);
void WritePublicKey(ByteWriter& w, const PublicKey& ppk);
PublicKey ReadPublicKey(ByteReader& r);
// The private key travels only inside a CP-ABE envelope.
Bytes SerializePrivateKey(const PrivateKey& psk);
PrivateKey DeserializePrivateKey(std::span<const std::uint8_t> data);

}  // namespace sama::paillier

#endif  // SAMA_PAILLIER_PAILLIER_H_
