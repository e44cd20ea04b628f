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

#ifndef SAMA_VPHE_VPHE_H_
#define SAMA_VPHE_VPHE_H_

// Multi-key variant Paillier: one system modulus n = p*q built from
// structured primes, one strong trapdoor lambda that opens every user's
// ciphertexts, and per-user weak trapdoors t that open only their own.

#include <cstdint>
#include <vector>

#include "sama/arith/op_counts.h"
#include "sama/arith/primes.h"
#include "sama/common/bytes.h"
#include "sama/common/rng.h"

namespace sama::vphe {

using UserId = std::uint64_t;

inline constexpr std::uint8_t kSchemeTag = 0x01;

struct SystemParams {
  BigInt n;
  BigInt n_sq;
  OddPrimePool pool;
  // p and q are held by the key authority only.
  StructuredPrime p;
  StructuredPrime q;
  BigInt phi_n;
};

struct StrongKey {
  BigInt lambda;
};

struct UserPublicKey {
  UserId user_id = 0;
  BigInt n;
  BigInt n_sq;
  BigInt g;
  BigInt h;
};

struct UserWeakKey {
  UserId user_id = 0;
  BigInt t;
  // Indices into SystemParams::pool.factors whose product is t.
  std::vector<std::size_t> factor_subset;
  // L(g^t mod n^2)^-1 mod n, fixed at keygen.
  BigInt denominator_inverse;
};

struct Ciphertext {
  BigInt value;
  UserId key_id = 0;

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

struct System {
  SystemParams params;
  StrongKey strong;
};

struct SetupOptions {
  // Bits per small pool prime; 0 picks 16, shrinking when the structured
  // primes would otherwise have less than 32 bits of cofactor room.
  int pool_bits = 0;
  // Permits moduli outside {512, 1024, 2048, 3072, 4096} (tests only).
  bool allow_any_size = false;
};

// Throws kInvalidArgument for unsupported sizes or k < 2, and propagates
// kSearchExhausted from prime generation.
System SystemSetup(int security_bits, int k, Rng& rng,
                   const SetupOptions& options = {});

// Builds a system from known structured primes, e.g. the toy fixture
// p = 2*3*5*7*11 + 1, q = 2*3*5*7*13 + 1 over pool {u=3, [5, 7]}.
System SystemFromPrimes(const OddPrimePool& pool, const BigInt& p,
                        const BigInt& q);

// Hands out nonempty subsets of the pool factors: all singletons first, then
// larger subsets, each size in lexicographic order. Single-writer.
class TrapdoorAllocator {
 public:
  explicit TrapdoorAllocator(std::size_t k);

  // Throws kPoolExhausted after 2^k - 1 subsets.
  std::vector<std::size_t> Allocate();

  std::uint64_t allocated() const { return allocated_; }
  std::uint64_t capacity() const;

 private:
  std::size_t k_;
  std::vector<std::size_t> next_;  // next combination to hand out
  std::uint64_t allocated_ = 0;
};

struct UserKeyPair {
  UserPublicKey public_key;
  UserWeakKey weak_key;
};

UserKeyPair UserKeygen(const SystemParams& params, const StrongKey& strong,
                       TrapdoorAllocator& allocator, UserId user_id, Rng& rng);

// c = g^m h^r mod n^2 with r uniform in Z_n. 2 ModExp + 1 ModMul.
Ciphertext Encrypt(const UserPublicKey& vpk, const BigInt& m, Rng& rng,
                   OpCounts* ops = nullptr);
Ciphertext EncryptWithNonce(const UserPublicKey& vpk, const BigInt& m,
                            const BigInt& r, OpCounts* ops = nullptr);

// L(c^t mod n^2) * L(g^t mod n^2)^-1 mod n. 1 ModExp + 1 ModMul.
BigInt WeakDecrypt(const UserWeakKey& wsk, const UserPublicKey& vpk,
                   const Ciphertext& c, OpCounts* ops = nullptr);

// Same arithmetic with the identity and L-domain checks removed; lets tests
// observe what a foreign weak key produces.
BigInt WeakDecryptUnchecked(const UserWeakKey& wsk, const UserPublicKey& vpk,
                            const Ciphertext& c);

// The strong trapdoor bound to one user's g: mu = L(g^lambda mod n^2)^-1.
struct StrongDecryptionKey {
  UserId user_id = 0;
  BigInt lambda;
  BigInt mu;
  BigInt n;
  BigInt n_sq;
};

StrongDecryptionKey PrepareStrongDecryption(const StrongKey& ssk,
                                            const UserPublicKey& vpk,
                                            OpCounts* ops = nullptr);

// L(c^lambda mod n^2) * mu mod n. 1 ModExp + 1 ModMul.
BigInt StrongDecrypt(const StrongDecryptionKey& key, const Ciphertext& c,
                     OpCounts* ops = nullptr);

// Convenience form that derives mu on the fly (uncounted).
BigInt StrongDecrypt(const StrongKey& ssk, const UserPublicKey& vpk,
                     const Ciphertext& c);

// c1 * c2 mod n^2, decrypting to m1 + m2 mod n. 1 ModMul.
Ciphertext HomAdd(const UserPublicKey& vpk, const Ciphertext& c1,
                  const Ciphertext& c2, OpCounts* ops = nullptr);

// Fixed-width residue width in bytes: 2 * ByteLength(n).
std::size_t CiphertextWidth(const BigInt& n);

void WriteCiphertext(ByteWriter& w, const Ciphertext& c, const BigInt& n);
Ciphertext ReadCiphertext(ByteReader& r);
void WritePublicKey(ByteWriter& w, const UserPublicKey& vpk);
UserPublicKey ReadPublicKey(ByteReader& r);

}  // namespace sama::vphe

#endif  // SAMA_VPHE_VPHE_H_
