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

#include "sama/vphe/vphe.h"

#include <algorithm>
#include <string>

#include "sama/arith/modular.h"
#include "sama/common/errors.h"

namespace sama::vphe {
namespace {

constexpr int kDefaultPoolBits = 16;
constexpr int kMinPoolBits = 10;
constexpr int kMaxKeygenAttempts = 1000;

bool IsStandardSize(int bits) {
  return bits == 512 || bits == 1024 || bits == 2048 || bits == 3072 ||
         bits == 4096;
}

void CheckKey(UserId expected, UserId got, const char* what) {
  if (expected != got) {
    throw Error(ErrorCode::kKeyMismatch,
                std::string(what) + ": key " + std::to_string(got) +
                    " used where " + std::to_string(expected) + " expected");
  }
}

void CheckStructured(const OddPrimePool& pool, const BigInt& p) {
  if (!IsProbablePrime(p)) {
    throw Error(ErrorCode::kInvalidArgument, p.get_str() + " is not prime");
  }
  const BigInt radix = pool.Radix();
  BigInt shifted = p - 1;
  if (!mpz_divisible_p(shifted.get_mpz_t(), radix.get_mpz_t())) {
    throw Error(ErrorCode::kInvalidArgument,
                p.get_str() + " is not 2*u*prod(v_i)*v + 1");
  }
  const BigInt v = shifted / radix;
  if (!IsProbablePrime(v)) {
    throw Error(ErrorCode::kInvalidArgument, "cofactor is not prime");
  }
}

System AssembleSystem(const OddPrimePool& pool, const StructuredPrime& p,
                      const StructuredPrime& q) {
  System sys;
  sys.params.pool = pool;
  sys.params.p = p;
  sys.params.q = q;
  sys.params.n = p.p * q.p;
  sys.params.n_sq = sys.params.n * sys.params.n;
  sys.params.phi_n = (p.p - 1) * (q.p - 1);
  if (Gcd(sys.params.n, sys.params.phi_n) != 1) {
    throw Error(ErrorCode::kInvalidArgument, "gcd(n, phi(n)) != 1");
  }
  sys.strong.lambda = Lcm(p.p - 1, q.p - 1);
  return sys;
}

}  // namespace

System SystemSetup(int security_bits, int k, Rng& rng,
                   const SetupOptions& options) {
  if (!options.allow_any_size && !IsStandardSize(security_bits)) {
    throw Error(ErrorCode::kInvalidArgument,
                "security_bits must be one of 512/1024/2048/3072/4096");
  }
  if (security_bits < 128 || security_bits % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "modulus size too small or odd");
  }
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "pool size k must be >= 2");

  const int half = security_bits / 2;
  int pool_bits = options.pool_bits;
  if (pool_bits == 0) {
    // radix = 2*u*prod(v_i) has at most 1 + (k+1)*bits bits; keep 32+ spare.
    pool_bits = std::min(kDefaultPoolBits, (half - 33) / (k + 1));
    if (pool_bits < kMinPoolBits) {
      throw Error(ErrorCode::kInvalidArgument,
                  "modulus too small for a pool of " + std::to_string(k) +
                      " factors");
    }
  }
  const OddPrimePool pool = GenerateOddPrimePool(k, pool_bits, rng);
  const StructuredPrime p = GenStructuredPrime(pool, half, rng);
  StructuredPrime q = GenStructuredPrime(pool, half, rng);
  while (q.p == p.p) q = GenStructuredPrime(pool, half, rng);
  return AssembleSystem(pool, p, q);
}

System SystemFromPrimes(const OddPrimePool& pool, const BigInt& p,
                        const BigInt& q) {
  pool.Validate();
  if (p == q) throw Error(ErrorCode::kInvalidArgument, "p == q");
  CheckStructured(pool, p);
  CheckStructured(pool, q);
  const BigInt radix = pool.Radix();
  return AssembleSystem(pool, {p, BigInt((p - 1) / radix)},
                        {q, BigInt((q - 1) / radix)});
}

TrapdoorAllocator::TrapdoorAllocator(std::size_t k) : k_(k) {
  if (k == 0 || k > 62) {
    throw Error(ErrorCode::kInvalidArgument, "allocator needs 1 <= k <= 62");
  }
  next_ = {0};
}

std::uint64_t TrapdoorAllocator::capacity() const {
  return (std::uint64_t{1} << k_) - 1;
}

std::vector<std::size_t> TrapdoorAllocator::Allocate() {
  if (next_.empty()) {
    throw Error(ErrorCode::kPoolExhausted,
                "all " + std::to_string(capacity()) + " subsets allocated");
  }
  std::vector<std::size_t> out = next_;
  ++allocated_;

  // Advance to the lexicographically next combination of the same size,
  // or the first combination of the next size.
  const std::size_t s = next_.size();
  std::size_t i = s;
  while (i > 0 && next_[i - 1] == k_ - s + (i - 1)) --i;
  if (i > 0) {
    ++next_[i - 1];
    for (std::size_t j = i; j < s; ++j) next_[j] = next_[j - 1] + 1;
  } else if (s < k_) {
    next_.resize(s + 1);
    for (std::size_t j = 0; j <= s; ++j) next_[j] = j;
  } else {
    next_.clear();
  }
  return out;
}

UserKeyPair UserKeygen(const SystemParams& params, const StrongKey& strong,
                       TrapdoorAllocator& allocator, UserId user_id, Rng& rng) {
  const std::vector<std::size_t> subset = allocator.Allocate();
  BigInt t = 1;
  for (std::size_t idx : subset) t *= params.pool.factors.at(idx);
  if (t <= 1 || !mpz_divisible_p(strong.lambda.get_mpz_t(), t.get_mpz_t())) {
    throw Error(ErrorCode::kInvalidArgument, "weak key t does not divide lambda");
  }

  const BigInt& n = params.n;
  const BigInt& n_sq = params.n_sq;
  const BigInt lambda_over_t = strong.lambda / t;
  const BigInt order_check = params.pool.u * t * n;
  const BigInt h_exponent = n * lambda_over_t;

  for (int attempt = 0; attempt < kMaxKeygenAttempts; ++attempt) {
    // g = a^(lambda/t): its Z*_n component has order dividing t and its
    // (1+n) component survives, so g^(u t n) = 1 holds by construction.
    const BigInt a = rng.Unit(n_sq);
    const BigInt g = ModExp(a, lambda_over_t, n_sq);
    if (ModExp(g, order_check, n_sq) != 1) continue;
    const BigInt l_lambda = LFunction(ModExp(g, strong.lambda, n_sq), n);
    if (Gcd(l_lambda, n) != 1) continue;
    const BigInt h = ModExp(g, h_exponent, n_sq);
    if (h == 1) continue;
    const BigInt g_t = ModExp(g, t, n_sq);
    if ((g_t - 1) % n != 0) continue;
    const BigInt l_t = LFunction(g_t, n);
    if (Gcd(l_t, n) != 1) continue;

    UserKeyPair out;
    out.public_key = {user_id, n, n_sq, g, h};
    out.weak_key.user_id = user_id;
    out.weak_key.t = t;
    out.weak_key.factor_subset = subset;
    out.weak_key.denominator_inverse = ModInverse(l_t, n);
    return out;
  }
  throw Error(ErrorCode::kSearchExhausted, "no valid generator g found");
}

Ciphertext EncryptWithNonce(const UserPublicKey& vpk, const BigInt& m,
                            const BigInt& r, OpCounts* ops) {
  if (sgn(m) < 0 || m >= vpk.n) {
    throw Error(ErrorCode::kPlaintextOutOfRange, "plaintext outside Z_n");
  }
  const BigInt gm = ModExp(vpk.g, m, vpk.n_sq, ops);
  const BigInt hr = ModExp(vpk.h, r, vpk.n_sq, ops);
  return {ModMul(gm, hr, vpk.n_sq, ops), vpk.user_id};
}

Ciphertext Encrypt(const UserPublicKey& vpk, const BigInt& m, Rng& rng,
                   OpCounts* ops) {
  if (sgn(m) < 0 || m >= vpk.n) {
    throw Error(ErrorCode::kPlaintextOutOfRange, "plaintext outside Z_n");
  }
  return EncryptWithNonce(vpk, m, rng.Below(vpk.n), ops);
}

BigInt WeakDecrypt(const UserWeakKey& wsk, const UserPublicKey& vpk,
                   const Ciphertext& c, OpCounts* ops) {
  CheckKey(vpk.user_id, wsk.user_id, "weak key");
  CheckKey(vpk.user_id, c.key_id, "ciphertext");
  const BigInt x = ModExp(c.value, wsk.t, vpk.n_sq, ops);
  return ModMul(LFunction(x, vpk.n), wsk.denominator_inverse, vpk.n, ops);
}

BigInt WeakDecryptUnchecked(const UserWeakKey& wsk, const UserPublicKey& vpk,
                            const Ciphertext& c) {
  const BigInt x = ModExp(c.value, wsk.t, vpk.n_sq);
  BigInt l = LFunctionUnchecked(x, vpk.n);
  return ModMul(l, wsk.denominator_inverse, vpk.n);
}

StrongDecryptionKey PrepareStrongDecryption(const StrongKey& ssk,
                                            const UserPublicKey& vpk,
                                            OpCounts* ops) {
  const BigInt g_lambda = ModExp(vpk.g, ssk.lambda, vpk.n_sq, ops);
  StrongDecryptionKey key;
  key.user_id = vpk.user_id;
  key.lambda = ssk.lambda;
  key.mu = ModInverse(LFunction(g_lambda, vpk.n), vpk.n, ops);
  key.n = vpk.n;
  key.n_sq = vpk.n_sq;
  return key;
}

BigInt StrongDecrypt(const StrongDecryptionKey& key, const Ciphertext& c,
                     OpCounts* ops) {
  CheckKey(key.user_id, c.key_id, "ciphertext");
  const BigInt x = ModExp(c.value, key.lambda, key.n_sq, ops);
  return ModMul(LFunction(x, key.n), key.mu, key.n, ops);
}

BigInt StrongDecrypt(const StrongKey& ssk, const UserPublicKey& vpk,
                     const Ciphertext& c) {
  return StrongDecrypt(PrepareStrongDecryption(ssk, vpk), c);
}

Ciphertext HomAdd(const UserPublicKey& vpk, const Ciphertext& c1,
                  const Ciphertext& c2, OpCounts* ops) {
  CheckKey(c1.key_id, c2.key_id, "hom_add operands");
  CheckKey(vpk.user_id, c1.key_id, "hom_add key");
  return {ModMul(c1.value, c2.value, vpk.n_sq, ops), c1.key_id};
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
    throw Error(ErrorCode::kMalformedMessage, "not a VP-HE ciphertext");
  }
  Ciphertext c;
  c.key_id = r.GetU64();
  c.value = r.GetBigInt();
  return c;
}

void WritePublicKey(ByteWriter& w, const UserPublicKey& vpk) {
  const WireSection saved = w.section();
  w.set_section(WireSection::kFraming);
  w.PutU8(kSchemeTag);
  w.PutU64(vpk.user_id);
  w.set_section(WireSection::kKeyMaterial);
  w.PutBigInt(vpk.n);
  w.PutFixedBigInt(vpk.g, CiphertextWidth(vpk.n));
  w.PutFixedBigInt(vpk.h, CiphertextWidth(vpk.n));
  w.set_section(saved);
}

UserPublicKey ReadPublicKey(ByteReader& r) {
  if (r.GetU8() != kSchemeTag) {
    throw Error(ErrorCode::kMalformedMessage, "not a VP-HE public key");
  }
  UserPublicKey vpk;
  vpk.user_id = r.GetU64();
  vpk.n = r.GetBigInt();
  vpk.n_sq = vpk.n * vpk.n;
  vpk.g = r.GetBigInt();
  vpk.h = r.GetBigInt();
  return vpk;
}

}  // namespace sama::vphe
