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

#ifndef SAMA_ARITH_PRIMES_H_
#define SAMA_ARITH_PRIMES_H_

#include <cstdint>
#include <vector>

#include "sama/common/bytes.h"
#include "sama/common/rng.h"

namespace sama {

inline constexpr int kDefaultPrimalityRounds = 64;

// Miller-Rabin. Below 3.3e24 a fixed witness set makes the answer exact;
// above it GMP runs BPSW plus random-base rounds.
bool IsProbablePrime(const BigInt& x, int rounds = kDefaultPrimalityRounds);

// The small odd primes u, v_1..v_k shared by both structured primes of a
// multi-key modulus.
struct OddPrimePool {
  BigInt u;
  std::vector<BigInt> factors;
  int bit_budget = 16;

  std::size_t k() const { return factors.size(); }
  // 2 * u * v_1 * ... * v_k
  BigInt Radix() const;
  // Throws kInvalidArgument on any invariant violation (duplicate, even,
  // composite, empty factor list).
  void Validate() const;
};

// k + 1 distinct random odd primes with exactly `bits` bits each.
OddPrimePool GenerateOddPrimePool(int k, int bits, Rng& rng);

// p = Radix(pool) * cofactor + 1 with both p and cofactor prime.
struct StructuredPrime {
  BigInt p;
  BigInt cofactor;
};

struct StructuredPrimeOptions {
  std::uint64_t max_attempts = 1'000'000;
  // When set, p >= 3 * 2^(target_bits - 2) so a product of two such primes
  // has exactly 2 * target_bits bits.
  bool high_two_bits = true;
};

// Searches for a structured prime of exactly `target_bits` bits. Requires
// target_bits >= BitLength(pool.Radix()) + 32. Throws kSearchExhausted after
// options.max_attempts candidates.
StructuredPrime GenStructuredPrime(const OddPrimePool& pool, int target_bits,
                                   Rng& rng,
                                   const StructuredPrimeOptions& options = {});

// Random prime of exactly `bits` bits with the top two bits set.
BigInt GenPrime(int bits, Rng& rng, std::uint64_t max_attempts = 1'000'000);

}  // namespace sama

#endif  // SAMA_ARITH_PRIMES_H_
