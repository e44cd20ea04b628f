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

#include "sama/arith/primes.h"

#include <algorithm>
#include <array>
#include <set>

#include "sama/arith/modular.h"
#include "sama/common/errors.h"

namespace sama {
namespace {

// Exact bound for the first-13-primes witness set (Sorenson & Webster).
const BigInt& DeterministicBound() {
  static const BigInt kBound("3317044064679887385961981");
  return kBound;
}

constexpr std::array<unsigned long, 13> kWitnesses = {2,  3,  5,  7,  11, 13, 17,
                                                      19, 23, 29, 31, 37, 41};

const std::vector<unsigned long>& SmallPrimes() {
  static const std::vector<unsigned long> primes = [] {
    constexpr unsigned long kLimit = 2000;
    std::vector<bool> composite(kLimit + 1, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 3; i <= kLimit; i += 2) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j <= kLimit; j += 2 * i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool MillerRabinRound(const BigInt& n, const BigInt& d, unsigned s,
                      const BigInt& witness) {
  const BigInt n_minus_1 = n - 1;
  BigInt x = ModExp(witness, d, n);
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = ModMul(x, x, n);
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

// true when some small odd prime divides x and x is not that prime.
bool HasSmallFactor(const BigInt& x) {
  for (unsigned long p : SmallPrimes()) {
    if (x == p) return false;
    if (mpz_divisible_ui_p(x.get_mpz_t(), p)) return true;
  }
  return false;
}

bool QuickPrimeFilter(const BigInt& x) {
  if (HasSmallFactor(x)) return false;
  return mpz_probab_prime_p(x.get_mpz_t(), 1) > 0;
}

}  // namespace

bool IsProbablePrime(const BigInt& x, int rounds) {
  if (x < 2) return false;
  if (x < 4) return true;
  if (mpz_even_p(x.get_mpz_t())) return false;
  if (x < DeterministicBound()) {
    BigInt d = x - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
      d >>= 1;
      ++s;
    }
    for (unsigned long w : kWitnesses) {
      if (x == w) return true;
      if (!MillerRabinRound(x, d, s, BigInt(w))) return false;
    }
    return true;
  }
  return mpz_probab_prime_p(x.get_mpz_t(), std::max(rounds, 1)) > 0;
}

BigInt OddPrimePool::Radix() const {
  BigInt out = 2 * u;
  for (const auto& v : factors) out *= v;
  return out;
}

void OddPrimePool::Validate() const {
  if (factors.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "pool needs at least one factor");
  }
  std::set<BigInt> seen;
  auto check = [&](const BigInt& x) {
    if (mpz_even_p(x.get_mpz_t()) || !IsProbablePrime(x)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "pool element " + x.get_str() + " is not an odd prime");
    }
    if (!seen.insert(x).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "pool element " + x.get_str() + " repeated");
    }
  };
  check(u);
  for (const auto& v : factors) check(v);
}

OddPrimePool GenerateOddPrimePool(int k, int bits, Rng& rng) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "pool size k must be >= 1");
  if (bits < 3) throw Error(ErrorCode::kInvalidArgument, "pool primes need >= 3 bits");
  const BigInt lo = BigInt(1) << (bits - 1);
  const BigInt hi = (BigInt(1) << bits) - 1;
  // Enough primes must exist in [lo, hi]: roughly 2^(bits-1) / (bits * ln 2).
  std::set<BigInt> chosen;
  std::vector<BigInt> ordered;
  std::uint64_t attempts = 0;
  while (ordered.size() < static_cast<std::size_t>(k + 1)) {
    if (++attempts > 1'000'000) {
      throw Error(ErrorCode::kSearchExhausted, "could not fill odd prime pool");
    }
    BigInt candidate = rng.Between(lo, hi) | 1;
    if (!IsProbablePrime(candidate) || chosen.count(candidate)) continue;
    chosen.insert(candidate);
    ordered.push_back(candidate);
  }
  OddPrimePool pool;
  pool.u = ordered.front();
  pool.factors.assign(ordered.begin() + 1, ordered.end());
  pool.bit_budget = bits;
  return pool;
}

StructuredPrime GenStructuredPrime(const OddPrimePool& pool, int target_bits,
                                   Rng& rng,
                                   const StructuredPrimeOptions& options) {
  pool.Validate();
  const BigInt radix = pool.Radix();
  if (static_cast<std::size_t>(target_bits) < BitLength(radix) + 32) {
    throw Error(ErrorCode::kInvalidArgument,
                "target_bits must exceed the pool radix by >= 32 bits");
  }
  // Range of p, then of the cofactor v with p = radix * v + 1.
  const BigInt p_hi = (BigInt(1) << target_bits) - 1;
  const BigInt p_lo = options.high_two_bits
                          ? BigInt(3) << (target_bits - 2)
                          : BigInt(1) << (target_bits - 1);
  BigInt v_lo, v_hi;
  BigInt tmp = p_lo - 1;
  mpz_cdiv_q(v_lo.get_mpz_t(), tmp.get_mpz_t(), radix.get_mpz_t());
  tmp = p_hi - 1;
  mpz_fdiv_q(v_hi.get_mpz_t(), tmp.get_mpz_t(), radix.get_mpz_t());

  for (std::uint64_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    BigInt v = rng.Between(v_lo, v_hi) | 1;
    if (v > v_hi) continue;
    if (v == pool.u || std::find(pool.factors.begin(), pool.factors.end(), v) !=
                           pool.factors.end()) {
      continue;
    }
    const BigInt p = radix * v + 1;
    if (!QuickPrimeFilter(v) || !QuickPrimeFilter(p)) continue;
    if (IsProbablePrime(p) && IsProbablePrime(v)) return {p, v};
  }
  throw Error(ErrorCode::kSearchExhausted,
              "no structured prime within " +
                  std::to_string(options.max_attempts) + " candidates");
}

BigInt GenPrime(int bits, Rng& rng, std::uint64_t max_attempts) {
  if (bits < 3) throw Error(ErrorCode::kInvalidArgument, "prime needs >= 3 bits");
  const BigInt lo = BigInt(3) << (bits - 2);
  const BigInt hi = (BigInt(1) << bits) - 1;
  for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
    BigInt c = rng.Between(lo, hi) | 1;
    if (c > hi) continue;
    if (QuickPrimeFilter(c) && IsProbablePrime(c)) return c;
  }
  throw Error(ErrorCode::kSearchExhausted, "no prime found");
}

}  // namespace sama
