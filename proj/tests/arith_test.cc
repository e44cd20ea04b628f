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

#include <cstdint>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "sama/arith/modular.h"
#include "sama/arith/primes.h"
#include "sama/common/errors.h"

namespace sama {
namespace {

// Independent oracles: plain 64-bit arithmetic, no GMP.
bool TrialDivisionPrime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> TrialFactor(std::uint64_t x) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    while (x % d == 0) {
      out.push_back(d);
      x /= d;
    }
  }
  if (x > 1) out.push_back(x);
  return out;
}

std::int64_t ExtendedEuclidInverse(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = a, r = m, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  EXPECT_EQ(old_r, 1);
  return ((old_s % m) + m) % m;
}

std::uint64_t PowMod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 result = 1, base = b % m;
  while (e > 0) {
    if (e & 1) result = result * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected sama::Error";
  return ErrorCode::kInvalidArgument;
}

TEST(ModExpTest, SmallValues) {
  EXPECT_EQ(ModExp(5, 0, 7), 1);
  EXPECT_EQ(ModExp(2, 10, 1000), 24);
  EXPECT_EQ(ModExp(-2, 3, 7), 6);
  EXPECT_EQ(CodeOf([] { ModExp(2, 3, 1); }), ErrorCode::kInvalidArgument);
}

TEST(ModExpTest, CountsOnlyWhenGivenACounter) {
  OpCounts ops;
  ModExp(3, 5, 11, &ops);
  ModExp(3, 5, 11);
  ModMul(3, 5, 11, &ops);
  EXPECT_EQ(ops.mod_exp, 1u);
  EXPECT_EQ(ops.mod_mul, 1u);
}

TEST(ModExpTest, CarmichaelExponentKillsEveryUnitOnToyModulus) {
  // p = 11, q = 23: lambda from the trial-division factorisation of p-1, q-1.
  const std::uint64_t p = 11, q = 23, n = p * q, n_sq = n * n;
  const std::uint64_t lambda = std::lcm(p - 1, q - 1);
  ASSERT_EQ(lambda, 110u);
  const BigInt exponent = BigInt(n) * lambda;
  for (std::uint64_t g = 1; g < n_sq; ++g) {
    if (std::gcd(g, n) != 1) continue;
    ASSERT_EQ(ModExp(g, exponent, n_sq), 1) << "g=" << g;
  }
}

TEST(LFunctionTest, Examples) {
  const BigInt n = 253;
  EXPECT_EQ(LFunction(1, n), 0);
  EXPECT_EQ(LFunction(n + 1, n), 1);
  // Binomial oracle: (1+n)^3 == 1 + 3n mod n^2.
  const BigInt x = ModExp(n + 1, 3, n * n);
  EXPECT_EQ(x, 1 + 3 * n);
  EXPECT_EQ(LFunction(x, n), 3);
  EXPECT_EQ(CodeOf([&] { LFunction(2, n); }), ErrorCode::kDomainError);
}

TEST(LFunctionTest, InvertsTheBinomialSubgroupForEveryResidue) {
  const BigInt n = 253, n_sq = n * n;
  for (long m = 0; m < 253; ++m) {
    ASSERT_EQ(LFunction(ModExp(n + 1, m, n_sq), n), m);
  }
  Rng rng(17);
  const BigInt big_n = GenPrime(128, rng) * GenPrime(128, rng);
  for (int i = 0; i < 200; ++i) {
    const BigInt m = rng.Below(big_n);
    ASSERT_EQ(LFunction(ModExp(big_n + 1, m, big_n * big_n), big_n), m);
  }
}

TEST(LcmTest, Examples) {
  EXPECT_EQ(Lcm(4, 6), 12);
  EXPECT_EQ(Lcm(1, 9), 9);
  // Oracle: max prime powers of the trial factorisations of 10 and 22.
  auto f10 = TrialFactor(10), f22 = TrialFactor(22);
  EXPECT_EQ(f10, (std::vector<std::uint64_t>{2, 5}));
  EXPECT_EQ(f22, (std::vector<std::uint64_t>{2, 11}));
  EXPECT_EQ(Lcm(10, 22), 2 * 5 * 11);
}

TEST(ModInverseTest, Examples) {
  EXPECT_EQ(ModInverse(1, 97), 1);
  EXPECT_EQ(ModInverse(3, 7), 5);
  EXPECT_EQ(CodeOf([] { ModInverse(6, 9); }), ErrorCode::kNotInvertible);
}

TEST(ModInverseTest, PaillierMuOnToyKeysMatchesExtendedEuclid) {
  // p = 13, q = 17: gcd(n, (p-1)(q-1)) = 1 so mu exists for g = n + 1.
  const BigInt n = 221, n_sq = n * n, lambda = Lcm(12, 16);
  for (long g : {222L, 500L, 1234L, 40001L}) {
    if (Gcd(g, n) != 1) continue;
    const BigInt l = LFunction(ModExp(g, lambda, n_sq), n);
    if (Gcd(l, n) != 1) continue;
    const std::int64_t expected = ExtendedEuclidInverse(l.get_si(), 221);
    EXPECT_EQ(ModInverse(l, n), expected) << "g=" << g;
  }
}

TEST(ModInverseTest, ElevenTwentyThreeHasNoPaillierMu) {
  // 11 divides q - 1 = 22, so L(g^lambda) shares the factor 11 with n for
  // every g; no mu exists.
  const BigInt n = 253, n_sq = n * n;
  for (long g : {254L, 500L, 1234L}) {
    const BigInt l = LFunction(ModExp(g, 110, n_sq), n);
    EXPECT_EQ(CodeOf([&] { ModInverse(l, n); }), ErrorCode::kNotInvertible);
  }
}

TEST(IsProbablePrimeTest, Examples) {
  EXPECT_FALSE(IsProbablePrime(0));
  EXPECT_FALSE(IsProbablePrime(1));
  EXPECT_TRUE(IsProbablePrime(2));
  EXPECT_TRUE(IsProbablePrime(3));
  EXPECT_FALSE(IsProbablePrime(561));
  EXPECT_FALSE(TrialDivisionPrime(561));
}

TEST(IsProbablePrimeTest, AgreesWithTrialDivisionBelow50000) {
  for (std::uint64_t x = 0; x < 50000; ++x) {
    ASSERT_EQ(IsProbablePrime(x), TrialDivisionPrime(x)) << x;
  }
}

TEST(IsProbablePrimeTest, CarmichaelAndStrongPseudoprimes) {
  for (std::uint64_t x : {561ULL, 1105ULL, 1729ULL, 2465ULL, 2821ULL, 6601ULL,
                          8911ULL, 3215031751ULL, 2152302898747ULL,
                          3474749660383ULL, 341550071728321ULL}) {
    EXPECT_FALSE(IsProbablePrime(x)) << x;
  }
  // 2^61 - 1 and 2^127 - 1 are prime; 2^128 + 1 is not.
  EXPECT_TRUE(IsProbablePrime((BigInt(1) << 61) - 1));
  EXPECT_TRUE(IsProbablePrime((BigInt(1) << 127) - 1));
  EXPECT_FALSE(IsProbablePrime((BigInt(1) << 128) + 1));
}

TEST(OddPrimePoolTest, ValidationRejectsBadPools) {
  OddPrimePool dup{3, {5, 5}, 3};
  EXPECT_EQ(CodeOf([&] { dup.Validate(); }), ErrorCode::kInvalidArgument);
  OddPrimePool u_in_factors{5, {5, 7}, 3};
  EXPECT_EQ(CodeOf([&] { u_in_factors.Validate(); }), ErrorCode::kInvalidArgument);
  OddPrimePool composite{3, {9, 7}, 4};
  EXPECT_EQ(CodeOf([&] { composite.Validate(); }), ErrorCode::kInvalidArgument);
  OddPrimePool even{3, {2, 7}, 2};
  EXPECT_EQ(CodeOf([&] { even.Validate(); }), ErrorCode::kInvalidArgument);
  OddPrimePool ok{3, {5, 7}, 3};
  EXPECT_NO_THROW(ok.Validate());
  EXPECT_EQ(ok.Radix(), 210);
}

TEST(OddPrimePoolTest, GeneratedPoolIsDistinctOddPrimes) {
  Rng rng(1);
  OddPrimePool pool = GenerateOddPrimePool(6, 16, rng);
  EXPECT_EQ(pool.k(), 6u);
  EXPECT_NO_THROW(pool.Validate());
  EXPECT_EQ(BitLength(pool.u), 16u);
  for (const auto& v : pool.factors) {
    EXPECT_EQ(BitLength(v), 16u);
    EXPECT_TRUE(TrialDivisionPrime(v.get_ui()));
  }
}

TEST(StructuredPrimeTest, TinyPoolMatchesUpwardScanOracle) {
  const OddPrimePool pool{3, {5, 7}, 3};
  Rng rng(5);
  const StructuredPrime sp = GenStructuredPrime(pool, 40, rng);
  EXPECT_EQ(sp.p, 210 * sp.cofactor + 1);
  EXPECT_TRUE(TrialDivisionPrime(sp.p.get_ui()));
  EXPECT_TRUE(TrialDivisionPrime(sp.cofactor.get_ui()));
  EXPECT_EQ(BitLength(sp.p), 40u);

  // The scan oracle: the smallest prime v outside the pool with 210 v + 1
  // prime.
  std::uint64_t v = 3;
  while (v == 3 || v == 5 || v == 7 || !TrialDivisionPrime(v) ||
         !TrialDivisionPrime(210 * v + 1)) {
    v += 2;
  }
  EXPECT_EQ(v, 11u);  // 2311 = 2*3*5*7*11 + 1, the toy fixture prime
}

TEST(StructuredPrimeTest, DuplicatePoolFailsBeforeSearch) {
  Rng rng(5);
  const OddPrimePool pool{3, {5, 5}, 3};
  EXPECT_EQ(CodeOf([&] { GenStructuredPrime(pool, 64, rng); }),
            ErrorCode::kInvalidArgument);
}

TEST(StructuredPrimeTest, TooFewBitsOfRoom) {
  Rng rng(5);
  const OddPrimePool pool{3, {5, 7}, 3};
  EXPECT_EQ(CodeOf([&] { GenStructuredPrime(pool, 39, rng); }),
            ErrorCode::kInvalidArgument);
}

TEST(StructuredPrimeTest, SearchExhaustion) {
  Rng rng(5);
  const OddPrimePool pool{3, {5, 7}, 3};
  StructuredPrimeOptions options;
  options.max_attempts = 1;
  // A single candidate almost never works; try a few seeds to be sure one
  // of them reports exhaustion.
  bool exhausted = false;
  for (int seed = 0; seed < 20 && !exhausted; ++seed) {
    Rng r(seed);
    try {
      GenStructuredPrime(pool, 200, r, options);
    } catch (const Error& e) {
      exhausted = e.code() == ErrorCode::kSearchExhausted;
    }
  }
  EXPECT_TRUE(exhausted);
}

TEST(StructuredPrimeTest, FiveTwelveBitsWithDefaultPool) {
  Rng rng(2024);
  const OddPrimePool pool = GenerateOddPrimePool(4, 16, rng);
  const StructuredPrime sp = GenStructuredPrime(pool, 512, rng);
  EXPECT_EQ(BitLength(sp.p), 512u);
  EXPECT_TRUE(IsProbablePrime(sp.p));
  EXPECT_TRUE(IsProbablePrime(sp.cofactor));
  EXPECT_EQ(sp.p, pool.Radix() * sp.cofactor + 1);
  for (const auto& v : pool.factors) {
    BigInt mod = 2 * pool.u * v;
    EXPECT_EQ(BigInt(sp.p % mod), 1);
  }
}

TEST(StructuredPrimeTest, ProductOfTwoHasExactBitLength) {
  Rng rng(8);
  const OddPrimePool pool = GenerateOddPrimePool(3, 16, rng);
  for (int i = 0; i < 5; ++i) {
    const BigInt p = GenStructuredPrime(pool, 128, rng).p;
    const BigInt q = GenStructuredPrime(pool, 128, rng).p;
    EXPECT_EQ(BitLength(p * q), 256u);
  }
}

TEST(GenPrimeTest, SmallBitSizesAgreeWithOracle) {
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const BigInt p = GenPrime(30, rng);
    EXPECT_EQ(BitLength(p), 30u);
    EXPECT_TRUE(TrialDivisionPrime(p.get_ui()));
  }
  // Cross-check: PowMod64 Fermat on a few outputs.
  const BigInt p = GenPrime(40, rng);
  EXPECT_EQ(PowMod64(2, p.get_ui() - 1, p.get_ui()), 1u);
}

}  // namespace
}  // namespace sama
