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

#include "sama/common/rng.h"

#include "sama/common/errors.h"

namespace sama {
namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng Rng::Derive(std::uint64_t seed, std::string_view label) {
  // FNV-1a over the label, then mixed with the seed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : label) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return Rng(SplitMix64(seed ^ SplitMix64(h)));
}

BigInt Rng::Bits(std::size_t bits) {
  BigInt out = 0;
  std::size_t produced = 0;
  while (produced < bits) {
    out <<= 64;
    out += static_cast<unsigned long>(engine_());
    produced += 64;
  }
  if (produced > bits) out >>= static_cast<mp_bitcnt_t>(produced - bits);
  return out;
}

BigInt Rng::Below(const BigInt& bound) {
  if (sgn(bound) <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "Rng::Below needs a positive bound");
  }
  if (bound == 1) return 0;
  const std::size_t bits = BitLength(bound - 1);
  while (true) {
    BigInt candidate = Bits(bits);
    if (candidate < bound) return candidate;
  }
}

BigInt Rng::Between(const BigInt& lo, const BigInt& hi) {
  if (lo > hi) throw Error(ErrorCode::kInvalidArgument, "empty range");
  return lo + Below(BigInt(hi - lo + 1));
}

BigInt Rng::Unit(const BigInt& m) {
  if (m < 2) throw Error(ErrorCode::kInvalidArgument, "modulus must be >= 2");
  while (true) {
    BigInt candidate = Below(m);
    if (sgn(candidate) == 0) continue;
    BigInt g;
    mpz_gcd(g.get_mpz_t(), candidate.get_mpz_t(), m.get_mpz_t());
    if (g == 1) return candidate;
  }
}

std::uint64_t Rng::Below(std::uint64_t bound) {
  if (bound == 0) {
    throw Error(ErrorCode::kInvalidArgument, "Rng::Below needs a positive bound");
  }
  std::uniform_int_distribution<std::uint64_t> dist(0, bound - 1);
  return dist(engine_);
}

void Rng::Fill(std::span<std::uint8_t> out) {
  std::size_t i = 0;
  while (i < out.size()) {
    std::uint64_t word = engine_();
    for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
      out[i] = static_cast<std::uint8_t>(word >> (8 * b));
    }
  }
}

}  // namespace sama
