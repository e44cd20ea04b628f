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

#ifndef SAMA_COMMON_RNG_H_
#define SAMA_COMMON_RNG_H_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "sama/common/bytes.h"

namespace sama {

// Seedable randomness source. Every random draw in the library goes through
// an Rng passed by reference, so a run is a pure function of its seeds.
// Not a CSPRNG: this is a simulator.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent child stream keyed by a label, e.g. "sp" or "do/3".
  static Rng Derive(std::uint64_t seed, std::string_view label);

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 2^bits).
  BigInt Bits(std::size_t bits);
  // Uniform in [0, bound); bound must be positive.
  BigInt Below(const BigInt& bound);
  // Uniform in [lo, hi]; requires lo <= hi.
  BigInt Between(const BigInt& lo, const BigInt& hi);
  // Uniform in Z*_m.
  BigInt Unit(const BigInt& m);
  // Uniform in [0, bound) for small bounds.
  std::uint64_t Below(std::uint64_t bound);

  void Fill(std::span<std::uint8_t> out);

 private:
  std::mt19937_64 engine_;
};

}  // namespace sama

#endif  // SAMA_COMMON_RNG_H_
