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

#ifndef SAMA_ARITH_MODULAR_H_
#define SAMA_ARITH_MODULAR_H_

#include "sama/arith/op_counts.h"
#include "sama/common/bytes.h"

namespace sama {

// base^exponent mod modulus. Negative bases are reduced first.
// Requires modulus >= 2 and exponent >= 0.
BigInt ModExp(const BigInt& base, const BigInt& exponent,
              const BigInt& modulus, OpCounts* ops = nullptr);

BigInt ModMul(const BigInt& a, const BigInt& b, const BigInt& modulus,
              OpCounts* ops = nullptr);

// Paillier's L(x) = (x - 1) / n. Throws kDomainError unless x == 1 mod n,
// which is how a malformed ciphertext or a wrong trapdoor shows up.
BigInt LFunction(const BigInt& x, const BigInt& n);

// floor((x - 1) / n) with no domain check. Only for probing what a wrong
// key produces.
BigInt LFunctionUnchecked(const BigInt& x, const BigInt& n);

BigInt Lcm(const BigInt& a, const BigInt& b);
BigInt Gcd(const BigInt& a, const BigInt& b);

// Throws kNotInvertible when gcd(a, m) != 1.
BigInt ModInverse(const BigInt& a, const BigInt& m, OpCounts* ops = nullptr);

}  // namespace sama

#endif  // SAMA_ARITH_MODULAR_H_
