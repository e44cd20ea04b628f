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


#ifndef SAMA_CPABE_SHAMIR_H_
#define SAMA_CPABE_SHAMIR_H_

// Polynomial secret sharing over Z_p for threshold gates.

#include <span>
#include <vector>

#include "sama/common/bytes.h"
#include "sama/common/rng.h"

namespace sama::cpabe {

// coefficients[0] is the secret; degree = threshold - 1.
struct Polynomial {
  std::vector<BigInt> coefficients;
};

struct Share {
  BigInt x;
  BigInt y;
};

Polynomial RandomPolynomial(const BigInt& secret, int degree,
                            const BigInt& p, Rng& rng);
BigInt Evaluate(const Polynomial& poly, const BigInt& x, const BigInt& p);

// Shares at x = 1..count.
std::vector<Share> SplitSecret(const BigInt& secret, int threshold, int count,
                               const BigInt& p, Rng& rng);

// Lagrange basis value at 0 for node x_i over the index set xs.
BigInt LagrangeAtZero(const BigInt& x_i, std::span<const BigInt> xs,
                      const BigInt& p);

// Interpolates at 0. Throws kInvalidArgument on repeated x.
BigInt Reconstruct(std::span<const Share> shares, const BigInt& p);

}  // namespace sama::cpabe

#endif  // SAMA_CPABE_SHAMIR_H_
