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


#include "sama/cpabe/shamir.h"

#include <set>

#include "sama/arith/modular.h"
#include "sama/common/errors.h"

namespace sama::cpabe {
namespace {

BigInt Mod(const BigInt& x, const BigInt& m) {
  BigInt out;
  mpz_mod(out.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return out;
}

}  // namespace

Polynomial RandomPolynomial(const BigInt& secret, int degree,
                            const BigInt& p, Rng& rng) {
  if (degree < 0) throw Error(ErrorCode::kInvalidArgument, "negative degree");
  Polynomial poly;
  poly.coefficients.push_back(Mod(secret, p));
  for (int i = 0; i < degree; ++i) poly.coefficients.push_back(rng.Below(p));
  return poly;
}

BigInt Evaluate(const Polynomial& poly, const BigInt& x, const BigInt& p) {
  BigInt acc = 0;
  for (auto it = poly.coefficients.rbegin(); it != poly.coefficients.rend();
       ++it) {
    acc = Mod(acc * x + *it, p);
  }
  return acc;
}

std::vector<Share> SplitSecret(const BigInt& secret, int threshold, int count,
                               const BigInt& p, Rng& rng) {
  if (threshold < 1 || threshold > count) {
    throw Error(ErrorCode::kInvalidArgument, "threshold outside [1, count]");
  }
  const Polynomial poly = RandomPolynomial(secret, threshold - 1, p, rng);
  std::vector<Share> shares;
  for (int i = 1; i <= count; ++i) shares.push_back({i, Evaluate(poly, i, p)});
  return shares;
}

BigInt LagrangeAtZero(const BigInt& x_i, std::span<const BigInt> xs,
                      const BigInt& p) {
  BigInt num = 1, den = 1;
  for (const BigInt& x_j : xs) {
    if (x_j == x_i) continue;
    num = Mod(num * -x_j, p);
    den = Mod(den * (x_i - x_j), p);
  }
  return Mod(num * ModInverse(den, p), p);
}

BigInt Reconstruct(std::span<const Share> shares, const BigInt& p) {
  std::vector<BigInt> xs;
  std::set<BigInt> seen;
  for (const Share& s : shares) {
    if (!seen.insert(Mod(s.x, p)).second) {
      throw Error(ErrorCode::kInvalidArgument, "repeated share index");
    }
    xs.push_back(s.x);
  }
  BigInt acc = 0;
  for (const Share& s : shares) {
    acc = Mod(acc + s.y * LagrangeAtZero(s.x, xs, p), p);
  }
  return acc;
}

}  // namespace sama::cpabe
