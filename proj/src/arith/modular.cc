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

#include "sama/arith/modular.h"

#include <ostream>

#include "sama/common/errors.h"

namespace sama {

std::ostream& operator<<(std::ostream& os, const OpCounts& c) {
  return os << "{ModExp=" << c.mod_exp << ", ModMul=" << c.mod_mul
            << ", Exp=" << c.exp << ", BiPair=" << c.bi_pair
            << ", ModInverse=" << c.mod_inverse << "}";
}

BigInt ModExp(const BigInt& base, const BigInt& exponent,
              const BigInt& modulus, OpCounts* ops) {
  if (modulus < 2) {
    throw Error(ErrorCode::kInvalidArgument, "ModExp modulus must be >= 2");
  }
  if (sgn(exponent) < 0) {
    throw Error(ErrorCode::kInvalidArgument, "ModExp exponent must be >= 0");
  }
  BigInt out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(),
           modulus.get_mpz_t());
  CountModExp(ops);
  return out;
}

BigInt ModMul(const BigInt& a, const BigInt& b, const BigInt& modulus,
              OpCounts* ops) {
  if (modulus < 2) {
    throw Error(ErrorCode::kInvalidArgument, "ModMul modulus must be >= 2");
  }
  BigInt out = a * b;
  mpz_mod(out.get_mpz_t(), out.get_mpz_t(), modulus.get_mpz_t());
  CountModMul(ops);
  return out;
}

BigInt LFunction(const BigInt& x, const BigInt& n) {
  if (sgn(n) <= 0) throw Error(ErrorCode::kInvalidArgument, "L needs n > 0");
  if (sgn(x) <= 0) throw Error(ErrorCode::kDomainError, "L input must be positive");
  BigInt shifted = x - 1;
  if (!mpz_divisible_p(shifted.get_mpz_t(), n.get_mpz_t())) {
    throw Error(ErrorCode::kDomainError, "L input is not 1 mod n");
  }
  BigInt out;
  mpz_divexact(out.get_mpz_t(), shifted.get_mpz_t(), n.get_mpz_t());
  return out;
}

BigInt LFunctionUnchecked(const BigInt& x, const BigInt& n) {
  BigInt out;
  BigInt shifted = x - 1;
  mpz_fdiv_q(out.get_mpz_t(), shifted.get_mpz_t(), n.get_mpz_t());
  return out;
}

BigInt Lcm(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

BigInt Gcd(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

BigInt ModInverse(const BigInt& a, const BigInt& m, OpCounts* ops) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "modulus must be >= 1");
  if (m == 1) return 0;
  BigInt out;
  if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw Error(ErrorCode::kNotInvertible,
                "gcd(" + a.get_str() + ", m) != 1");
  }
  if (ops != nullptr) ++ops->mod_inverse;
  return out;
}

}  // namespace sama
