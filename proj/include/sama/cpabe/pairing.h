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


#ifndef SAMA_CPABE_PAIRING_H_
#define SAMA_CPABE_PAIRING_H_

// Symmetric pairing on the supersingular curve E: y^2 = x^3 + x over F_q,
// q = 3 mod 4, with q + 1 = h * r for a prime r. E(F_q) has q + 1 points and
// embedding degree 2; the distortion map (x, y) -> (-x, i*y) into
// E(F_q^2), F_q^2 = F_q[i] / (i^2 + 1), makes the reduced Tate pairing
// non-degenerate on the order-r subgroup G1 x G1.

#include <cstddef>
#include <string_view>

#include "sama/common/bytes.h"
#include "sama/common/rng.h"

namespace sama::cpabe {

// a + b*i
struct Fq2 {
  BigInt a;
  BigInt b;

  friend bool operator==(const Fq2&, const Fq2&) = default;
};

// Affine point; `infinity` marks the identity.
struct G1Point {
  BigInt x;
  BigInt y;
  bool infinity = true;

  friend bool operator==(const G1Point&, const G1Point&) = default;
};

// Element of the order-r subgroup of F_q^2*.
struct GtElement {
  Fq2 v;

  friend bool operator==(const GtElement&, const GtElement&) = default;
};

class PairingGroup {
 public:
  // r of r_bits bits, q of exactly q_bits bits. Requires
  // 32 <= r_bits and r_bits + 8 <= q_bits.
  static PairingGroup Generate(int r_bits, int q_bits, Rng& rng);
  // Throws kInvalidArgument unless q, r are prime, q = 3 mod 4 and r | q + 1.
  static PairingGroup FromParams(const BigInt& q, const BigInt& r);

  const BigInt& q() const { return q_; }
  const BigInt& r() const { return r_; }
  const BigInt& cofactor() const { return h_; }
  // Fixed generator of G1, derived by hashing a constant label.
  const G1Point& generator() const { return generator_; }

  bool IsOnCurve(const G1Point& p) const;
  G1Point Add(const G1Point& p1, const G1Point& p2) const;
  G1Point Double(const G1Point& p) const;
  G1Point Negate(const G1Point& p) const;
  // k * p for k >= 0 (not reduced mod r).
  G1Point Mul(const G1Point& p, const BigInt& k) const;

  // Deterministic map into G1 (try-and-increment, then cofactor clearing).
  G1Point HashToG1(std::string_view label) const;
  // Uniform in [1, r).
  BigInt RandomScalar(Rng& rng) const;

  GtElement Pair(const G1Point& p1, const G1Point& p2) const;
  GtElement GtOne() const;
  GtElement GtMul(const GtElement& x, const GtElement& y) const;
  GtElement GtPow(const GtElement& x, const BigInt& k) const;
  // Elements of G_T are unitary, so the inverse is the conjugate.
  GtElement GtInverse(const GtElement& x) const;

  std::size_t FieldBytes() const;
  // Uncompressed fixed width: x || y, each FieldBytes() long.
  std::size_t PointBytes() const { return 2 * FieldBytes(); }
  // The identity encodes as (0, 0), which is a 2-torsion point and so never
  // a member of G1. Readers reject points off the curve with
  // kMalformedMessage.
  void WritePoint(ByteWriter& w, const G1Point& p) const;
  G1Point ReadPoint(ByteReader& r) const;
  Bytes GtBytes(const GtElement& x) const;

 private:
  PairingGroup(BigInt q, BigInt r);

  Fq2 Mul2(const Fq2& x, const Fq2& y) const;
  Fq2 Square2(const Fq2& x) const;
  Fq2 Pow2(const Fq2& x, const BigInt& k) const;
  Fq2 Inverse2(const Fq2& x) const;
  // Miller function f_{r,p} evaluated at the distorted image of q2.
  Fq2 Miller(const G1Point& p, const G1Point& q2) const;

  BigInt q_;
  BigInt r_;
  BigInt h_;
  BigInt sqrt_exp_;  // (q + 1) / 4
  G1Point generator_;
};

}  // namespace sama::cpabe

#endif  // SAMA_CPABE_PAIRING_H_
