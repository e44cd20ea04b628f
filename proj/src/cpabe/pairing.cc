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


#include "sama/cpabe/pairing.h"

#include <string>
#include <utility>

#include "sama/arith/primes.h"
#include "sama/common/errors.h"
#include "sama/cpabe/envelope.h"

namespace sama::cpabe {
namespace {

constexpr int kHashToCurveAttempts = 1000;
constexpr std::string_view kGeneratorLabel = "sama/cpabe/generator";

BigInt Mod(const BigInt& x, const BigInt& m) {
  BigInt out;
  mpz_mod(out.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return out;
}

BigInt Inv(const BigInt& x, const BigInt& m) {
  BigInt out;
  if (mpz_invert(out.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw Error(ErrorCode::kNotInvertible, "field element not invertible");
  }
  return out;
}

}  // namespace

PairingGroup::PairingGroup(BigInt q, BigInt r)
    : q_(std::move(q)), r_(std::move(r)) {
  h_ = (q_ + 1) / r_;
  sqrt_exp_ = (q_ + 1) / 4;
  generator_ = HashToG1(kGeneratorLabel);
}

PairingGroup PairingGroup::Generate(int r_bits, int q_bits, Rng& rng) {
  if (r_bits < 32 || q_bits < r_bits + 8) {
    throw Error(ErrorCode::kInvalidArgument,
                "pairing group needs r >= 32 bits and q >= r + 8 bits");
  }
  const BigInt r = GenPrime(r_bits, rng);
  const BigInt q_lo = BigInt(1) << (q_bits - 1);
  const BigInt h_lo = (q_lo + 1 + r - 1) / r;
  const BigInt h_hi = (BigInt(1) << q_bits) / r;
  for (int attempt = 0; attempt < 1'000'000; ++attempt) {
    BigInt h = rng.Between(h_lo, h_hi);
    h -= h % 4;
    if (h < h_lo) continue;
    const BigInt q = h * r - 1;
    if (BitLength(q) != static_cast<std::size_t>(q_bits)) continue;
    if (mpz_probab_prime_p(q.get_mpz_t(), 1) == 0 || !IsProbablePrime(q)) {
      continue;
    }
    return PairingGroup(q, r);
  }
  throw Error(ErrorCode::kSearchExhausted, "no Type-A field prime found");
}

PairingGroup PairingGroup::FromParams(const BigInt& q, const BigInt& r) {
  if (!IsProbablePrime(q) || !IsProbablePrime(r) || q % 4 != 3 ||
      (q + 1) % r != 0 || r == 2) {
    throw Error(ErrorCode::kInvalidArgument, "not a Type-A parameter pair");
  }
  return PairingGroup(q, r);
}

bool PairingGroup::IsOnCurve(const G1Point& p) const {
  if (p.infinity) return true;
  if (p.x < 0 || p.x >= q_ || p.y < 0 || p.y >= q_) return false;
  return Mod(p.y * p.y - p.x * p.x * p.x - p.x, q_) == 0;
}

G1Point PairingGroup::Negate(const G1Point& p) const {
  if (p.infinity) return p;
  return {p.x, Mod(-p.y, q_), false};
}

G1Point PairingGroup::Double(const G1Point& p) const {
  if (p.infinity || p.y == 0) return {};
  const BigInt lambda = Mod((3 * p.x * p.x + 1) * Inv(2 * p.y, q_), q_);
  const BigInt x3 = Mod(lambda * lambda - 2 * p.x, q_);
  return {x3, Mod(lambda * (p.x - x3) - p.y, q_), false};
}

G1Point PairingGroup::Add(const G1Point& p1, const G1Point& p2) const {
  if (p1.infinity) return p2;
  if (p2.infinity) return p1;
  if (p1.x == p2.x) {
    if (p1.y == p2.y) return Double(p1);
    return {};
  }
  const BigInt lambda = Mod((p2.y - p1.y) * Inv(Mod(p2.x - p1.x, q_), q_), q_);
  const BigInt x3 = Mod(lambda * lambda - p1.x - p2.x, q_);
  return {x3, Mod(lambda * (p1.x - x3) - p1.y, q_), false};
}

G1Point PairingGroup::Mul(const G1Point& p, const BigInt& k) const {
  if (k < 0) throw Error(ErrorCode::kInvalidArgument, "negative scalar");
  G1Point acc;
  for (std::size_t i = BitLength(k); i-- > 0;) {
    acc = Double(acc);
    if (mpz_tstbit(k.get_mpz_t(), i)) acc = Add(acc, p);
  }
  return acc;
}

G1Point PairingGroup::HashToG1(std::string_view label) const {
  const std::size_t want = FieldBytes() + 16;
  for (int counter = 0; counter < kHashToCurveAttempts; ++counter) {
    Bytes stream;
    for (std::uint8_t block = 0; stream.size() < want + 1; ++block) {
      ByteWriter w;
      w.PutString(label);
      w.PutU32(static_cast<std::uint32_t>(counter));
      w.PutU8(block);
      const Bytes d = Sha256(w.bytes());
      stream.insert(stream.end(), d.begin(), d.end());
    }
    const bool flip = stream[0] & 1;
    const BigInt x =
        Mod(BigIntFromBytes(std::span(stream).subspan(1, want)), q_);
    const BigInt rhs = Mod(x * x * x + x, q_);
    if (rhs == 0 || mpz_legendre(rhs.get_mpz_t(), q_.get_mpz_t()) != 1) {
      continue;
    }
    BigInt y;
    mpz_powm(y.get_mpz_t(), rhs.get_mpz_t(), sqrt_exp_.get_mpz_t(),
             q_.get_mpz_t());
    if (flip) y = q_ - y;
    const G1Point p = Mul({x, y, false}, h_);
    if (!p.infinity) return p;
  }
  throw Error(ErrorCode::kSearchExhausted, "hash to G1 did not converge");
}

BigInt PairingGroup::RandomScalar(Rng& rng) const {
  return rng.Between(1, r_ - 1);
}

Fq2 PairingGroup::Mul2(const Fq2& x, const Fq2& y) const {
  return {Mod(x.a * y.a - x.b * y.b, q_), Mod(x.a * y.b + x.b * y.a, q_)};
}

Fq2 PairingGroup::Square2(const Fq2& x) const {
  return {Mod((x.a + x.b) * (x.a - x.b), q_), Mod(2 * x.a * x.b, q_)};
}

Fq2 PairingGroup::Pow2(const Fq2& x, const BigInt& k) const {
  Fq2 acc{1, 0};
  for (std::size_t i = BitLength(k); i-- > 0;) {
    acc = Square2(acc);
    if (mpz_tstbit(k.get_mpz_t(), i)) acc = Mul2(acc, x);
  }
  return acc;
}

Fq2 PairingGroup::Inverse2(const Fq2& x) const {
  const BigInt norm_inv = Inv(Mod(x.a * x.a + x.b * x.b, q_), q_);
  return {Mod(x.a * norm_inv, q_), Mod(-x.b * norm_inv, q_)};
}

// Lines through T evaluated at (-x_Q, i*y_Q):
//   y - y_T - lambda (x - x_T)  ->  (lambda (x_Q + x_T) - y_T) + y_Q i.
// Vertical lines land in F_q and die in the final exponentiation, so they
// are dropped.
Fq2 PairingGroup::Miller(const G1Point& p, const G1Point& q2) const {
  Fq2 f{1, 0};
  G1Point t = p;
  const BigInt yq = q2.y;
  for (std::size_t i = BitLength(r_) - 1; i-- > 0;) {
    if (t.infinity) break;
    BigInt lambda = Mod((3 * t.x * t.x + 1) * Inv(2 * t.y, q_), q_);
    f = Mul2(Square2(f), {Mod(lambda * (q2.x + t.x) - t.y, q_), yq});
    BigInt x3 = Mod(lambda * lambda - 2 * t.x, q_);
    t = {x3, Mod(lambda * (t.x - x3) - t.y, q_), false};
    if (!mpz_tstbit(r_.get_mpz_t(), i)) continue;
    if (t.x == p.x) {
      t = {};
      continue;
    }
    lambda = Mod((p.y - t.y) * Inv(Mod(p.x - t.x, q_), q_), q_);
    f = Mul2(f, {Mod(lambda * (q2.x + t.x) - t.y, q_), yq});
    x3 = Mod(lambda * lambda - t.x - p.x, q_);
    t = {x3, Mod(lambda * (t.x - x3) - t.y, q_), false};
  }
  return f;
}

GtElement PairingGroup::Pair(const G1Point& p1, const G1Point& p2) const {
  if (p1.infinity || p2.infinity) return GtOne();
  const Fq2 f = Miller(p1, p2);
  // f^((q^2 - 1) / r) = (conj(f) / f)^h
  const Fq2 unitary = Mul2({f.a, Mod(-f.b, q_)}, Inverse2(f));
  return {Pow2(unitary, h_)};
}

GtElement PairingGroup::GtOne() const { return {{1, 0}}; }

GtElement PairingGroup::GtMul(const GtElement& x, const GtElement& y) const {
  return {Mul2(x.v, y.v)};
}

GtElement PairingGroup::GtPow(const GtElement& x, const BigInt& k) const {
  return {Pow2(x.v, Mod(k, r_))};
}

GtElement PairingGroup::GtInverse(const GtElement& x) const {
  return {{x.v.a, Mod(-x.v.b, q_)}};
}

std::size_t PairingGroup::FieldBytes() const { return ByteLength(q_); }

void PairingGroup::WritePoint(ByteWriter& w, const G1Point& p) const {
  const std::size_t width = FieldBytes();
  if (p.infinity) {
    w.PutRaw(Bytes(2 * width, 0));
    return;
  }
  w.PutRaw(BigIntToFixedBytes(p.x, width));
  w.PutRaw(BigIntToFixedBytes(p.y, width));
}

G1Point PairingGroup::ReadPoint(ByteReader& r) const {
  const std::size_t width = FieldBytes();
  G1Point p{BigIntFromBytes(r.GetRaw(width)), BigIntFromBytes(r.GetRaw(width)),
            false};
  if (p.x == 0 && p.y == 0) return {};
  if (!IsOnCurve(p)) {
    throw Error(ErrorCode::kMalformedMessage, "point not on curve");
  }
  return p;
}

Bytes PairingGroup::GtBytes(const GtElement& x) const {
  Bytes out = BigIntToFixedBytes(x.v.a, FieldBytes());
  const Bytes b = BigIntToFixedBytes(x.v.b, FieldBytes());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace sama::cpabe
