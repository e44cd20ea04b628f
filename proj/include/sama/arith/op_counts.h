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

#ifndef SAMA_ARITH_OP_COUNTS_H_
#define SAMA_ARITH_OP_COUNTS_H_

#include <cstdint>
#include <ostream>

namespace sama {

// Counts of the expensive operations the cost tables are written in.
// A counter is handed explicitly to every counted operation (nullptr means
// "not counted"); there is no global counter.
struct OpCounts {
  std::uint64_t mod_exp = 0;
  std::uint64_t mod_mul = 0;
  std::uint64_t exp = 0;      // group exponentiations inside CP-ABE
  std::uint64_t bi_pair = 0;  // pairing-equivalents inside CP-ABE
  std::uint64_t mod_inverse = 0;

  OpCounts& operator+=(const OpCounts& o) {
    mod_exp += o.mod_exp;
    mod_mul += o.mod_mul;
    exp += o.exp;
    bi_pair += o.bi_pair;
    mod_inverse += o.mod_inverse;
    return *this;
  }
  friend OpCounts operator+(OpCounts a, const OpCounts& b) { return a += b; }
  friend OpCounts operator-(const OpCounts& a, const OpCounts& b) {
    return {a.mod_exp - b.mod_exp, a.mod_mul - b.mod_mul, a.exp - b.exp,
            a.bi_pair - b.bi_pair, a.mod_inverse - b.mod_inverse};
  }
  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

std::ostream& operator<<(std::ostream& os, const OpCounts& c);

inline void CountModExp(OpCounts* ops, std::uint64_t n = 1) {
  if (ops != nullptr) ops->mod_exp += n;
}
inline void CountModMul(OpCounts* ops, std::uint64_t n = 1) {
  if (ops != nullptr) ops->mod_mul += n;
}
inline void CountExp(OpCounts* ops, std::uint64_t n = 1) {
  if (ops != nullptr) ops->exp += n;
}
inline void CountBiPair(OpCounts* ops, std::uint64_t n = 1) {
  if (ops != nullptr) ops->bi_pair += n;
}

}  // namespace sama

#endif  // SAMA_ARITH_OP_COUNTS_H_
