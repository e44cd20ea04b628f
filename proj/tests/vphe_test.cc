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

#include "sama/vphe/vphe.h"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "sama/arith/modular.h"
#include "sama/common/errors.h"

namespace sama::vphe {
namespace {

bool TrialDivisionPrime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) return false;
  }
  return true;
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

// p = 2*3*5*7*11 + 1, q = 2*3*5*7*13 + 1 over pool {u=3, [5, 7]}.
class ToySystemTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    // Fixture acceptance: both primes and the lcm checked by plain oracles.
    ASSERT_TRUE(TrialDivisionPrime(2311));
    ASSERT_TRUE(TrialDivisionPrime(2731));
    ASSERT_EQ(std::lcm<std::uint64_t>(2310, 2730), 30030u);
  }

  void SetUp() override {
    system_ = SystemFromPrimes(OddPrimePool{3, {5, 7}, 3}, 2311, 2731);
    allocator_ = std::make_unique<TrapdoorAllocator>(2);
    Rng rng(77);
    for (UserId id = 1; id <= 3; ++id) {
      users_.push_back(
          UserKeygen(system_.params, system_.strong, *allocator_, id, rng));
    }
  }

  System system_;
  std::unique_ptr<TrapdoorAllocator> allocator_;
  std::vector<UserKeyPair> users_;
};

TEST_F(ToySystemTest, FixtureParameters) {
  EXPECT_EQ(system_.params.n, 6311341);
  EXPECT_EQ(system_.strong.lambda, 30030);
  EXPECT_EQ(system_.params.p.cofactor, 11);
  EXPECT_EQ(system_.params.q.cofactor, 13);
}

TEST_F(ToySystemTest, AllocationOrderAndExhaustion) {
  EXPECT_EQ(users_[0].weak_key.t, 5);
  EXPECT_EQ(users_[1].weak_key.t, 7);
  EXPECT_EQ(users_[2].weak_key.t, 35);
  Rng rng(1);
  EXPECT_EQ(CodeOf([&] {
              UserKeygen(system_.params, system_.strong, *allocator_, 4, rng);
            }),
            ErrorCode::kPoolExhausted);
}

TEST_F(ToySystemTest, GeneratorInvariants) {
  const auto& params = system_.params;
  for (const auto& user : users_) {
    const auto& pk = user.public_key;
    const BigInt& t = user.weak_key.t;
    EXPECT_EQ(ModExp(pk.g, params.pool.u * t * params.n, params.n_sq), 1);
    EXPECT_EQ(Gcd(LFunction(ModExp(pk.g, system_.strong.lambda, params.n_sq),
                            params.n),
                  params.n),
              1);
    EXPECT_EQ(pk.h,
              ModExp(pk.g, params.n * system_.strong.lambda / t, params.n_sq));
    EXPECT_NE(pk.h, 1);
    EXPECT_EQ(BigInt(system_.strong.lambda % t), 0);
  }
}

TEST_F(ToySystemTest, RoundTripSampledSweep) {
  // Full Z_n sweep lives in the acceptance suite; here every 97th residue
  // plus both ends.
  Rng rng(3);
  const BigInt& n = system_.params.n;
  for (const auto& user : users_) {
    const auto strong =
        PrepareStrongDecryption(system_.strong, user.public_key);
    for (BigInt m = 0; m < n; m += 97) {
      const Ciphertext c = Encrypt(user.public_key, m, rng);
      ASSERT_EQ(WeakDecrypt(user.weak_key, user.public_key, c), m);
      ASSERT_EQ(StrongDecrypt(strong, c), m);
    }
    const Ciphertext last = Encrypt(user.public_key, n - 1, rng);
    EXPECT_EQ(WeakDecrypt(user.weak_key, user.public_key, last), n - 1);
  }
}

TEST_F(ToySystemTest, ZeroWithZeroNonceIsOne) {
  const auto& pk = users_[0].public_key;
  const Ciphertext c = EncryptWithNonce(pk, 0, 0);
  EXPECT_EQ(c.value, 1);
  EXPECT_EQ(WeakDecrypt(users_[0].weak_key, pk, c), 0);
  EXPECT_EQ(StrongDecrypt(system_.strong, pk, c), 0);
  Rng rng(8);
  EXPECT_EQ(StrongDecrypt(system_.strong, pk, Encrypt(pk, 0, rng)), 0);
}

TEST_F(ToySystemTest, FortyTwo) {
  Rng rng(42);
  for (const auto& user : users_) {
    const Ciphertext c = Encrypt(user.public_key, 42, rng);
    EXPECT_EQ(WeakDecrypt(user.weak_key, user.public_key, c), 42);
  }
}

TEST_F(ToySystemTest, CrossKeyProbeRarelyRecoversPlaintext) {
  Rng rng(9);
  const BigInt& n = system_.params.n;
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto& owner = users_[trial % 3];
    const auto& other = users_[(trial + 1) % 3];
    const BigInt m = rng.Below(n);
    const Ciphertext c = Encrypt(owner.public_key, m, rng);
    if (WeakDecryptUnchecked(other.weak_key, other.public_key, c) != m) {
      ++mismatches;
    }
  }
  EXPECT_GE(mismatches, 990);
}

TEST_F(ToySystemTest, IdentityChecks) {
  Rng rng(1);
  const Ciphertext c = Encrypt(users_[0].public_key, 5, rng);
  EXPECT_EQ(CodeOf([&] {
              WeakDecrypt(users_[1].weak_key, users_[1].public_key, c);
            }),
            ErrorCode::kKeyMismatch);
  EXPECT_EQ(CodeOf([&] {
              WeakDecrypt(users_[1].weak_key, users_[0].public_key, c);
            }),
            ErrorCode::kKeyMismatch);
  const auto strong1 = PrepareStrongDecryption(system_.strong, users_[1].public_key);
  EXPECT_EQ(CodeOf([&] { StrongDecrypt(strong1, c); }), ErrorCode::kKeyMismatch);
}

TEST_F(ToySystemTest, MalformedCiphertextIsDomainError) {
  // 2^t mod n^2 is not 1 mod n, so L rejects it.
  const auto& user = users_[0];
  Ciphertext bad{2, user.public_key.user_id};
  EXPECT_EQ(CodeOf([&] {
              WeakDecrypt(user.weak_key, user.public_key, bad);
            }),
            ErrorCode::kDomainError);
}

TEST_F(ToySystemTest, PlaintextOutOfRange) {
  Rng rng(1);
  const auto& pk = users_[0].public_key;
  EXPECT_EQ(CodeOf([&] { Encrypt(pk, pk.n, rng); }),
            ErrorCode::kPlaintextOutOfRange);
  EXPECT_EQ(CodeOf([&] { Encrypt(pk, -1, rng); }),
            ErrorCode::kPlaintextOutOfRange);
}

TEST_F(ToySystemTest, HomomorphicFoldInAnyOrder) {
  Rng rng(5);
  const auto& user = users_[2];
  const BigInt& n = system_.params.n;
  std::vector<Ciphertext> cts;
  BigInt sum = 0;
  for (int i = 0; i < 10; ++i) {
    const BigInt m = rng.Below(n);
    sum += m;
    cts.push_back(Encrypt(user.public_key, m, rng));
  }
  sum %= n;
  for (int shuffle = 0; shuffle < 5; ++shuffle) {
    std::vector<std::size_t> order(cts.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size() - 1; i > 0; --i) {
      std::swap(order[i], order[rng.Below(std::uint64_t{i + 1})]);
    }
    Ciphertext acc = cts[order[0]];
    for (std::size_t i = 1; i < order.size(); ++i) {
      acc = HomAdd(user.public_key, acc, cts[order[i]]);
    }
    EXPECT_EQ(WeakDecrypt(user.weak_key, user.public_key, acc), sum);
    EXPECT_EQ(StrongDecrypt(system_.strong, user.public_key, acc), sum);
  }
}

TEST_F(ToySystemTest, HomAddIdentityAndKeyMismatch) {
  Rng rng(6);
  const auto& a = users_[0];
  const Ciphertext c = Encrypt(a.public_key, 1234, rng);
  const Ciphertext zero = Encrypt(a.public_key, 0, rng);
  EXPECT_EQ(WeakDecrypt(a.weak_key, a.public_key, HomAdd(a.public_key, c, zero)),
            1234);
  const Ciphertext other = Encrypt(users_[1].public_key, 1, rng);
  EXPECT_EQ(CodeOf([&] { HomAdd(a.public_key, c, other); }),
            ErrorCode::kKeyMismatch);
}

TEST(VpheSetupTest, RejectsBadParameters) {
  Rng rng(1);
  EXPECT_EQ(CodeOf([&] { SystemSetup(512, 1, rng); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { SystemSetup(700, 3, rng); }), ErrorCode::kInvalidArgument);
}

TEST(VpheSetupTest, SameSeedSameParams) {
  Rng a(31), b(31);
  const System s1 = SystemSetup(512, 3, a);
  const System s2 = SystemSetup(512, 3, b);
  EXPECT_EQ(s1.params.n, s2.params.n);
  EXPECT_EQ(s1.strong.lambda, s2.strong.lambda);
  EXPECT_EQ(s1.params.pool.u, s2.params.pool.u);
  EXPECT_EQ(BitLength(s1.params.n), 512u);
  EXPECT_EQ(s1.strong.lambda, Lcm(s1.params.p.p - 1, s1.params.q.p - 1));
}

TEST(VpheSetupTest, PoolShrinksForLargeK) {
  Rng rng(12);
  const System s = SystemSetup(512, 14, rng);
  EXPECT_EQ(s.params.pool.k(), 14u);
  EXPECT_LT(s.params.pool.bit_budget, 16);
  EXPECT_EQ(BitLength(s.params.n), 512u);
}

class RealSizeTest : public ::testing::Test {
 protected:
  void SetUp() override {
    Rng rng(2024);
    system_ = SystemSetup(512, 4, rng);
    allocator_ = std::make_unique<TrapdoorAllocator>(4);
    for (UserId id = 10; id < 13; ++id) {
      users_.push_back(
          UserKeygen(system_.params, system_.strong, *allocator_, id, rng));
    }
  }

  System system_;
  std::unique_ptr<TrapdoorAllocator> allocator_;
  std::vector<UserKeyPair> users_;
};

TEST_F(RealSizeTest, HundredRandomRoundTripsPerUser) {
  Rng rng(1);
  for (const auto& user : users_) {
    const auto strong = PrepareStrongDecryption(system_.strong, user.public_key);
    for (int i = 0; i < 100; ++i) {
      const BigInt m = rng.Below(system_.params.n);
      const Ciphertext c = Encrypt(user.public_key, m, rng);
      ASSERT_EQ(WeakDecrypt(user.weak_key, user.public_key, c), m);
      ASSERT_EQ(StrongDecrypt(strong, c), m);
    }
  }
}

TEST_F(RealSizeTest, DistinctTrapdoorsPerUser) {
  std::set<BigInt> ts;
  for (const auto& user : users_) ts.insert(user.weak_key.t);
  EXPECT_EQ(ts.size(), users_.size());
}

TEST_F(RealSizeTest, FreshNonceChangesCiphertextNotPlaintext) {
  Rng rng(2);
  const auto& user = users_[0];
  std::set<BigInt> values;
  for (int i = 0; i < 20; ++i) {
    const Ciphertext c = Encrypt(user.public_key, 777, rng);
    values.insert(c.value);
    EXPECT_EQ(WeakDecrypt(user.weak_key, user.public_key, c), 777);
  }
  EXPECT_EQ(values.size(), 20u);
}

TEST_F(RealSizeTest, CostAccounting) {
  Rng rng(3);
  const auto& user = users_[1];
  const auto strong = PrepareStrongDecryption(system_.strong, user.public_key);
  OpCounts enc, wdec, sdec, add;
  const Ciphertext c = Encrypt(user.public_key, 5, rng, &enc);
  WeakDecrypt(user.weak_key, user.public_key, c, &wdec);
  StrongDecrypt(strong, c, &sdec);
  HomAdd(user.public_key, c, c, &add);
  EXPECT_EQ(enc, (OpCounts{.mod_exp = 2, .mod_mul = 1}));
  EXPECT_EQ(wdec, (OpCounts{.mod_exp = 1, .mod_mul = 1}));
  EXPECT_EQ(sdec, (OpCounts{.mod_exp = 1, .mod_mul = 1}));
  EXPECT_EQ(add, (OpCounts{.mod_mul = 1}));
}

TEST_F(RealSizeTest, SerializationIsFixedWidth) {
  Rng rng(4);
  const auto& user = users_[2];
  const Ciphertext c = EncryptWithNonce(user.public_key, 0, 0);  // value 1
  ByteWriter w;
  WriteCiphertext(w, c, system_.params.n);
  EXPECT_EQ(w.tally()[static_cast<int>(WireSection::kHomomorphic)] * 8,
            2 * BitLength(system_.params.n));
  ByteReader r(w.bytes());
  EXPECT_EQ(ReadCiphertext(r), c);
  EXPECT_TRUE(r.done());

  ByteWriter kw;
  WritePublicKey(kw, user.public_key);
  ByteReader kr(kw.bytes());
  const UserPublicKey back = ReadPublicKey(kr);
  EXPECT_EQ(back.g, user.public_key.g);
  EXPECT_EQ(back.h, user.public_key.h);
  EXPECT_EQ(back.user_id, user.public_key.user_id);
}

}  // namespace
}  // namespace sama::vphe
