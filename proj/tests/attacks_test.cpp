// Copyright 2026 The umarfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "umarfid/attacks.hpp"

#include <gtest/gtest.h>

#include <set>

#include "bit_oracle.hpp"

namespace umarfid {
namespace {

Word w8(std::uint64_t v) { return Word::from_u64(8, v); }

TEST(RecoverKeyTest, WorkedExample) {
  EXPECT_EQ(recover_key(w8(0xF3), w8(0x3F), w8(0xA6)), w8(0x6A));
}

TEST(RecoverKeyTest, MatchesUpdatedKey) {
  RandomStream rng(1);
  for (std::size_t len : {8u, 16u, 128u}) {
    for (int i = 0; i < 1000; ++i) {
      const Word k = rng.word(len);
      const Word n = rng.word(len);
      const Word idt_next = oracle::next_idt(k, n);
      ASSERT_EQ(recover_key(oracle::msg_a(k, n), oracle::msg_b(k, n), idt_next),
                oracle::next_key(k, n));
      ASSERT_EQ(oracle::msg_b(k, n) ^ idt_next, oracle::rot(k, k) ^ k);
    }
  }
}

TEST(AttackTest, FullDisclosureRecoversKey) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const AttackReport r = attack_full_disclosure(AttackSetup{128, seed});
    EXPECT_TRUE(r.success) << "seed " << seed;
    EXPECT_TRUE(r.synchronized);
  }
}

TEST(AttackTest, TraceabilityStrategyWinsEveryGame) {
  const GameConfig config{128, 2, 1, 50, 3};
  for (std::size_t trial = 0; trial < 50; ++trial) {
    const GameOutcome o = attack_traceability(config, trial);
    EXPECT_TRUE(o.success) << "trial " << trial;
    EXPECT_EQ(o.queries, (QueriesUsed{2, 1}));
  }
}

TEST(AttackTest, TraceabilityFingerprintIsTagConstant) {
  Environment env(128, 4, 2, QueryBudget{2, 1});
  const Word k = env.tag(0).current.key;
  TraceabilityStrategy strategy;
  strategy.learn(env.oracle());
  ASSERT_TRUE(strategy.fingerprint().has_value());
  EXPECT_EQ(*strategy.fingerprint(), rot(k, k) ^ k);
}

TEST(AttackTest, CloneAuthenticates) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const AttackReport r = attack_clone(AttackSetup{128, seed});
    EXPECT_TRUE(r.success) << "seed " << seed;
    EXPECT_EQ(r.checks_failed, 0u);
    EXPECT_TRUE(r.cloned.has_value());
  }
}

TEST(AttackTest, DeriveCloneNeedsMessages) {
  SessionTranscript empty;
  SessionTranscript partial;
  partial.presented_idts.push_back(w8(0));
  partial.a = w8(1);
  EXPECT_THROW(derive_clone(empty, partial), std::invalid_argument);
  EXPECT_THROW(derive_clone(partial, partial), std::invalid_argument);
}

TEST(AttackTest, MitmDesynchronizes) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const AttackReport r = attack_desync_mitm(AttackSetup{128, seed});
    EXPECT_TRUE(r.success) << "seed " << seed;
    EXPECT_FALSE(r.synchronized);
    EXPECT_EQ(r.followups_failed, 3u);
  }
}

TEST(AttackTest, MitmEchoingGenuineNonceKeepsSync) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const AttackReport r = attack_desync_mitm(AttackSetup{128, seed}, MitmNonce::kEchoGenuine);
    EXPECT_TRUE(r.verified);
    EXPECT_TRUE(r.synchronized);
    EXPECT_FALSE(r.success);
    EXPECT_EQ(r.followups_failed, 0u);
  }
}

TEST(BitflipTest, WeightTwoCounts) {
  EXPECT_EQ(weight_two_count(128), 8128u);
  EXPECT_EQ(weight_two_count(16), 120u);
  EXPECT_EQ(weight_two_count(4), 6u);
}

TEST(BitflipTest, EnumerationOrder) {
  EXPECT_EQ(weight_two_word(8, 0), Word::with_bits(8, {0, 1}));
  EXPECT_EQ(weight_two_word(8, 6), Word::with_bits(8, {0, 7}));
  EXPECT_EQ(weight_two_word(8, 7), Word::with_bits(8, {1, 2}));
  EXPECT_EQ(weight_two_word(8, 27), Word::with_bits(8, {6, 7}));
  EXPECT_THROW(weight_two_word(8, 28), std::out_of_range);

  std::set<std::string> seen;
  for (std::size_t k = 0; k < weight_two_count(16); ++k) {
    const Word w = weight_two_word(16, k);
    ASSERT_EQ(w.hamming_weight(), 2u);
    seen.insert(w.to_hex());
  }
  EXPECT_EQ(seen.size(), 120u);
}

// Over every nonce at L = 16: a weight-preserving C1 makes the accepted C2
// the rotation of C1 by hw(N), and the forged challenge is accepted.
TEST(BitflipTest, SuccessConditionOverAllNonces) {
  RandomStream rng(5);
  const Word key = rng.word(16);
  for (int r = 0; r < 4; ++r) {
    const Word c1 = rng.weight_two_word(16);
    std::size_t preserved = 0;
    for (std::uint64_t v = 0; v < (1u << 16); ++v) {
      const Word n = Word::from_u64(16, v);
      const Word flipped = n ^ c1;
      const Word c2 = oracle::rot(n, n) ^ oracle::rot(flipped, flipped);
      if (oracle::weight(flipped) != oracle::weight(n)) continue;
      ++preserved;
      ASSERT_EQ(c2, rotate_left(c1, oracle::weight(n)));
      TagState tag = TagState::fresh(w8(0), PairState{Word::zeros(16), key});
      ASSERT_TRUE(
          tag_respond(tag, PairSlot::kCurrent, compute_a(key, n) ^ c1, compute_b(key, n) ^ c2));
    }
    // Exactly one set bit and one clear bit among the two positions of C1.
    EXPECT_EQ(preserved, (1u << 16) / 2);
  }
}

TEST(BitflipTest, AttackSucceedsAtSixteenBits) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const AttackReport r = attack_desync_bitflip(AttackSetup{16, seed});
    EXPECT_TRUE(r.success) << "seed " << seed;
    EXPECT_EQ(r.side_effects, 0u);
    EXPECT_EQ(r.admitted_rounds, 1u);
    EXPECT_FALSE(r.synchronized);
  }
}

TEST(BitflipTest, RoundCapLimitsWork) {
  const AttackReport r = attack_desync_bitflip(AttackSetup{16, 3, 3, 1});
  EXPECT_EQ(r.c1_rounds, 1u);
  EXPECT_LE(r.c2_trials, 120u);
  EXPECT_TRUE(r.verified);
  if (!r.success) EXPECT_TRUE(r.synchronized);
}

}  // namespace
}  // namespace umarfid
