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

#include "umarfid/adversary.hpp"

#include <gtest/gtest.h>

#include <vector>

namespace umarfid {
namespace {

constexpr std::size_t kLen = 128;

TEST(OracleTest, ExecuteRevealsFullTranscript) {
  Environment env(kLen, 1);
  const PairState before = env.tag(0).current;
  const SessionTranscript t = env.oracle().execute(0, 0);
  EXPECT_EQ(t.outcome, SessionOutcome::kMutualSuccess);
  ASSERT_EQ(t.events.size(), 4u);
  EXPECT_EQ(t.events[0].payload, before.idt);
  EXPECT_EQ(t.events[1].payload, *t.a);
  EXPECT_EQ(t.events[2].payload, *t.b);
  EXPECT_EQ(t.events[3].payload, *t.c);
  EXPECT_EQ(*t.a, compute_a(before.key, *env.nonce_of(0)));
  EXPECT_EQ(*t.b, compute_b(before.key, *env.nonce_of(0)));
  EXPECT_EQ(*t.c, compute_c(before.key, *env.nonce_of(0)));
}

TEST(OracleTest, ConsecutivePseudonymsFollowUpdate) {
  Environment env(kLen, 2);
  const PairState first = env.tag(0).current;
  env.oracle().execute(0, 0);
  const SessionTranscript second = env.oracle().execute(0, 1);
  EXPECT_EQ(second.presented_idts.at(0), next_pair(first, *env.nonce_of(0)).idt);
  EXPECT_TRUE(env.synchronized(0));
}

TEST(OracleTest, ExecuteBudgetEnforced) {
  Environment env(kLen, 3, 1, QueryBudget{0, 0});
  EXPECT_THROW(env.oracle().execute(0, 0), HarnessError);
  Environment env2(kLen, 3, 1, QueryBudget{1, 1});
  env2.oracle().execute(0, 0);
  EXPECT_EQ(env2.oracle().executes_left(), 0u);
  EXPECT_THROW(env2.oracle().execute(0, 1), HarnessError);
}

TEST(OracleTest, SendBudgetEnforced) {
  Environment env(kLen, 4, 1, QueryBudget{5, 1});
  env.oracle().send(MessageLabel::kC, 0, Disposition::blocked());
  EXPECT_EQ(env.oracle().sends_left(), 0u);
  EXPECT_THROW(env.oracle().send(MessageLabel::kC, 1, Disposition::blocked()), HarnessError);
  EXPECT_THROW(env.oracle().send(MessageLabel::kB, 1, Disposition::delivered()), HarnessError);
}

TEST(OracleTest, UnlimitedBudgetReportsUnlimited) {
  Environment env(kLen, 5);
  EXPECT_EQ(env.oracle().executes_left(), kUnlimited);
  EXPECT_EQ(env.oracle().sends_left(), kUnlimited);
}

TEST(OracleTest, BlockedCLeavesReaderBehind) {
  Environment env(kLen, 6);
  const DatabaseEntry before = *env.reader().find_by_id(env.tag(0).id);
  env.oracle().send(MessageLabel::kC, 0, Disposition::blocked());
  const SessionTranscript t = env.oracle().execute(0, 0);
  EXPECT_EQ(t.outcome, SessionOutcome::kBlocked);
  EXPECT_EQ(*env.reader().find_by_id(env.tag(0).id), before);
  EXPECT_EQ(env.tag(0).previous, before.pair());
  EXPECT_TRUE(env.synchronized(0));

  const SessionTranscript next = env.oracle().execute(0, 1);
  EXPECT_EQ(next.outcome, SessionOutcome::kMutualSuccess);
  EXPECT_EQ(next.presented_idts.size(), 2u);
}

TEST(OracleTest, ReplacedBRejectedByTag) {
  Environment env(kLen, 7);
  const TagState before = env.tag(0);
  env.oracle().send(MessageLabel::kB, 0, Disposition::replaced(Word::zeros(kLen)));
  const SessionTranscript t = env.oracle().execute(0, 0);
  EXPECT_EQ(t.outcome, SessionOutcome::kTagRejectedReader);
  EXPECT_EQ(env.tag(0), before);
  EXPECT_FALSE(env.reader().has_pending());
  EXPECT_THROW(env.oracle().send(MessageLabel::kB, 1, Disposition::replaced(Word::zeros(8))),
               ConfigError);
}

TEST(OracleTest, BlockedIdtStopsSession) {
  Environment env(kLen, 8);
  const TagState before = env.tag(0);
  env.oracle().send(MessageLabel::kIdt, 0, Disposition::blocked());
  const SessionTranscript t = env.oracle().execute(0, 0);
  EXPECT_EQ(t.outcome, SessionOutcome::kBlocked);
  EXPECT_FALSE(t.a.has_value());
  EXPECT_EQ(env.tag(0), before);
}

TEST(OracleTest, TestRevealsSinglePseudonymWhenSynchronized) {
  Environment env(kLen, 9, 2);
  const Word t0 = env.tag(0).current.idt;
  const Word t1 = env.tag(1).current.idt;
  const std::vector<Word> revealed = env.oracle().test(0);
  ASSERT_EQ(revealed.size(), 1u);
  EXPECT_EQ(revealed[0], *env.hidden_bit() == 0 ? t0 : t1);
  EXPECT_THROW(env.oracle().test(1), HarnessError);
}

TEST(OracleTest, TestNeedsTwoTags) {
  Environment env(kLen, 10);
  EXPECT_THROW(env.oracle().test(0), HarnessError);
}

TEST(OracleTest, TestOnDesynchronizedTagRevealsFallbackPseudonym) {
  bool saw_b0 = false;
  bool saw_b1 = false;
  for (std::uint64_t seed = 0; seed < 64 && !(saw_b0 && saw_b1); ++seed) {
    Environment env(kLen, seed, 2);
    const Word old_idt = env.tag(0).current.idt;
    env.oracle().send(MessageLabel::kC, 0, Disposition::blocked());
    env.oracle().execute(0, 0);
    const std::vector<Word> revealed = env.oracle().test(1);
    if (*env.hidden_bit() == 0) {
      saw_b0 = true;
      ASSERT_EQ(revealed.size(), 2u);
      EXPECT_EQ(revealed[1], old_idt);
    } else {
      saw_b1 = true;
      ASSERT_EQ(revealed.size(), 1u);
      EXPECT_NE(revealed[0], old_idt);
    }
  }
  EXPECT_TRUE(saw_b0);
  EXPECT_TRUE(saw_b1);
}

TEST(OracleTest, ProbeCostsSendAndReportsAnswer) {
  Environment env(kLen, 11, 1, QueryBudget{kUnlimited, 2});
  const TagState before = env.tag(0);
  // A = 0 makes the tag recover N = K, for which the genuine B is 0.
  const TagProbe rejected = env.oracle().probe_tag(0, false, Word::zeros(kLen), Word::ones(kLen));
  EXPECT_FALSE(rejected.c.has_value());
  EXPECT_EQ(rejected.presented_idts.size(), 1u);
  EXPECT_EQ(env.tag(0), before);
  EXPECT_EQ(env.probe_side_effects(), 0u);

  RandomStream rng(12);
  const Word nonce = rng.word(kLen);
  const Word& key = before.previous.key;
  const TagProbe accepted =
      env.oracle().probe_tag(0, true, compute_a(key, nonce), compute_b(key, nonce));
  ASSERT_TRUE(accepted.c.has_value());
  EXPECT_EQ(*accepted.c, compute_c(key, nonce));
  EXPECT_EQ(accepted.presented_idts.size(), 2u);
  EXPECT_EQ(env.oracle().used(), (QueriesUsed{0, 2}));
  EXPECT_THROW(env.oracle().probe_tag(0, false, Word::zeros(kLen), Word::zeros(kLen)),
               HarnessError);
}

class RelayBlockC : public ChannelHook {
 public:
  Disposition on_message(std::uint64_t, MessageLabel label, const Word&) override {
    return label == MessageLabel::kC ? Disposition::blocked() : Disposition::delivered();
  }
};

TEST(OracleTest, RelayChargesPerAlteration) {
  Environment env(kLen, 13);
  RelayBlockC hook;
  const SessionTranscript t = env.oracle().relay(0, 0, hook);
  EXPECT_EQ(t.outcome, SessionOutcome::kBlocked);
  EXPECT_EQ(env.oracle().used(), (QueriesUsed{1, 1}));
}

// Records exactly the queries it makes.
class CountingStrategy : public Strategy {
 public:
  void learn(Oracle& oracle) override {
    oracle.execute(0, 0);
    oracle.send(MessageLabel::kC, 1, Disposition::blocked());
    oracle.execute(0, 1);
  }
  void challenge(Oracle& oracle) override { oracle.test(2); }
  int guess() override { return 0; }
};

class LeakyStrategy : public Strategy {
 public:
  void learn(Oracle& oracle) override { oracle.test(0); }
  void challenge(Oracle&) override {}
  int guess() override { return 0; }
};

class SilentStrategy : public Strategy {
 public:
  void learn(Oracle&) override {}
  void challenge(Oracle&) override {}
  int guess() override { return 0; }
};

TEST(GameTest, AccountsQueriesExactly) {
  CountingStrategy strategy;
  const GameOutcome o = run_untraceability_game(strategy, GameConfig{kLen, 2, 1, 1, 5}, 0);
  EXPECT_EQ(o.queries, (QueriesUsed{2, 1}));
  EXPECT_EQ(o.d, 0);
  EXPECT_EQ(o.success, o.b == 0);
}

TEST(GameTest, OverBudgetStrategyFails) {
  CountingStrategy strategy;
  EXPECT_THROW(run_untraceability_game(strategy, GameConfig{kLen, 1, 1, 1, 5}, 0), HarnessError);
}

TEST(GameTest, TestPlacementEnforced) {
  LeakyStrategy leaky;
  EXPECT_THROW(run_untraceability_game(leaky, GameConfig{kLen, 2, 1, 1, 5}, 0), HarnessError);
  SilentStrategy silent;
  EXPECT_THROW(run_untraceability_game(silent, GameConfig{kLen, 2, 1, 1, 5}, 0), HarnessError);
}

TEST(GameTest, GamesAreReproducible) {
  for (std::size_t trial = 0; trial < 20; ++trial) {
    RandomGuessStrategy s1(trial);
    RandomGuessStrategy s2(trial);
    const GameOutcome o1 = run_untraceability_game(s1, GameConfig{kLen, 2, 1, 20, 9}, trial);
    const GameOutcome o2 = run_untraceability_game(s2, GameConfig{kLen, 2, 1, 20, 9}, trial);
    EXPECT_EQ(o1.b, o2.b);
    EXPECT_EQ(o1.d, o2.d);
  }
}

GameOutcome outcome(int b, int d) { return GameOutcome{0, b, d, b == d, {}}; }

TEST(AdvantageTest, KnownValues) {
  const std::vector<GameOutcome> always{outcome(0, 0), outcome(1, 1), outcome(1, 1),
                                        outcome(0, 0)};
  EXPECT_DOUBLE_EQ(estimate_advantage(always).advantage, 0.5);
  const std::vector<GameOutcome> never{outcome(0, 1), outcome(1, 0)};
  EXPECT_DOUBLE_EQ(estimate_advantage(never).advantage, 0.5);
  const std::vector<GameOutcome> half{outcome(0, 0), outcome(1, 0)};
  EXPECT_DOUBLE_EQ(estimate_advantage(half).advantage, 0.0);
  const std::vector<GameOutcome> three_quarters{outcome(0, 0), outcome(1, 1), outcome(1, 1),
                                                outcome(0, 1)};
  const AdvantageEstimate est = estimate_advantage(three_quarters);
  EXPECT_DOUBLE_EQ(est.advantage, 0.25);
  EXPECT_EQ(est.successes, 3u);
  EXPECT_TRUE(est.pr_success_ci.contains(0.75));
  EXPECT_THROW(estimate_advantage(std::vector<GameOutcome>{}), std::invalid_argument);
}

TEST(AdvantageTest, NullStrategyHasNoAdvantage) {
  constexpr std::size_t kGames = 10000;
  const GameConfig config{32, 2, 1, kGames, 77};
  std::vector<GameOutcome> outcomes;
  outcomes.reserve(kGames);
  for (std::size_t i = 0; i < kGames; ++i) {
    RandomGuessStrategy strategy(derive_seed(77, i, 99));
    outcomes.push_back(run_untraceability_game(strategy, config, i));
  }
  EXPECT_LT(estimate_advantage(outcomes).advantage, 0.02);
}

}  // namespace
}  // namespace umarfid
