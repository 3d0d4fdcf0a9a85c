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

// Adversarial interface to a simulated RFID system.
//
// An Environment owns the genuine reader and tags and everything hidden
// from the attacker (keys, nonces, the challenge bit). Attack code only
// ever holds an Oracle, which offers the three queries of the
// untraceability model:
//
//   execute(tag, i)       passive: read access to every message of session i
//   send(label, i, act)   active: block or replace one message of session i
//   test(i)               challenge: pseudonyms broadcast by T_b in session i
//
// plus two active capabilities the desynchronization attacks need:
// relay() for a man-in-the-middle session and probe_tag() to talk to a
// tag while posing as a reader.

#ifndef UMARFID_ADVERSARY_HPP_
#define UMARFID_ADVERSARY_HPP_

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "umarfid/channel.hpp"
#include "umarfid/protocol.hpp"
#include "umarfid/random.hpp"
#include "umarfid/stats.hpp"

namespace umarfid {

inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

struct QueryBudget {
  std::size_t execute = kUnlimited;
  std::size_t send = kUnlimited;
};

struct QueriesUsed {
  std::size_t execute = 0;
  std::size_t send = 0;

  friend bool operator==(const QueriesUsed&, const QueriesUsed&) = default;
};

// Result of posing as a reader towards a tag.
struct TagProbe {
  std::vector<Word> presented_idts;
  std::optional<Word> c;  // the tag's answer; nullopt when it rejected
};

class Environment;

class Oracle {
 public:
  Oracle(const Oracle&) = delete;
  Oracle& operator=(const Oracle&) = delete;

  std::size_t word_len() const;
  std::size_t tag_count() const;
  const QueryBudget& budget() const;
  const QueriesUsed& used() const;
  std::size_t executes_left() const;
  std::size_t sends_left() const;

  // One honest session between the reader and `tag`, with any interception
  // rules registered for session i applied. Costs one Execute.
  SessionTranscript execute(std::size_t tag, std::uint64_t session);
  // Registers a rule for session i. `action` must block or replace. Costs
  // one Send.
  void send(MessageLabel label, std::uint64_t session, Disposition action);
  // Callable once per game. The environment flips b and runs session i for
  // T_b; the adversary sees every pseudonym T_b broadcast.
  std::vector<Word> test(std::uint64_t session);

  // Honest session with the adversary in the middle. Costs one Execute,
  // plus one Send for each message the interceptor blocks or replaces.
  SessionTranscript relay(std::size_t tag, std::uint64_t session, ChannelHook& interceptor);
  // Speak to `tag` as a reader. When `refuse_current` is set the tag's first
  // pseudonym is answered with Unrecognized so it falls back to its previous
  // pair. Costs one Send.
  TagProbe probe_tag(std::size_t tag, bool refuse_current, const Word& a, const Word& b);

 private:
  friend class Environment;
  explicit Oracle(Environment& env) : env_(env) {}

  Environment& env_;
};

class Environment {
 public:
  // Registers `tag_count` fresh tags with independently drawn ID, IDT and K.
  Environment(std::size_t word_len, std::uint64_t seed, std::size_t tag_count = 1,
              QueryBudget budget = {});
  Environment(const Environment&) = delete;
  Environment& operator=(const Environment&) = delete;

  Oracle& oracle() { return oracle_; }

  std::size_t word_len() const { return word_len_; }
  std::size_t tag_count() const { return tags_.size(); }
  const TagState& tag(std::size_t index) const;
  const Reader& reader() const { return reader_; }
  bool synchronized(std::size_t tag) const;

  // Harness-side honest session; not charged to the adversary.
  SessionTranscript honest_session(std::size_t tag, std::uint64_t session);
  // Honest session between the genuine reader and an outside device, such
  // as a cloned tag.
  SessionTranscript honest_session_with(TagState& device, std::uint64_t session);

  // Nonce the reader drew in session i, if it got that far.
  std::optional<Word> nonce_of(std::uint64_t session) const;
  std::optional<int> hidden_bit() const { return hidden_bit_; }
  bool test_used() const { return hidden_bit_.has_value(); }
  // Probes the tag rejected but which nonetheless changed its state.
  std::size_t probe_side_effects() const { return probe_side_effects_; }

  const QueryBudget& budget() const { return budget_; }
  const QueriesUsed& used() const { return used_; }

 private:
  friend class Oracle;

  class RuleChannel;

  TagState& tag_ref(std::size_t index);
  void charge_execute();
  void charge_send();
  SessionTranscript run_session(std::size_t tag, std::uint64_t session, ChannelHook* extra);

  std::size_t word_len_;
  RandomStream setup_rng_;
  RandomStream nonce_rng_;
  RandomStream coin_rng_;
  Reader reader_;
  std::vector<TagState> tags_;
  QueryBudget budget_;
  QueriesUsed used_;
  std::map<std::pair<std::uint64_t, MessageLabel>, Disposition> rules_;
  std::map<std::uint64_t, Word> nonces_;
  std::optional<int> hidden_bit_;
  std::size_t probe_side_effects_ = 0;
  Oracle oracle_;
};

// An adversary for the untraceability game. A fresh instance plays each
// game; it sees the system only through the Oracle.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual void learn(Oracle& oracle) = 0;
  // Must call oracle.test() exactly once.
  virtual void challenge(Oracle& oracle) = 0;
  virtual int guess() = 0;
};

// Guesses a coin flip. Baseline with zero expected advantage.
class RandomGuessStrategy : public Strategy {
 public:
  explicit RandomGuessStrategy(std::uint64_t seed) : rng_(seed) {}
  void learn(Oracle&) override {}
  void challenge(Oracle& oracle) override { oracle.test(0); }
  int guess() override { return rng_.coin() ? 1 : 0; }

 private:
  RandomStream rng_;
};

struct GameConfig {
  std::size_t word_len = kDefaultWordBits;
  std::size_t r1 = 2;  // Execute budget
  std::size_t r2 = 1;  // Send budget
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
};

struct GameOutcome {
  std::size_t trial = 0;
  int b = 0;
  int d = 0;
  bool success = false;
  QueriesUsed queries;
};

// Learning, challenge and guessing against a fresh two-tag environment
// whose seed is derived from (config.seed, trial).
GameOutcome run_untraceability_game(Strategy& strategy, const GameConfig& config,
                                    std::size_t trial);

struct AdvantageEstimate {
  std::size_t games = 0;
  std::size_t successes = 0;
  double pr_success = 0.0;
  double advantage = 0.0;  // |Pr[d = b] - 1/2|
  Interval pr_success_ci;  // Wilson 95%
};

AdvantageEstimate estimate_advantage(std::span<const GameOutcome> outcomes);

}  // namespace umarfid

#endif  // UMARFID_ADVERSARY_HPP_
