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

#include <cmath>
#include <functional>
#include <stdexcept>

namespace umarfid {
namespace {

enum Stream : std::uint64_t { kSetupStream = 1, kNonceStream = 2, kCoinStream = 3 };
constexpr std::uint64_t kGameEnvStream = 0x67616d65;  // "game"

// Charges one Send for every message the adversary's interceptor touches.
class ChargingHook : public ChannelHook {
 public:
  ChargingHook(ChannelHook& inner, std::function<void()> charge)
      : inner_(inner), charge_(std::move(charge)) {}

  Disposition on_message(std::uint64_t session, MessageLabel label, const Word& payload) override {
    Disposition d = inner_.on_message(session, label, payload);
    if (d.kind() != Disposition::Kind::kDelivered) charge_();
    return d;
  }

 private:
  ChannelHook& inner_;
  std::function<void()> charge_;
};

}  // namespace

class Environment::RuleChannel : public ChannelHook {
 public:
  explicit RuleChannel(const Environment& env) : env_(env) {}

  Disposition on_message(std::uint64_t session, MessageLabel label, const Word&) override {
    const auto it = env_.rules_.find({session, label});
    return it == env_.rules_.end() ? Disposition::delivered() : it->second;
  }

 private:
  const Environment& env_;
};

Environment::Environment(std::size_t word_len, std::uint64_t seed, std::size_t tag_count,
                         QueryBudget budget)
    : word_len_(word_len),
      setup_rng_(derive_seed(seed, 0, kSetupStream)),
      nonce_rng_(derive_seed(seed, 0, kNonceStream)),
      coin_rng_(derive_seed(seed, 0, kCoinStream)),
      reader_(word_len),
      budget_(budget),
      oracle_(*this) {
  if (tag_count == 0) throw ConfigError("environment needs at least one tag");
  tags_.reserve(tag_count);
  for (std::size_t i = 0; i < tag_count; ++i) {
    Word id = setup_rng_.word(word_len);
    PairState initial{setup_rng_.word(word_len), setup_rng_.word(word_len)};
    reader_.register_tag(DatabaseEntry{initial.idt, initial.key, id});
    tags_.push_back(TagState::fresh(std::move(id), std::move(initial)));
  }
}

const TagState& Environment::tag(std::size_t index) const {
  if (index >= tags_.size()) throw HarnessError("no such tag");
  return tags_[index];
}

TagState& Environment::tag_ref(std::size_t index) {
  if (index >= tags_.size()) throw HarnessError("no such tag");
  return tags_[index];
}

bool Environment::synchronized(std::size_t tag) const {
  return can_authenticate(reader_, this->tag(tag));
}

SessionTranscript Environment::honest_session(std::size_t tag, std::uint64_t session) {
  return run_session(tag, session, nullptr);
}

SessionTranscript Environment::honest_session_with(TagState& device, std::uint64_t session) {
  return run_honest_session(reader_, device, nonce_rng_, session);
}

std::optional<Word> Environment::nonce_of(std::uint64_t session) const {
  const auto it = nonces_.find(session);
  if (it == nonces_.end()) return std::nullopt;
  return it->second;
}

void Environment::charge_execute() {
  if (used_.execute >= budget_.execute) throw HarnessError("Execute budget exhausted");
  ++used_.execute;
}

void Environment::charge_send() {
  if (used_.send >= budget_.send) throw HarnessError("Send budget exhausted");
  ++used_.send;
}

SessionTranscript Environment::run_session(std::size_t tag, std::uint64_t session,
                                           ChannelHook* hook) {
  const std::optional<Word> before = reader_.last_nonce();
  SessionTranscript transcript = run_honest_session(reader_, tag_ref(tag), nonce_rng_, session, hook);
  if (reader_.last_nonce() && reader_.last_nonce() != before) {
    nonces_.insert_or_assign(session, *reader_.last_nonce());
  }
  return transcript;
}

std::size_t Oracle::word_len() const { return env_.word_len_; }
std::size_t Oracle::tag_count() const { return env_.tags_.size(); }
const QueryBudget& Oracle::budget() const { return env_.budget_; }
const QueriesUsed& Oracle::used() const { return env_.used_; }

std::size_t Oracle::executes_left() const {
  return env_.budget_.execute == kUnlimited ? kUnlimited
                                            : env_.budget_.execute - env_.used_.execute;
}

std::size_t Oracle::sends_left() const {
  return env_.budget_.send == kUnlimited ? kUnlimited : env_.budget_.send - env_.used_.send;
}

SessionTranscript Oracle::execute(std::size_t tag, std::uint64_t session) {
  env_.charge_execute();
  Environment::RuleChannel rules(env_);
  return env_.run_session(tag, session, &rules);
}

void Oracle::send(MessageLabel label, std::uint64_t session, Disposition action) {
  if (action.kind() == Disposition::Kind::kDelivered) {
    throw HarnessError("a Send query must block or replace its message");
  }
  if (action.replacement() && action.replacement()->bits() != env_.word_len_) {
    throw ConfigError("Send replacement has the wrong length");
  }
  env_.charge_send();
  env_.rules_.insert_or_assign({session, label}, std::move(action));
}

std::vector<Word> Oracle::test(std::uint64_t session) {
  if (env_.hidden_bit_) throw HarnessError("Test may be invoked only once per game");
  if (env_.tags_.size() < 2) throw HarnessError("Test needs two tags");
  const int b = env_.coin_rng_.coin() ? 1 : 0;
  env_.hidden_bit_ = b;
  Environment::RuleChannel rules(env_);
  return env_.run_session(static_cast<std::size_t>(b), session, &rules).presented_idts;
}

SessionTranscript Oracle::relay(std::size_t tag, std::uint64_t session, ChannelHook& interceptor) {
  env_.charge_execute();
  ChargingHook charging(interceptor, [this] { env_.charge_send(); });
  return env_.run_session(tag, session, &charging);
}

TagProbe Oracle::probe_tag(std::size_t tag, bool refuse_current, const Word& a, const Word& b) {
  env_.charge_send();
  TagState& state = env_.tag_ref(tag);
  TagProbe probe;
  probe.presented_idts.push_back(tag_present(state, PairSlot::kCurrent));
  PairSlot slot = PairSlot::kCurrent;
  if (refuse_current) {
    probe.presented_idts.push_back(tag_present(state, PairSlot::kPrevious));
    slot = PairSlot::kPrevious;
  }
  const TagState before = state;
  probe.c = tag_respond(state, slot, a, b);
  if (!probe.c && !(state == before)) ++env_.probe_side_effects_;
  return probe;
}

GameOutcome run_untraceability_game(Strategy& strategy, const GameConfig& config,
                                    std::size_t trial) {
  validate_word_len(config.word_len);
  Environment env(config.word_len, derive_seed(config.seed, trial, kGameEnvStream), 2,
                  QueryBudget{config.r1, config.r2});
  strategy.learn(env.oracle());
  if (env.test_used()) throw HarnessError("Test invoked during the learning phase");
  strategy.challenge(env.oracle());
  if (!env.test_used()) throw HarnessError("strategy never invoked Test");
  const int d = strategy.guess();
  if (d != 0 && d != 1) throw HarnessError("guess must be 0 or 1");

  GameOutcome outcome;
  outcome.trial = trial;
  outcome.b = *env.hidden_bit();
  outcome.d = d;
  outcome.success = outcome.b == outcome.d;
  outcome.queries = env.used();
  return outcome;
}

AdvantageEstimate estimate_advantage(std::span<const GameOutcome> outcomes) {
  if (outcomes.empty()) throw std::invalid_argument("estimate_advantage: no outcomes");
  AdvantageEstimate est;
  est.games = outcomes.size();
  for (const GameOutcome& o : outcomes) {
    if (o.b == o.d) ++est.successes;
  }
  est.pr_success = static_cast<double>(est.successes) / static_cast<double>(est.games);
  est.advantage = std::fabs(est.pr_success - 0.5);
  est.pr_success_ci = wilson_interval(est.successes, est.games);
  return est;
}

}  // namespace umarfid
