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

#include <stdexcept>

namespace umarfid {
namespace {

enum AttackStream : std::uint64_t { kEnvStream = 0x656e76, kAdversaryStream = 0x616476 };

const Word& need(const std::optional<Word>& w, const char* what) {
  if (!w) throw std::invalid_argument(std::string("transcript is missing ") + what);
  return *w;
}

const Word& accepted_idt(const SessionTranscript& t) {
  if (t.presented_idts.empty()) throw std::invalid_argument("transcript has no pseudonym");
  return t.presented_idts.back();
}

std::size_t run_followups(Environment& env, std::size_t tag, std::uint64_t first_session,
                          std::size_t count) {
  std::size_t failed = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const SessionTranscript t = env.honest_session(tag, first_session + k);
    if (t.outcome == SessionOutcome::kIdentificationFailed) ++failed;
  }
  return failed;
}

}  // namespace

Word recover_key(const Word& a_n, const Word& b_n, const Word& idt_next) {
  return a_n ^ b_n ^ idt_next;
}

void TraceabilityStrategy::learn(Oracle& oracle) {
  const SessionTranscript first = oracle.execute(0, n_);
  if (oracle.sends_left() > 0) oracle.send(MessageLabel::kC, n_ + 1, Disposition::blocked());
  const SessionTranscript second = oracle.execute(0, n_ + 1);
  b_n_ = need(first.b, "B_n");
  x_ = *b_n_ ^ accepted_idt(second);
}

void TraceabilityStrategy::challenge(Oracle& oracle) { revealed_ = oracle.test(n_ + 2); }

int TraceabilityStrategy::guess() {
  if (!x_) throw HarnessError("traceability strategy guessed before learning");
  for (const Word& p : revealed_) {
    if ((*b_n_ ^ p) == *x_) return 0;
  }
  return 1;
}

CloneClaim derive_clone(const SessionTranscript& session_n, const SessionTranscript& session_next) {
  const Word key =
      recover_key(need(session_n.a, "A_n"), need(session_n.b, "B_n"), accepted_idt(session_next));
  const Word nonce = key ^ need(session_next.a, "A_{n+1}");
  const bool b_check = need(session_next.b, "B_{n+1}") == compute_b(key, nonce);
  return CloneClaim{key, nonce, b_check, next_pair(PairState{accepted_idt(session_next), key}, nonce)};
}

MitmDesynchronizer::MitmDesynchronizer(Word a_n, Word b_n, RandomStream& rng, MitmNonce policy)
    : a_n_(std::move(a_n)), b_n_(std::move(b_n)), rng_(rng), policy_(policy) {}

Disposition MitmDesynchronizer::on_message(std::uint64_t, MessageLabel label, const Word& payload) {
  switch (label) {
    case MessageLabel::kIdt:
      key_ = recover_key(a_n_, b_n_, payload);
      return Disposition::delivered();
    case MessageLabel::kA: {
      if (!key_) return Disposition::delivered();
      genuine_nonce_ = *key_ ^ payload;
      Word forged = *genuine_nonce_;
      if (policy_ == MitmNonce::kFresh) {
        do {
          forged = rng_.word(payload.bits());
        } while (forged == *genuine_nonce_);
      }
      forged_nonce_ = forged;
      forged_b_ = compute_b(*key_, forged);
      return Disposition::replaced(compute_a(*key_, forged));
    }
    case MessageLabel::kB:
      if (!forged_b_) return Disposition::delivered();
      b_check_ = payload == compute_b(*key_, *genuine_nonce_);
      return Disposition::replaced(*forged_b_);
    case MessageLabel::kC:
      if (!genuine_nonce_) return Disposition::delivered();
      absorbed_c_ = payload;
      return Disposition::replaced(compute_c(*key_, *genuine_nonce_));
  }
  return Disposition::delivered();
}

std::size_t weight_two_count(std::size_t word_len) { return word_len * (word_len - 1) / 2; }

Word weight_two_word(std::size_t word_len, std::size_t k) {
  if (k >= weight_two_count(word_len)) throw std::out_of_range("weight-two index out of range");
  std::size_t lo = 0;
  while (k >= word_len - 1 - lo) {
    k -= word_len - 1 - lo;
    ++lo;
  }
  return Word::with_bits(word_len, {lo, lo + 1 + k});
}

BitflipResult desync_bitflip(Oracle& oracle, std::size_t tag, const SessionTranscript& captured,
                             RandomStream& rng, std::size_t round_cap) {
  const Word& a_n = need(captured.a, "A_n");
  const Word& b_n = need(captured.b, "B_n");
  const std::size_t len = a_n.bits();

  BitflipResult result;
  for (std::size_t round = 0; round < round_cap && !result.success; ++round) {
    BitflipRound log{rng.weight_two_word(len), 0, std::nullopt};
    const Word a = a_n ^ log.c1;
    for (std::size_t lo = 0; lo < len && !log.accepted_c2; ++lo) {
      for (std::size_t hi = lo + 1; hi < len; ++hi) {
        const Word c2 = Word::with_bits(len, {lo, hi});
        ++log.trials;
        TagProbe probe = oracle.probe_tag(tag, /*refuse_current=*/true, a, b_n ^ c2);
        if (probe.c) {
          log.accepted_c2 = c2;
          result.tag_c = std::move(probe.c);
          result.success = true;
          break;
        }
      }
    }
    result.total_trials += log.trials;
    result.rounds.push_back(std::move(log));
  }
  return result;
}

AttackReport attack_full_disclosure(const AttackSetup& setup) {
  Environment env(setup.word_len, derive_seed(setup.seed, 0, kEnvStream));
  Oracle& oracle = env.oracle();
  const SessionTranscript n = oracle.execute(0, 0);
  const SessionTranscript next = oracle.execute(0, 1);

  AttackReport report;
  report.attack = "full-disclosure";
  report.key = recover_key(need(n.a, "A_n"), need(n.b, "B_n"), accepted_idt(next));
  // Session n+1 ran on K_{n+1}; the tag now keeps it as its previous key.
  report.verified = *report.key == env.tag(0).previous.key;
  report.synchronized = env.synchronized(0);
  if (n.outcome != SessionOutcome::kMutualSuccess || next.outcome != SessionOutcome::kMutualSuccess) {
    ++report.checks_failed;
  }
  report.success = report.verified && report.checks_failed == 0;
  return report;
}

AttackReport attack_clone(const AttackSetup& setup) {
  Environment env(setup.word_len, derive_seed(setup.seed, 0, kEnvStream));
  Oracle& oracle = env.oracle();
  const SessionTranscript n = oracle.execute(0, 0);
  const SessionTranscript next = oracle.execute(0, 1);
  const CloneClaim claim = derive_clone(n, next);

  AttackReport report;
  report.attack = "clone";
  report.key = claim.key;
  report.nonce = claim.nonce;
  report.cloned = claim.pair;
  const std::optional<Word> true_nonce = env.nonce_of(1);
  report.verified = claim.key == env.tag(0).previous.key && true_nonce &&
                    claim.nonce == *true_nonce && claim.pair == env.tag(0).current;
  if (!claim.b_check) ++report.checks_failed;

  TagState clone = TagState::fresh(Word::zeros(setup.word_len), claim.pair);
  const SessionTranscript forged = env.honest_session_with(clone, 2);
  if (forged.outcome != SessionOutcome::kMutualSuccess) ++report.checks_failed;
  report.synchronized = env.synchronized(0);
  report.success = report.verified && report.checks_failed == 0;
  return report;
}

AttackReport attack_desync_mitm(const AttackSetup& setup, MitmNonce policy) {
  Environment env(setup.word_len, derive_seed(setup.seed, 0, kEnvStream));
  RandomStream adversary_rng(derive_seed(setup.seed, 0, kAdversaryStream));
  Oracle& oracle = env.oracle();
  const SessionTranscript n = oracle.execute(0, 0);
  MitmDesynchronizer mitm(need(n.a, "A_n"), need(n.b, "B_n"), adversary_rng, policy);
  const SessionTranscript attacked = oracle.relay(0, 1, mitm);

  AttackReport report;
  report.attack = "desync-mitm";
  report.key = mitm.key();
  report.nonce = mitm.genuine_nonce();
  const std::optional<Word> true_nonce = env.nonce_of(1);
  report.verified = mitm.key() && *mitm.key() == env.tag(0).previous.key && true_nonce &&
                    mitm.genuine_nonce() && *mitm.genuine_nonce() == *true_nonce;
  if (!mitm.b_check()) ++report.checks_failed;
  // Both ends believe the session succeeded.
  if (attacked.outcome != SessionOutcome::kMutualSuccess) ++report.checks_failed;

  report.synchronized = env.synchronized(0);
  report.followups_failed = run_followups(env, 0, 2, setup.followups);
  report.success = report.verified && report.checks_failed == 0 && !report.synchronized &&
                   report.followups_failed == setup.followups;
  return report;
}

AttackReport attack_desync_bitflip(const AttackSetup& setup) {
  Environment env(setup.word_len, derive_seed(setup.seed, 0, kEnvStream));
  RandomStream adversary_rng(derive_seed(setup.seed, 0, kAdversaryStream));
  Oracle& oracle = env.oracle();
  const SessionTranscript captured = oracle.execute(0, 0);
  const PairState pair_n = env.tag(0).previous;
  const TagState before_attack = env.tag(0);
  const Word nonce_n = *env.nonce_of(0);

  const BitflipResult result = desync_bitflip(oracle, 0, captured, adversary_rng, setup.round_cap);

  AttackReport report;
  report.attack = "desync-bitflip";
  report.c1_rounds = result.rounds.size();
  report.c2_trials = result.total_trials;
  report.side_effects = env.probe_side_effects();
  const std::size_t nonce_weight = nonce_n.hamming_weight();
  for (const BitflipRound& round : result.rounds) {
    if (!round.accepted_c2) continue;
    ++report.admitted_rounds;
    const Word flipped = nonce_n ^ round.c1;
    if (flipped.hamming_weight() != nonce_weight) ++report.anomalous_successes;
    if (*round.accepted_c2 != rotate_left(round.c1, flipped.hamming_weight())) {
      ++report.c2_form_mismatches;
    }
  }

  if (result.success) {
    // The tag must have moved off pair_n using N_n ^ C1; the reader is untouched.
    const Word forced_nonce = nonce_n ^ result.rounds.back().c1;
    report.nonce = forced_nonce;
    report.verified = env.tag(0).previous == pair_n &&
                      env.tag(0).current == next_pair(pair_n, forced_nonce) &&
                      result.tag_c && *result.tag_c == compute_c(pair_n.key, forced_nonce);
  } else {
    report.verified = env.tag(0) == before_attack;
  }
  if (report.side_effects != 0) ++report.checks_failed;

  report.synchronized = env.synchronized(0);
  if (result.success) report.followups_failed = run_followups(env, 0, 1, setup.followups);
  report.success = result.success && report.verified && report.checks_failed == 0 &&
                   !report.synchronized && report.followups_failed == setup.followups;
  return report;
}

GameOutcome attack_traceability(const GameConfig& config, std::size_t trial) {
  TraceabilityStrategy strategy;
  return run_untraceability_game(strategy, config, trial);
}

}  // namespace umarfid
