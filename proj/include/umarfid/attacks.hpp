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

// Attacks against UMA-RFID.
//
// Each attack is split in two halves. The adversary half (recover_key,
// TraceabilityStrategy, derive_clone, MitmDesynchronizer, desync_bitflip)
// works only from what an Oracle hands out. The attack_* drivers own an
// Environment, run the adversary half against it, and then check every
// claim against the hidden simulator state before filling an AttackReport.

#ifndef UMARFID_ATTACKS_HPP_
#define UMARFID_ATTACKS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "umarfid/adversary.hpp"
#include "umarfid/protocol.hpp"
#include "umarfid/random.hpp"
#include "umarfid/word.hpp"

namespace umarfid {

// K_{n+1} from A_n, B_n of session n and the pseudonym of session n+1:
// A ^ B ^ IDT' = (K ^ N) ^ (Rot(K,K) ^ Rot(N,N)) ^ (K ^ Rot(N,N)) = Rot(K,K) ^ N.
Word recover_key(const Word& a_n, const Word& b_n, const Word& idt_next);

// Traceability adversary. Learning: Execute sessions n and n+1 on T_0 and
// block C in session n+1, so T_0 keeps answering with IDT_{n+1}. The value
// X = B_n ^ IDT_{n+1} = Rot(K_n, K_n) ^ K_n is constant for T_0. Guess d = 0
// iff some pseudonym revealed by Test XORs with B_n to X.
//
// With no Send budget left the block is skipped (ablation).
class TraceabilityStrategy : public Strategy {
 public:
  explicit TraceabilityStrategy(std::uint64_t first_session = 0) : n_(first_session) {}

  void learn(Oracle& oracle) override;
  void challenge(Oracle& oracle) override;
  int guess() override;

  const std::optional<Word>& fingerprint() const { return x_; }

 private:
  std::uint64_t n_;
  std::optional<Word> b_n_;
  std::optional<Word> x_;
  std::vector<Word> revealed_;
};

struct CloneClaim {
  Word key;    // K_{n+1}
  Word nonce;  // N_{n+1}
  bool b_check = false;
  PairState pair;  // {IDT_{n+2}, K_{n+2}}
};

// From session n ({IDT, A, B, C}) and session n+1 (at least IDT, A, B).
// Throws std::invalid_argument when a needed message is missing.
CloneClaim derive_clone(const SessionTranscript& session_n, const SessionTranscript& session_next);

enum class MitmNonce {
  kFresh,        // N* drawn at random, redrawn if it equals the genuine nonce
  kEchoGenuine,  // N* = genuine nonce; degenerate, both sides stay aligned
};

// Man-in-the-middle for session n+1, primed with A_n and B_n from session n.
// On IDT it recovers K'; it swaps the reader's {A, B} for {A*, B*} built
// from its own N*, absorbs the tag's C*, and answers the reader with C'
// computed from the genuine nonce N' = K' ^ A.
class MitmDesynchronizer : public ChannelHook {
 public:
  MitmDesynchronizer(Word a_n, Word b_n, RandomStream& rng, MitmNonce policy = MitmNonce::kFresh);

  Disposition on_message(std::uint64_t session, MessageLabel label, const Word& payload) override;

  const std::optional<Word>& key() const { return key_; }
  const std::optional<Word>& genuine_nonce() const { return genuine_nonce_; }
  const std::optional<Word>& forged_nonce() const { return forged_nonce_; }
  const std::optional<Word>& absorbed_c() const { return absorbed_c_; }
  bool b_check() const { return b_check_; }

 private:
  Word a_n_;
  Word b_n_;
  RandomStream& rng_;
  MitmNonce policy_;
  std::optional<Word> key_;
  std::optional<Word> genuine_nonce_;
  std::optional<Word> forged_nonce_;
  std::optional<Word> forged_b_;
  std::optional<Word> absorbed_c_;
  bool b_check_ = false;
};

// Number of L-bit words of Hamming weight 2, L(L-1)/2.
std::size_t weight_two_count(std::size_t word_len);
// The k-th weight-2 word in (lower set bit, upper set bit) lexicographic
// order, k < weight_two_count(L).
Word weight_two_word(std::size_t word_len, std::size_t k);

struct BitflipRound {
  Word c1;
  std::size_t trials = 0;
  std::optional<Word> accepted_c2;
};

struct BitflipResult {
  bool success = false;
  std::vector<BitflipRound> rounds;
  std::size_t total_trials = 0;
  std::optional<Word> tag_c;
};

// Replays A_n ^ C1, B_n ^ C2 of a captured session n at `tag`, forcing it
// onto its previous pair. Each round draws a weight-2 C1 and walks every
// weight-2 C2 until the tag answers; gives up after `round_cap` rounds.
BitflipResult desync_bitflip(Oracle& oracle, std::size_t tag, const SessionTranscript& captured,
                             RandomStream& rng, std::size_t round_cap);

struct AttackSetup {
  std::size_t word_len = kDefaultWordBits;
  std::uint64_t seed = 0;
  std::size_t followups = 3;  // honest sessions run after a desync
  std::size_t round_cap = 64;  // C1 rounds for the bit-flip attack
};

struct AttackReport {
  std::string attack;
  bool success = false;
  // Every adversary claim matched the simulator's hidden state.
  bool verified = false;
  // Post-attack: the reader's entry matches one of the tag's pairs.
  bool synchronized = true;
  std::optional<Word> key;
  std::optional<Word> nonce;
  std::optional<PairState> cloned;
  std::size_t c1_rounds = 0;
  std::size_t c2_trials = 0;
  std::size_t admitted_rounds = 0;      // rounds in which some C2 was accepted
  std::size_t anomalous_successes = 0;  // accepted although hw(N ^ C1) != hw(N)
  std::size_t c2_form_mismatches = 0;   // accepted C2 != Rot-shifted C1
  std::size_t side_effects = 0;         // rejected probes that changed the tag
  std::size_t followups_failed = 0;     // follow-up sessions ending IdentificationFailed
  std::size_t checks_failed = 0;        // harness-side invariant violations
};

AttackReport attack_full_disclosure(const AttackSetup& setup);
AttackReport attack_clone(const AttackSetup& setup);
AttackReport attack_desync_mitm(const AttackSetup& setup, MitmNonce policy = MitmNonce::kFresh);
AttackReport attack_desync_bitflip(const AttackSetup& setup);
// One untraceability game played by TraceabilityStrategy.
GameOutcome attack_traceability(const GameConfig& config, std::size_t trial);

}  // namespace umarfid

#endif  // UMARFID_ATTACKS_HPP_
