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

// Tag, reader and back-end database for the UMA-RFID mutual authentication
// protocol.
//
// Message flow for session i, with {IDT, K} the pair the tag identifies
// with and N a fresh reader nonce:
//
//   T -> R : IDT
//   R -> T : A = K ^ N,  B = Rot(K, K) ^ Rot(N, N)
//   T -> R : C = (K | Rot(N, N)) ^ (Rot(K, K) & N)
//
// Both sides then move to IDT' = K ^ Rot(N, N), K' = Rot(K, K) ^ N. The tag
// updates as soon as it sends C; the reader only after C verifies. The tag
// keeps the pair it just used as `previous`, and identifies with it when
// the reader does not recognise the current pseudonym.

#ifndef UMARFID_PROTOCOL_HPP_
#define UMARFID_PROTOCOL_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "umarfid/channel.hpp"
#include "umarfid/random.hpp"
#include "umarfid/word.hpp"

namespace umarfid {

// Misuse of the simulator itself (as opposed to a protocol-level failure).
class HarnessError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct PairState {
  Word idt;
  Word key;

  friend bool operator==(const PairState&, const PairState&) = default;
};

struct TagState {
  static constexpr std::size_t kStoredWords = 5;

  Word id;
  PairState current;
  PairState previous;

  // A tag that has never updated remembers its initial pair twice.
  static TagState fresh(Word id, PairState initial);

  std::array<Word, kStoredWords> stored_words() const;

  friend bool operator==(const TagState&, const TagState&) = default;
};

struct DatabaseEntry {
  static constexpr std::size_t kStoredWords = 3;

  Word idt;
  Word key;
  Word id;

  PairState pair() const { return {idt, key}; }
  std::array<Word, kStoredWords> stored_words() const { return {idt, key, id}; }

  friend bool operator==(const DatabaseEntry&, const DatabaseEntry&) = default;
};

enum class PairSlot { kCurrent, kPrevious };

Word compute_a(const Word& key, const Word& nonce);
Word compute_b(const Word& key, const Word& nonce);
Word compute_c(const Word& key, const Word& nonce);
PairState next_pair(const PairState& used, const Word& nonce);

const PairState& pair_in(const TagState& tag, PairSlot slot);
Word tag_present(const TagState& tag, PairSlot slot);

// Tag side of the {A, B} -> C exchange. Returns C and advances the tag
// (previous <- used pair, current <- next_pair) when B verifies; returns
// nullopt and leaves the tag untouched otherwise.
std::optional<Word> tag_respond(TagState& tag, PairSlot slot, const Word& a, const Word& b);

struct Challenge {
  Word a;
  Word b;
};

enum class Verdict { kAccept, kReject };

class Reader {
 public:
  explicit Reader(std::size_t word_len);

  std::size_t word_len() const { return word_len_; }

  // Throws ConfigError if the pseudonym is already registered.
  void register_tag(const DatabaseEntry& entry);

  // nullopt means the pseudonym is unknown (Unrecognized). Throws
  // HarnessError if a session is already pending.
  std::optional<Challenge> begin(const Word& idt, RandomStream& rng);
  // Throws HarnessError when nothing is pending. Clears the pending session.
  Verdict complete(const Word& c);
  // The pending session expires without an answer.
  void abandon() { pending_.reset(); }

  bool has_pending() const { return pending_.has_value(); }
  const DatabaseEntry* find(const Word& idt) const;
  const DatabaseEntry* find_by_id(const Word& id) const;
  std::size_t size() const { return entries_.size(); }

  // Ground truth for harness checks; never exposed to adversary code.
  const std::optional<Word>& last_nonce() const { return last_nonce_; }

 private:
  struct Pending {
    std::size_t entry;
    Word nonce;
    Word expected_c;
  };

  std::size_t word_len_;
  std::vector<DatabaseEntry> entries_;
  std::unordered_map<Word, std::size_t> by_idt_;
  std::optional<Pending> pending_;
  std::optional<Word> last_nonce_;
};

enum class SessionOutcome {
  kMutualSuccess,
  kReaderRejectedTag,
  kTagRejectedReader,
  kIdentificationFailed,
  kBlocked,
};

std::string_view to_string(SessionOutcome outcome);

// Everything an eavesdropper sees during one session.
struct SessionTranscript {
  std::uint64_t session = 0;
  std::vector<Word> presented_idts;  // 1 entry, or 2 when fallback fired
  std::optional<Word> a;
  std::optional<Word> b;
  std::optional<Word> c;
  SessionOutcome outcome = SessionOutcome::kBlocked;
  std::vector<ChannelEvent> events;

  // Channel transmissions: each IDT broadcast, the {A, B} pair, and C.
  std::size_t transmissions() const;
};

// Identification (current pseudonym, then one retry with the previous one
// on Unrecognized), the {A, B} / C exchange, and both updates. `hook`, when
// given, sees every message before delivery.
SessionTranscript run_honest_session(Reader& reader, TagState& tag, RandomStream& rng,
                                     std::uint64_t session, ChannelHook* hook = nullptr);

// Reader entry holds the tag's current or previous pair.
bool can_authenticate(const Reader& reader, const TagState& tag);

}  // namespace umarfid

#endif  // UMARFID_PROTOCOL_HPP_
