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

#include "umarfid/protocol.hpp"

#include <utility>

namespace umarfid {

std::string_view to_string(MessageLabel label) {
  switch (label) {
    case MessageLabel::kIdt:
      return "IDT";
    case MessageLabel::kA:
      return "A";
    case MessageLabel::kB:
      return "B";
    case MessageLabel::kC:
      return "C";
  }
  return "?";
}

std::string_view to_string(Direction direction) {
  return direction == Direction::kTagToReader ? "tag->reader" : "reader->tag";
}

Direction direction_of(MessageLabel label) {
  return (label == MessageLabel::kA || label == MessageLabel::kB) ? Direction::kReaderToTag
                                                                  : Direction::kTagToReader;
}

std::optional<Word> ChannelEvent::received() const {
  switch (disposition.kind()) {
    case Disposition::Kind::kDelivered:
      return payload;
    case Disposition::Kind::kBlocked:
      return std::nullopt;
    case Disposition::Kind::kReplaced:
      return disposition.replacement();
  }
  return std::nullopt;
}

TagState TagState::fresh(Word id, PairState initial) {
  TagState tag{std::move(id), initial, initial};
  return tag;
}

std::array<Word, TagState::kStoredWords> TagState::stored_words() const {
  return {id, current.idt, current.key, previous.idt, previous.key};
}

Word compute_a(const Word& key, const Word& nonce) { return key ^ nonce; }

Word compute_b(const Word& key, const Word& nonce) { return rot(key, key) ^ rot(nonce, nonce); }

Word compute_c(const Word& key, const Word& nonce) {
  return (key | rot(nonce, nonce)) ^ (rot(key, key) & nonce);
}

PairState next_pair(const PairState& used, const Word& nonce) {
  return {used.key ^ rot(nonce, nonce), rot(used.key, used.key) ^ nonce};
}

const PairState& pair_in(const TagState& tag, PairSlot slot) {
  return slot == PairSlot::kCurrent ? tag.current : tag.previous;
}

Word tag_present(const TagState& tag, PairSlot slot) { return pair_in(tag, slot).idt; }

std::optional<Word> tag_respond(TagState& tag, PairSlot slot, const Word& a, const Word& b) {
  const PairState used = pair_in(tag, slot);
  const Word nonce = a ^ used.key;
  if (compute_b(used.key, nonce) != b) return std::nullopt;
  Word c = compute_c(used.key, nonce);
  tag.previous = used;
  tag.current = next_pair(used, nonce);
  return c;
}

Reader::Reader(std::size_t word_len) : word_len_(word_len) { validate_word_len(word_len); }

void Reader::register_tag(const DatabaseEntry& entry) {
  if (entry.idt.bits() != word_len_ || entry.key.bits() != word_len_ ||
      entry.id.bits() != word_len_) {
    throw ConfigError("database entry length does not match reader word length");
  }
  if (by_idt_.contains(entry.idt)) {
    throw ConfigError("pseudonym " + entry.idt.to_hex() + " already registered");
  }
  by_idt_.emplace(entry.idt, entries_.size());
  entries_.push_back(entry);
}

std::optional<Challenge> Reader::begin(const Word& idt, RandomStream& rng) {
  if (pending_) throw HarnessError("reader already has a pending session");
  const auto it = by_idt_.find(idt);
  if (it == by_idt_.end()) return std::nullopt;
  const DatabaseEntry& entry = entries_[it->second];
  Word nonce = rng.word(word_len_);
  Challenge challenge{compute_a(entry.key, nonce), compute_b(entry.key, nonce)};
  pending_ = Pending{it->second, nonce, compute_c(entry.key, nonce)};
  last_nonce_ = std::move(nonce);
  return challenge;
}

Verdict Reader::complete(const Word& c) {
  if (!pending_) throw HarnessError("reader has no pending session");
  const Pending pending = std::move(*pending_);
  pending_.reset();
  if (c != pending.expected_c) return Verdict::kReject;

  DatabaseEntry& entry = entries_[pending.entry];
  const PairState next = next_pair(entry.pair(), pending.nonce);
  if (next.idt != entry.idt) {
    if (by_idt_.contains(next.idt)) {
      throw ConfigError("pseudonym collision on update: " + next.idt.to_hex());
    }
    by_idt_.erase(entry.idt);
    by_idt_.emplace(next.idt, pending.entry);
  }
  entry.idt = next.idt;
  entry.key = next.key;
  return Verdict::kAccept;
}

const DatabaseEntry* Reader::find(const Word& idt) const {
  const auto it = by_idt_.find(idt);
  return it == by_idt_.end() ? nullptr : &entries_[it->second];
}

const DatabaseEntry* Reader::find_by_id(const Word& id) const {
  for (const DatabaseEntry& entry : entries_) {
    if (entry.id == id) return &entry;
  }
  return nullptr;
}

std::string_view to_string(SessionOutcome outcome) {
  switch (outcome) {
    case SessionOutcome::kMutualSuccess:
      return "MutualSuccess";
    case SessionOutcome::kReaderRejectedTag:
      return "ReaderRejectedTag";
    case SessionOutcome::kTagRejectedReader:
      return "TagRejectedReader";
    case SessionOutcome::kIdentificationFailed:
      return "IdentificationFailed";
    case SessionOutcome::kBlocked:
      return "Blocked";
  }
  return "?";
}

std::size_t SessionTranscript::transmissions() const {
  std::size_t count = presented_idts.size();
  if (a || b) ++count;
  if (c) ++count;
  return count;
}

SessionTranscript run_honest_session(Reader& reader, TagState& tag, RandomStream& rng,
                                     std::uint64_t session, ChannelHook* hook) {
  SessionTranscript transcript;
  transcript.session = session;

  auto transmit = [&](MessageLabel label, const Word& payload) -> std::optional<Word> {
    Disposition disposition =
        hook != nullptr ? hook->on_message(session, label, payload) : Disposition::delivered();
    if (disposition.replacement() && disposition.replacement()->bits() != payload.bits()) {
      throw ConfigError("replacement payload has the wrong length");
    }
    ChannelEvent event{session, direction_of(label), label, payload, std::move(disposition)};
    std::optional<Word> received = event.received();
    transcript.events.push_back(std::move(event));
    return received;
  };

  std::optional<Challenge> challenge;
  PairSlot slot = PairSlot::kCurrent;
  for (PairSlot candidate : {PairSlot::kCurrent, PairSlot::kPrevious}) {
    slot = candidate;
    const Word idt = tag_present(tag, slot);
    transcript.presented_idts.push_back(idt);
    const std::optional<Word> heard = transmit(MessageLabel::kIdt, idt);
    if (!heard) {
      transcript.outcome = SessionOutcome::kBlocked;
      return transcript;
    }
    challenge = reader.begin(*heard, rng);
    if (challenge) break;
  }
  if (!challenge) {
    transcript.outcome = SessionOutcome::kIdentificationFailed;
    return transcript;
  }

  transcript.a = challenge->a;
  transcript.b = challenge->b;
  const std::optional<Word> a = transmit(MessageLabel::kA, challenge->a);
  const std::optional<Word> b = transmit(MessageLabel::kB, challenge->b);
  if (!a || !b) {
    reader.abandon();
    transcript.outcome = SessionOutcome::kBlocked;
    return transcript;
  }

  const std::optional<Word> c = tag_respond(tag, slot, *a, *b);
  if (!c) {
    reader.abandon();
    transcript.outcome = SessionOutcome::kTagRejectedReader;
    return transcript;
  }
  transcript.c = *c;

  const std::optional<Word> heard_c = transmit(MessageLabel::kC, *c);
  if (!heard_c) {
    reader.abandon();
    transcript.outcome = SessionOutcome::kBlocked;
    return transcript;
  }
  transcript.outcome = reader.complete(*heard_c) == Verdict::kAccept
                           ? SessionOutcome::kMutualSuccess
                           : SessionOutcome::kReaderRejectedTag;
  return transcript;
}

bool can_authenticate(const Reader& reader, const TagState& tag) {
  const DatabaseEntry* entry = reader.find_by_id(tag.id);
  if (entry == nullptr) return false;
  const PairState pair = entry->pair();
  return pair == tag.current || pair == tag.previous;
}

}  // namespace umarfid
