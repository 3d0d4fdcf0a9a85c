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

// In-process radio channel between a tag and a reader. Every message a
// session puts on the air passes through an optional ChannelHook, which may
// deliver it untouched, suppress it, or substitute a different payload.

#ifndef UMARFID_CHANNEL_HPP_
#define UMARFID_CHANNEL_HPP_

#include <cstdint>
#include <optional>
#include <string_view>

#include "umarfid/word.hpp"

namespace umarfid {

enum class MessageLabel { kIdt, kA, kB, kC };
enum class Direction { kTagToReader, kReaderToTag };

std::string_view to_string(MessageLabel label);
std::string_view to_string(Direction direction);
// Direction implied by the protocol's message flow.
Direction direction_of(MessageLabel label);

class Disposition {
 public:
  enum class Kind { kDelivered, kBlocked, kReplaced };

  static Disposition delivered() { return Disposition(Kind::kDelivered, std::nullopt); }
  static Disposition blocked() { return Disposition(Kind::kBlocked, std::nullopt); }
  static Disposition replaced(Word with) { return Disposition(Kind::kReplaced, std::move(with)); }

  Kind kind() const { return kind_; }
  // Present iff kind() == kReplaced.
  const std::optional<Word>& replacement() const { return replacement_; }

  friend bool operator==(const Disposition&, const Disposition&) = default;

 private:
  Disposition(Kind kind, std::optional<Word> replacement)
      : kind_(kind), replacement_(std::move(replacement)) {}

  Kind kind_;
  std::optional<Word> replacement_;
};

struct ChannelEvent {
  std::uint64_t session = 0;
  Direction direction = Direction::kTagToReader;
  MessageLabel label = MessageLabel::kIdt;
  Word payload;  // as transmitted by the sender
  Disposition disposition = Disposition::delivered();

  // What the receiver gets, if anything.
  std::optional<Word> received() const;

  friend bool operator==(const ChannelEvent&, const ChannelEvent&) = default;
};

class ChannelHook {
 public:
  virtual ~ChannelHook() = default;
  virtual Disposition on_message(std::uint64_t session, MessageLabel label,
                                 const Word& payload) = 0;
};

}  // namespace umarfid

#endif  // UMARFID_CHANNEL_HPP_
