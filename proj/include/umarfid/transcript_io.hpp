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

// Line-oriented channel records. One record per line, space separated, in
// this fixed order:
//
//   <session> <direction> <message> <word> <disposition> [<replacement>]
//
//   session      decimal session index
//   direction    tag->reader | reader->tag
//   message      IDT | A | B | C
//   word         lowercase hex, L/4 digits, most significant nibble first
//   disposition  delivered | blocked | replaced
//   replacement  hex word, present iff disposition is replaced
//
// Lines starting with '#' and blank lines are ignored. Scenario scripts use
// the same layout with `*` allowed in the word column to match any payload;
// a script line is a rule applied to the matching message.

#ifndef UMARFID_TRANSCRIPT_IO_HPP_
#define UMARFID_TRANSCRIPT_IO_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "umarfid/channel.hpp"
#include "umarfid/protocol.hpp"

namespace umarfid {

std::string format_event(const ChannelEvent& event);
ChannelEvent parse_event(std::string_view line, std::size_t word_len);

// Events of the session followed by a `# outcome` comment line.
void write_transcript(std::ostream& out, const SessionTranscript& transcript);
std::vector<ChannelEvent> read_events(std::istream& in, std::size_t word_len);

struct ScriptRule {
  std::uint64_t session = 0;
  MessageLabel label = MessageLabel::kIdt;
  std::optional<Word> match;  // nullopt matches any payload
  Disposition action = Disposition::delivered();
};

ScriptRule parse_rule(std::string_view line, std::size_t word_len);
std::string format_rule(const ScriptRule& rule);

// Applies the first rule matching (session, message, payload); delivers
// everything else.
class ScriptedChannel : public ChannelHook {
 public:
  explicit ScriptedChannel(std::vector<ScriptRule> rules) : rules_(std::move(rules)) {}
  static ScriptedChannel load(std::istream& in, std::size_t word_len);

  Disposition on_message(std::uint64_t session, MessageLabel label, const Word& payload) override;

  const std::vector<ScriptRule>& rules() const { return rules_; }

 private:
  std::vector<ScriptRule> rules_;
};

}  // namespace umarfid

#endif  // UMARFID_TRANSCRIPT_IO_HPP_
