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

#include "umarfid/transcript_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace umarfid {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    if (pos > start) fields.push_back(line.substr(start, pos - start));
  }
  return fields;
}

bool is_skippable(std::string_view line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string_view::npos || line[first] == '#';
}

std::uint64_t parse_session(std::string_view field) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ConfigError("bad session index '" + std::string(field) + "'");
  }
  return value;
}

MessageLabel parse_label(std::string_view field) {
  if (field == "IDT") return MessageLabel::kIdt;
  if (field == "A") return MessageLabel::kA;
  if (field == "B") return MessageLabel::kB;
  if (field == "C") return MessageLabel::kC;
  throw ConfigError("bad message name '" + std::string(field) + "'");
}

Direction parse_direction(std::string_view field) {
  if (field == "tag->reader") return Direction::kTagToReader;
  if (field == "reader->tag") return Direction::kReaderToTag;
  throw ConfigError("bad direction '" + std::string(field) + "'");
}

struct ParsedLine {
  std::uint64_t session;
  MessageLabel label;
  std::string_view word;
  Disposition disposition;
};

ParsedLine parse_line(std::string_view line, std::size_t word_len) {
  const auto fields = split_fields(line);
  if (fields.size() != 5 && fields.size() != 6) {
    throw ConfigError("expected 5 or 6 fields in record '" + std::string(line) + "'");
  }
  const std::uint64_t session = parse_session(fields[0]);
  const Direction direction = parse_direction(fields[1]);
  const MessageLabel label = parse_label(fields[2]);
  if (direction != direction_of(label)) {
    throw ConfigError("message " + std::string(fields[2]) + " cannot travel " +
                      std::string(fields[1]));
  }
  const std::string_view status = fields[4];
  if (status == "replaced") {
    if (fields.size() != 6) throw ConfigError("replaced record needs a replacement word");
    return {session, label, fields[3],
            Disposition::replaced(Word::from_hex(word_len, fields[5]))};
  }
  if (fields.size() != 5) throw ConfigError("unexpected replacement word");
  if (status == "delivered") return {session, label, fields[3], Disposition::delivered()};
  if (status == "blocked") return {session, label, fields[3], Disposition::blocked()};
  throw ConfigError("bad disposition '" + std::string(status) + "'");
}

std::string disposition_fields(const Disposition& d) {
  switch (d.kind()) {
    case Disposition::Kind::kDelivered:
      return "delivered";
    case Disposition::Kind::kBlocked:
      return "blocked";
    case Disposition::Kind::kReplaced:
      return "replaced " + d.replacement()->to_hex();
  }
  return "?";
}

}  // namespace

std::string format_event(const ChannelEvent& event) {
  std::ostringstream out;
  out << event.session << ' ' << to_string(event.direction) << ' ' << to_string(event.label)
      << ' ' << event.payload.to_hex() << ' ' << disposition_fields(event.disposition);
  return out.str();
}

ChannelEvent parse_event(std::string_view line, std::size_t word_len) {
  ParsedLine parsed = parse_line(line, word_len);
  return ChannelEvent{parsed.session, direction_of(parsed.label), parsed.label,
                      Word::from_hex(word_len, parsed.word), std::move(parsed.disposition)};
}

void write_transcript(std::ostream& out, const SessionTranscript& transcript) {
  for (const ChannelEvent& event : transcript.events) out << format_event(event) << '\n';
  out << "# outcome " << transcript.session << ' ' << to_string(transcript.outcome) << '\n';
}

std::vector<ChannelEvent> read_events(std::istream& in, std::size_t word_len) {
  std::vector<ChannelEvent> events;
  std::string line;
  while (std::getline(in, line)) {
    if (is_skippable(line)) continue;
    events.push_back(parse_event(line, word_len));
  }
  return events;
}

ScriptRule parse_rule(std::string_view line, std::size_t word_len) {
  ParsedLine parsed = parse_line(line, word_len);
  std::optional<Word> match;
  if (parsed.word != "*") match = Word::from_hex(word_len, parsed.word);
  return ScriptRule{parsed.session, parsed.label, std::move(match), std::move(parsed.disposition)};
}

std::string format_rule(const ScriptRule& rule) {
  std::ostringstream out;
  out << rule.session << ' ' << to_string(direction_of(rule.label)) << ' '
      << to_string(rule.label) << ' ' << (rule.match ? rule.match->to_hex() : "*") << ' '
      << disposition_fields(rule.action);
  return out.str();
}

ScriptedChannel ScriptedChannel::load(std::istream& in, std::size_t word_len) {
  std::vector<ScriptRule> rules;
  std::string line;
  while (std::getline(in, line)) {
    if (is_skippable(line)) continue;
    rules.push_back(parse_rule(line, word_len));
  }
  return ScriptedChannel(std::move(rules));
}

Disposition ScriptedChannel::on_message(std::uint64_t session, MessageLabel label,
                                        const Word& payload) {
  for (const ScriptRule& rule : rules_) {
    if (rule.session == session && rule.label == label && (!rule.match || *rule.match == payload)) {
      return rule.action;
    }
  }
  return Disposition::delivered();
}

}  // namespace umarfid
