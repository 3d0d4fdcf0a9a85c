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

// Record layouts. Field order is fixed; new fields go at the end.
//
//   attack record: trial attack success verified synchronized key nonce
//                  cloned_idt cloned_key c1_rounds c2_trials admitted_rounds
//                  anomalous_successes c2_form_mismatches side_effects
//                  followups_failed checks_failed assertions_held
//   game record:   trial b d success execute send assertions_held
//
// Absent words are `null` in JSON and empty in CSV/text.

#include <ostream>

#include "json.hpp"
#include "umarfid/harness.hpp"

namespace umarfid {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kAttackHeader =
    "trial,attack,success,verified,synchronized,key,nonce,cloned_idt,cloned_key,c1_rounds,"
    "c2_trials,admitted_rounds,anomalous_successes,c2_form_mismatches,side_effects,"
    "followups_failed,checks_failed,assertions_held";
constexpr const char* kGameHeader = "trial,b,d,success,execute,send,assertions_held";

ordered_json word_json(const std::optional<Word>& w) {
  return w ? ordered_json(w->to_hex()) : ordered_json(nullptr);
}

ordered_json record_json(const TrialRecord& record) {
  ordered_json j;
  j["trial"] = record.trial;
  if (const auto* game = std::get_if<GameOutcome>(&record.result)) {
    j["b"] = game->b;
    j["d"] = game->d;
    j["success"] = game->success;
    j["execute"] = game->queries.execute;
    j["send"] = game->queries.send;
  } else {
    const auto& r = std::get<AttackReport>(record.result);
    j["attack"] = r.attack;
    j["success"] = r.success;
    j["verified"] = r.verified;
    j["synchronized"] = r.synchronized;
    j["key"] = word_json(r.key);
    j["nonce"] = word_json(r.nonce);
    j["cloned_idt"] = r.cloned ? ordered_json(r.cloned->idt.to_hex()) : ordered_json(nullptr);
    j["cloned_key"] = r.cloned ? ordered_json(r.cloned->key.to_hex()) : ordered_json(nullptr);
    j["c1_rounds"] = r.c1_rounds;
    j["c2_trials"] = r.c2_trials;
    j["admitted_rounds"] = r.admitted_rounds;
    j["anomalous_successes"] = r.anomalous_successes;
    j["c2_form_mismatches"] = r.c2_form_mismatches;
    j["side_effects"] = r.side_effects;
    j["followups_failed"] = r.followups_failed;
    j["checks_failed"] = r.checks_failed;
  }
  j["assertions_held"] = record.assertions_held;
  return j;
}

std::string scalar_text(const ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  return v.dump();
}

ordered_json summary_json(const TrialRun& run) {
  const SummaryStats& s = run.summary;
  ordered_json j;
  j["experiment"] = s.experiment;
  j["word_len"] = s.word_len;
  j["seed"] = run.config.seed;
  j["trials"] = s.trials;
  j["successes"] = s.successes;
  j["success_rate"] = s.success_rate;
  j["wilson_95_low"] = s.wilson_95.low;
  j["wilson_95_high"] = s.wilson_95.high;
  j["advantage"] = s.advantage ? ordered_json(*s.advantage) : ordered_json(nullptr);
  j["c1_rounds_mean"] = s.c1_rounds.mean;
  j["c1_rounds_median"] = s.c1_rounds.median;
  j["c1_rounds_max"] = s.c1_rounds.max;
  j["c2_trials_mean"] = s.c2_trials.mean;
  j["c2_trials_median"] = s.c2_trials.median;
  j["c2_trials_max"] = s.c2_trials.max;
  j["total_c1_rounds"] = s.total_c1_rounds;
  j["admitted_rounds"] = s.admitted_rounds;
  j["anomalous_successes"] = s.anomalous_successes;
  j["c2_form_mismatches"] = s.c2_form_mismatches;
  j["side_effects"] = s.side_effects;
  j["assertion_failures"] = s.assertion_failures;
  return j;
}

}  // namespace

OutputFormat parse_format(std::string_view name) {
  if (name == "text") return OutputFormat::kText;
  if (name == "json-lines") return OutputFormat::kJsonLines;
  if (name == "csv") return OutputFormat::kCsv;
  throw UsageError("unknown format '" + std::string(name) + "'; expected text, json-lines or csv");
}

void write_run(std::ostream& out, const TrialRun& run, OutputFormat format) {
  const ordered_json summary = summary_json(run);
  switch (format) {
    case OutputFormat::kJsonLines:
      for (const TrialRecord& record : run.records) out << record_json(record).dump() << '\n';
      out << ordered_json{{"summary", summary}}.dump() << '\n';
      return;
    case OutputFormat::kCsv: {
      const bool game = run.config.experiment == Experiment::kGame;
      out << (game ? kGameHeader : kAttackHeader) << '\n';
      for (const TrialRecord& record : run.records) {
        const ordered_json fields = record_json(record);
        bool first = true;
        for (const auto& [key, value] : fields.items()) {
          if (!first) out << ',';
          out << scalar_text(value);
          first = false;
        }
        out << '\n';
      }
      out << "# summary\n";
      for (const auto& [key, value] : summary.items()) {
        out << "# " << key << ',' << scalar_text(value) << '\n';
      }
      return;
    }
    case OutputFormat::kText:
      for (const TrialRecord& record : run.records) {
        const ordered_json fields = record_json(record);
        bool first = true;
        for (const auto& [key, value] : fields.items()) {
          if (!first) out << ' ';
          out << key << '=' << scalar_text(value);
          first = false;
        }
        out << '\n';
      }
      out << "--- summary ---\n";
      for (const auto& [key, value] : summary.items()) {
        out << key << ": " << scalar_text(value) << '\n';
      }
      return;
  }
}

}  // namespace umarfid
