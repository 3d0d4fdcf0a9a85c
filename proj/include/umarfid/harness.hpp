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

#ifndef UMARFID_HARNESS_HPP_
#define UMARFID_HARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "umarfid/adversary.hpp"
#include "umarfid/attacks.hpp"
#include "umarfid/stats.hpp"

namespace umarfid {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Experiment {
  kSession,
  kGame,
  kFullDisclosure,
  kClone,
  kDesyncMitm,
  kDesyncBitflip,
  kVerifyIdentities,
};

std::string_view experiment_name(Experiment e);
// Throws UsageError listing the valid names.
Experiment parse_experiment(std::string_view name);
const std::vector<std::string_view>& experiment_names();

enum class StrategyKind { kFingerprint, kRandom };

std::string_view strategy_name(StrategyKind s);
StrategyKind parse_strategy(std::string_view name);

struct TrialConfig {
  Experiment experiment = Experiment::kSession;
  std::size_t word_len = kDefaultWordBits;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t workers = 1;

  // session
  std::size_t sessions = 8;
  bool block_c = false;  // block C in session 1 and check recovery in session 2
  // game
  StrategyKind strategy = StrategyKind::kFingerprint;
  std::size_t r1 = 2;
  std::size_t r2 = 1;
  // desync attacks
  std::size_t followups = 3;
  std::size_t round_cap = 64;

  void validate() const;
};

struct TrialRecord {
  std::size_t trial = 0;
  std::variant<AttackReport, GameOutcome> result;
  // Every harness-side check held, including the expected success when the
  // experiment claims one.
  bool assertions_held = false;

  bool success() const;
};

struct CounterStats {
  double mean = 0.0;
  double median = 0.0;
  std::size_t max = 0;
};

struct SummaryStats {
  std::string experiment;
  std::size_t word_len = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  Interval wilson_95;
  std::optional<double> advantage;  // games only
  CounterStats c1_rounds;
  CounterStats c2_trials;
  std::size_t total_c1_rounds = 0;
  std::size_t admitted_rounds = 0;
  std::size_t anomalous_successes = 0;
  std::size_t c2_form_mismatches = 0;
  std::size_t side_effects = 0;
  std::size_t assertion_failures = 0;
  double wall_seconds = 0.0;  // not part of serialized output
};

struct TrialRun {
  TrialConfig config;
  std::vector<TrialRecord> records;
  SummaryStats summary;

  bool all_assertions_held() const { return summary.assertion_failures == 0; }
};

// Seed of trial `index` under `base`.
std::uint64_t trial_seed(std::uint64_t base, std::size_t index);

TrialRecord run_trial(const TrialConfig& config, std::size_t index);
// Per-trial seeds make the records independent of the worker count.
TrialRun run_trials(const TrialConfig& config);
// Throws std::invalid_argument on empty input.
SummaryStats summarize(std::span<const TrialRecord> records);

enum class OutputFormat { kText, kJsonLines, kCsv };

OutputFormat parse_format(std::string_view name);
void write_run(std::ostream& out, const TrialRun& run, OutputFormat format);

}  // namespace umarfid

#endif  // UMARFID_HARNESS_HPP_
