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

#include "umarfid/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace umarfid {
namespace {

constexpr std::uint64_t kStrategyStream = 0x737472;
constexpr std::size_t kDefaultRoundCap = 64;

struct NamedExperiment {
  Experiment experiment;
  std::string_view name;
};

constexpr NamedExperiment kExperiments[] = {
    {Experiment::kSession, "session"},
    {Experiment::kGame, "game"},
    {Experiment::kFullDisclosure, "full-disclosure"},
    {Experiment::kClone, "clone"},
    {Experiment::kDesyncMitm, "desync-mitm"},
    {Experiment::kDesyncBitflip, "desync-bitflip"},
    {Experiment::kVerifyIdentities, "verify-identities"},
};

// Scripted honest sessions on one tag, checking the protocol invariants
// after each one.
AttackReport session_trial(const TrialConfig& config, std::uint64_t seed) {
  Environment env(config.word_len, seed);
  Oracle& oracle = env.oracle();
  AttackReport report;
  report.attack = "session";
  bool recovering = false;

  for (std::uint64_t s = 0; s < config.sessions; ++s) {
    const bool block = config.block_c && s == 1;
    if (block) oracle.send(MessageLabel::kC, s, Disposition::blocked());
    const PairState reader_before = env.reader().find_by_id(env.tag(0).id)->pair();
    const SessionTranscript t = oracle.execute(0, s);
    const TagState& tag = env.tag(0);
    const PairState reader_after = env.reader().find_by_id(tag.id)->pair();
    const std::optional<Word> nonce = env.nonce_of(s);

    // The tag always advances once it sends C.
    const Word& used_key = tag.previous.key;
    if (!t.b || !t.c || !nonce) {
      ++report.checks_failed;
      continue;
    }
    if ((*t.a ^ used_key) != *nonce) ++report.checks_failed;
    if ((*t.b ^ tag.current.idt) != (rot(used_key, used_key) ^ used_key)) ++report.checks_failed;

    if (block) {
      if (t.outcome != SessionOutcome::kBlocked) ++report.checks_failed;
      if (reader_after != reader_before) ++report.checks_failed;
      if (!can_authenticate(env.reader(), tag)) ++report.checks_failed;
      recovering = true;
      continue;
    }
    if (t.outcome != SessionOutcome::kMutualSuccess) ++report.checks_failed;
    if (reader_after != tag.current) ++report.checks_failed;
    const std::size_t expected_idts = recovering ? 2 : 1;
    if (t.presented_idts.size() != expected_idts) ++report.checks_failed;
    if (t.transmissions() != expected_idts + 2) ++report.checks_failed;
    recovering = false;
  }
  report.synchronized = env.synchronized(0);
  report.verified = report.checks_failed == 0;
  report.success = report.verified && report.synchronized;
  return report;
}

// Algebraic identities of the protocol over one random (K, N).
AttackReport identity_trial(const TrialConfig& config, std::uint64_t seed) {
  RandomStream rng(seed);
  const std::size_t len = config.word_len;
  const Word key = rng.word(len);
  const Word nonce = rng.word(len);
  const Word other = rng.word(len);

  AttackReport report;
  report.attack = "verify-identities";
  const Word a = compute_a(key, nonce);
  const Word b = compute_b(key, nonce);
  const PairState next = next_pair(PairState{Word::zeros(len), key}, nonce);
  report.key = recover_key(a, b, next.idt);
  if (*report.key != next.key) ++report.checks_failed;
  if ((b ^ next.idt) != (rot(key, key) ^ key)) ++report.checks_failed;
  if ((a ^ key) != nonce) ++report.checks_failed;
  if ((next.idt ^ next.key) != (nonce ^ rot(nonce, nonce) ^ key ^ rot(key, key))) {
    ++report.checks_failed;
  }
  if (rot(key, nonce).hamming_weight() != key.hamming_weight()) ++report.checks_failed;
  if (rot(key ^ other, nonce) != (rot(key, nonce) ^ rot(other, nonce))) ++report.checks_failed;

  TagState tag = TagState::fresh(Word::zeros(len), PairState{Word::zeros(len), key});
  const std::optional<Word> c = tag_respond(tag, PairSlot::kCurrent, a, b);
  if (!c || *c != compute_c(key, nonce) || tag.current != next) ++report.checks_failed;

  report.verified = report.checks_failed == 0;
  report.success = report.verified;
  return report;
}

CounterStats counter_stats(std::vector<std::size_t> values) {
  CounterStats stats;
  if (values.empty()) return stats;
  std::sort(values.begin(), values.end());
  double total = 0.0;
  for (std::size_t v : values) total += static_cast<double>(v);
  stats.mean = total / static_cast<double>(values.size());
  const std::size_t mid = values.size() / 2;
  stats.median = values.size() % 2 == 1
                     ? static_cast<double>(values[mid])
                     : (static_cast<double>(values[mid - 1]) + static_cast<double>(values[mid])) / 2.0;
  stats.max = values.back();
  return stats;
}

}  // namespace

std::string_view experiment_name(Experiment e) {
  for (const auto& entry : kExperiments) {
    if (entry.experiment == e) return entry.name;
  }
  return "?";
}

const std::vector<std::string_view>& experiment_names() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> out;
    for (const auto& entry : kExperiments) out.push_back(entry.name);
    return out;
  }();
  return names;
}

Experiment parse_experiment(std::string_view name) {
  for (const auto& entry : kExperiments) {
    if (entry.name == name) return entry.experiment;
  }
  std::string message = "unknown experiment '" + std::string(name) + "'; expected one of:";
  for (std::string_view n : experiment_names()) message += " " + std::string(n);
  throw UsageError(message);
}

std::string_view strategy_name(StrategyKind s) {
  return s == StrategyKind::kFingerprint ? "fingerprint" : "random";
}

StrategyKind parse_strategy(std::string_view name) {
  if (name == "fingerprint") return StrategyKind::kFingerprint;
  if (name == "random") return StrategyKind::kRandom;
  throw UsageError("unknown strategy '" + std::string(name) + "'; expected fingerprint or random");
}

void TrialConfig::validate() const {
  try {
    validate_word_len(word_len);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  if (trials == 0) throw UsageError("trials must be at least 1");
  if (workers == 0) throw UsageError("workers must be at least 1");
  if (round_cap == 0) throw UsageError("round cap must be at least 1");
  if (experiment == Experiment::kSession && block_c && sessions < 3) {
    throw UsageError("--block-c needs at least 3 sessions");
  }
}

bool TrialRecord::success() const {
  return std::visit([](const auto& r) { return r.success; }, result);
}

std::uint64_t trial_seed(std::uint64_t base, std::size_t index) { return derive_seed(base, index); }

TrialRecord run_trial(const TrialConfig& config, std::size_t index) {
  const std::uint64_t seed = trial_seed(config.seed, index);
  TrialRecord record;
  record.trial = index;

  if (config.experiment == Experiment::kGame) {
    const GameConfig game{config.word_len, config.r1, config.r2, config.trials, config.seed};
    GameOutcome outcome;
    if (config.strategy == StrategyKind::kFingerprint) {
      outcome = attack_traceability(game, index);
    } else {
      RandomGuessStrategy strategy(derive_seed(config.seed, index, kStrategyStream));
      outcome = run_untraceability_game(strategy, game, index);
    }
    const bool within_budget = outcome.queries.execute <= config.r1 && outcome.queries.send <= config.r2;
    const bool expect_success =
        config.strategy == StrategyKind::kFingerprint && config.r1 >= 2 && config.r2 >= 1;
    record.assertions_held = within_budget && (!expect_success || outcome.success);
    record.result = outcome;
    return record;
  }

  const AttackSetup setup{config.word_len, seed, config.followups, config.round_cap};
  AttackReport report;
  bool expect_success = true;
  switch (config.experiment) {
    case Experiment::kSession:
      report = session_trial(config, seed);
      break;
    case Experiment::kVerifyIdentities:
      report = identity_trial(config, seed);
      break;
    case Experiment::kFullDisclosure:
      report = attack_full_disclosure(setup);
      break;
    case Experiment::kClone:
      report = attack_clone(setup);
      break;
    case Experiment::kDesyncMitm:
      report = attack_desync_mitm(setup);
      break;
    case Experiment::kDesyncBitflip:
      report = attack_desync_bitflip(setup);
      // A reduced round cap makes failure an expected outcome.
      expect_success = config.round_cap >= kDefaultRoundCap;
      break;
    case Experiment::kGame:
      break;
  }
  record.assertions_held =
      report.verified && report.checks_failed == 0 && (!expect_success || report.success);
  record.result = std::move(report);
  return record;
}

TrialRun run_trials(const TrialConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  TrialRun run;
  run.config = config;
  run.records.resize(config.trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < config.trials; i = next.fetch_add(1)) {
      try {
        run.records[i] = run_trial(config, i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(config.trials);
      }
    }
  };
  const std::size_t workers = std::min(config.workers, config.trials);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  run.summary = summarize(run.records);
  run.summary.experiment = std::string(experiment_name(config.experiment));
  run.summary.word_len = config.word_len;
  run.summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

SummaryStats summarize(std::span<const TrialRecord> records) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");
  SummaryStats stats;
  stats.trials = records.size();
  std::vector<std::size_t> c1;
  std::vector<std::size_t> c2;
  std::vector<GameOutcome> games;
  for (const TrialRecord& record : records) {
    if (record.success()) ++stats.successes;
    if (!record.assertions_held) ++stats.assertion_failures;
    if (const auto* game = std::get_if<GameOutcome>(&record.result)) {
      games.push_back(*game);
    } else {
      const auto& report = std::get<AttackReport>(record.result);
      c1.push_back(report.c1_rounds);
      c2.push_back(report.c2_trials);
      stats.total_c1_rounds += report.c1_rounds;
      stats.admitted_rounds += report.admitted_rounds;
      stats.anomalous_successes += report.anomalous_successes;
      stats.c2_form_mismatches += report.c2_form_mismatches;
      stats.side_effects += report.side_effects;
    }
  }
  stats.success_rate = static_cast<double>(stats.successes) / static_cast<double>(stats.trials);
  stats.wilson_95 = wilson_interval(stats.successes, stats.trials);
  stats.c1_rounds = counter_stats(std::move(c1));
  stats.c2_trials = counter_stats(std::move(c2));
  if (!games.empty()) stats.advantage = estimate_advantage(games).advantage;
  return stats;
}

}  // namespace umarfid
