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

// umarfid: run protocol scenarios and attacks as reproducible experiments.
//
//   umarfid session [--sessions N] [--block-c] [--script PATH]
//   umarfid game [--strategy fingerprint|random] [--r1 N] [--r2 N]
//   umarfid attack <traceability|full-disclosure|clone|desync-mitm|desync-bitflip>
//   umarfid verify-identities
//
// Common flags: --bits L --trials N --seed S --format text|json-lines|csv
// --out PATH --workers W. Exit status is 0 iff every trial-level assertion
// held.

#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "umarfid/adversary.hpp"
#include "umarfid/harness.hpp"
#include "umarfid/transcript_io.hpp"

namespace {

using umarfid::Experiment;

struct CommonOptions {
  std::size_t bits = umarfid::kDefaultWordBits;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string out;
  std::size_t workers = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--bits", opts.bits, "Word length L in bits")->capture_default_str();
  cmd->add_option("--trials", opts.trials, "Number of trials")->capture_default_str();
  cmd->add_option("--seed", opts.seed, "Base seed")->capture_default_str();
  cmd->add_option("--format", opts.format, "text, json-lines or csv")->capture_default_str();
  cmd->add_option("--out", opts.out, "Write records to PATH instead of stdout");
  cmd->add_option("--workers", opts.workers, "Worker threads")->capture_default_str();
}

int run_script(const CommonOptions& opts, const std::string& path, std::size_t sessions,
               std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw umarfid::UsageError("cannot open script " + path);
  umarfid::validate_word_len(opts.bits);
  umarfid::ScriptedChannel script = umarfid::ScriptedChannel::load(in, opts.bits);
  umarfid::Environment env(opts.bits, umarfid::trial_seed(opts.seed, 0));
  out << "# session direction message word disposition [replacement]\n";
  for (std::uint64_t s = 0; s < sessions; ++s) {
    umarfid::write_transcript(out, env.oracle().relay(0, s, script));
  }
  out << "# synchronized " << (env.synchronized(0) ? 1 : 0) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UMA-RFID protocol simulator and attack harness"};
  app.require_subcommand(1);

  CommonOptions common;
  umarfid::TrialConfig config;
  std::string script;
  std::string strategy = "fingerprint";
  std::string attack_name;

  CLI::App* session = app.add_subcommand("session", "Honest sessions with invariant checks");
  add_common(session, common);
  session->add_option("--sessions", config.sessions, "Sessions per trial")->capture_default_str();
  session->add_flag("--block-c", config.block_c, "Block C in session 1 and check recovery");
  session->add_option("--script", script, "Replay a scenario script and print transcripts");

  CLI::App* game = app.add_subcommand("game", "Untraceability game");
  add_common(game, common);
  game->add_option("--strategy", strategy, "fingerprint or random")->capture_default_str();
  game->add_option("--r1", config.r1, "Execute budget")->capture_default_str();
  game->add_option("--r2", config.r2, "Send budget")->capture_default_str();

  CLI::App* attack = app.add_subcommand("attack", "Run one of the attacks");
  add_common(attack, common);
  attack
      ->add_option("name", attack_name,
                   "traceability, full-disclosure, clone, desync-mitm or desync-bitflip")
      ->required();
  attack->add_option("--followups", config.followups, "Honest sessions after a desync")
      ->capture_default_str();
  attack->add_option("--round-cap", config.round_cap, "C1 rounds for desync-bitflip")
      ->capture_default_str();
  attack->add_option("--strategy", strategy, "Game strategy for traceability")
      ->capture_default_str();
  attack->add_option("--r1", config.r1, "Execute budget for traceability")->capture_default_str();
  attack->add_option("--r2", config.r2, "Send budget for traceability")->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify-identities", "Check protocol algebra");
  add_common(verify, common);

  CLI11_PARSE(app, argc, argv);

  try {
    std::ofstream file;
    if (!common.out.empty()) {
      file.open(common.out);
      if (!file) throw umarfid::UsageError("cannot open " + common.out);
    }
    std::ostream& out = common.out.empty() ? std::cout : file;

    if (session->parsed()) {
      if (!script.empty()) return run_script(common, script, config.sessions, out);
      config.experiment = Experiment::kSession;
    } else if (game->parsed()) {
      config.experiment = Experiment::kGame;
    } else if (verify->parsed()) {
      config.experiment = Experiment::kVerifyIdentities;
    } else if (attack_name == "traceability") {
      config.experiment = Experiment::kGame;
    } else {
      config.experiment = umarfid::parse_experiment(attack_name);
      if (config.experiment == Experiment::kSession || config.experiment == Experiment::kGame ||
          config.experiment == Experiment::kVerifyIdentities) {
        throw umarfid::UsageError("'" + attack_name + "' is not an attack");
      }
    }
    config.strategy = umarfid::parse_strategy(strategy);
    config.word_len = common.bits;
    config.trials = common.trials;
    config.seed = common.seed;
    config.workers = common.workers;
    const umarfid::OutputFormat format = umarfid::parse_format(common.format);

    const umarfid::TrialRun run = umarfid::run_trials(config);
    umarfid::write_run(out, run, format);
    std::cerr << run.summary.experiment << ": " << run.summary.successes << "/"
              << run.summary.trials << " successes, " << run.summary.assertion_failures
              << " assertion failures, " << run.summary.wall_seconds << " s\n";
    return run.all_assertions_held() ? 0 : 1;
  } catch (const umarfid::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
