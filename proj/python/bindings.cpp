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

// Words cross the boundary as lowercase hex strings; the word length is
// four bits per digit.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <utility>

#include "umarfid/harness.hpp"

namespace py = pybind11;

namespace {

using umarfid::Word;

Word parse(const std::string& hex) { return Word::from_hex(hex.size() * 4, hex); }

void same_length(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) throw std::invalid_argument("words must have the same length");
}

std::string run_trials_jsonl(const std::string& experiment, std::size_t bits, std::size_t trials,
                             std::uint64_t seed, std::size_t workers, std::size_t r1,
                             std::size_t r2, const std::string& strategy, std::size_t followups,
                             std::size_t round_cap, std::size_t sessions, bool block_c) {
  umarfid::TrialConfig config;
  config.experiment = umarfid::parse_experiment(experiment);
  config.word_len = bits;
  config.trials = trials;
  config.seed = seed;
  config.workers = workers;
  config.r1 = r1;
  config.r2 = r2;
  config.strategy = umarfid::parse_strategy(strategy);
  config.followups = followups;
  config.round_cap = round_cap;
  config.sessions = sessions;
  config.block_c = block_c;
  umarfid::TrialRun run;
  {
    py::gil_scoped_release release;
    run = umarfid::run_trials(config);
  }
  std::ostringstream out;
  umarfid::write_run(out, run, umarfid::OutputFormat::kJsonLines);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_umarfid, m) {
  m.doc() = "UMA-RFID protocol simulator and attack harness";

  m.def("hamming_weight", [](const std::string& a) { return parse(a).hamming_weight(); },
        py::arg("a"));
  m.def("rotate_left",
        [](const std::string& a, std::size_t n) { return umarfid::rotate_left(parse(a), n).to_hex(); },
        py::arg("a"), py::arg("n"));
  m.def(
      "rot",
      [](const std::string& a, const std::string& b) {
        same_length(a, b);
        return umarfid::rot(parse(a), parse(b)).to_hex();
      },
      py::arg("a"), py::arg("b"), "Rotate a left by hw(b).");

  m.def(
      "messages",
      [](const std::string& key, const std::string& nonce) {
        same_length(key, nonce);
        const Word k = parse(key);
        const Word n = parse(nonce);
        return py::make_tuple(umarfid::compute_a(k, n).to_hex(), umarfid::compute_b(k, n).to_hex(),
                              umarfid::compute_c(k, n).to_hex());
      },
      py::arg("key"), py::arg("nonce"), "(A, B, C) for one session.");
  m.def(
      "next_pair",
      [](const std::string& key, const std::string& nonce) {
        same_length(key, nonce);
        const Word k = parse(key);
        const umarfid::PairState next =
            umarfid::next_pair(umarfid::PairState{Word::zeros(k.bits()), k}, parse(nonce));
        return std::make_pair(next.idt.to_hex(), next.key.to_hex());
      },
      py::arg("key"), py::arg("nonce"), "(IDT', K') after a session on (key, nonce).");
  m.def(
      "recover_key",
      [](const std::string& a, const std::string& b, const std::string& idt_next) {
        same_length(a, b);
        same_length(a, idt_next);
        return umarfid::recover_key(parse(a), parse(b), parse(idt_next)).to_hex();
      },
      py::arg("a"), py::arg("b"), py::arg("idt_next"));
  m.def("weight_two_count", &umarfid::weight_two_count, py::arg("bits"));

  m.def("experiment_names", [] {
    std::vector<std::string> names;
    for (std::string_view n : umarfid::experiment_names()) names.emplace_back(n);
    return names;
  });
  m.def("run_trials_jsonl", &run_trials_jsonl, py::arg("experiment"), py::arg("bits") = 128,
        py::arg("trials") = 100, py::arg("seed") = 0, py::arg("workers") = 1, py::arg("r1") = 2,
        py::arg("r2") = 1, py::arg("strategy") = "fingerprint", py::arg("followups") = 3,
        py::arg("round_cap") = 64, py::arg("sessions") = 8, py::arg("block_c") = false);
}
