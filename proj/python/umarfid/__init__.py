# Copyright 2026 The umarfid Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""UMA-RFID protocol simulator and attack harness.

Words are lowercase hex strings; a word of L bits has L/4 digits.
"""

import json

from ._umarfid import (
    experiment_names,
    hamming_weight,
    messages,
    next_pair,
    recover_key,
    rot,
    rotate_left,
    run_trials_jsonl,
    weight_two_count,
)

__all__ = [
    "experiment_names",
    "hamming_weight",
    "messages",
    "next_pair",
    "recover_key",
    "rot",
    "rotate_left",
    "run_trials",
    "weight_two_count",
]


def run_trials(experiment, **options):
    """Runs an experiment and returns (records, summary) as plain dicts.

    Options mirror the CLI: bits, trials, seed, workers, r1, r2, strategy,
    followups, round_cap, sessions, block_c.
    """
    lines = run_trials_jsonl(experiment, **options).splitlines()
    records = [json.loads(line) for line in lines[:-1]]
    summary = json.loads(lines[-1])["summary"]
    return records, summary
