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

import pytest

import umarfid


def test_word_operations():
    assert umarfid.hamming_weight("c5") == 4
    assert umarfid.rotate_left("b1", 2) == "c6"
    assert umarfid.rot("c5", "c5") == "5c"


def test_worked_session():
    assert umarfid.messages("c5", "36") == ("f3", "3f", "f3")
    assert umarfid.next_pair("c5", "36") == ("a6", "6a")
    assert umarfid.recover_key("f3", "3f", "a6") == "6a"


def test_weight_two_count():
    assert umarfid.weight_two_count(128) == 8128
    assert umarfid.weight_two_count(16) == 120


def test_run_trials_clone():
    records, summary = umarfid.run_trials("clone", bits=32, trials=5, seed=1)
    assert len(records) == 5
    assert all(r["success"] for r in records)
    assert summary["successes"] == 5
    assert summary["assertion_failures"] == 0


def test_run_trials_game():
    _, summary = umarfid.run_trials("game", bits=32, trials=20)
    assert summary["advantage"] == 0.5


def test_run_trials_is_reproducible():
    first = umarfid.run_trials("desync-bitflip", bits=16, trials=4, seed=7)
    second = umarfid.run_trials("desync-bitflip", bits=16, trials=4, seed=7, workers=2)
    assert first == second


def test_errors():
    assert "desync-mitm" in umarfid.experiment_names()
    with pytest.raises(ValueError):
        umarfid.run_trials("teleport")
    with pytest.raises(ValueError):
        umarfid.rot("c5", "c5c5")
    with pytest.raises(ValueError):
        umarfid.hamming_weight("zz")
