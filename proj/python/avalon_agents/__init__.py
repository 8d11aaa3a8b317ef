# Copyright 2026 The Avalon Agents Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Avalon engine and agent framework."""

import json

from . import _avalon
from ._avalon import AvalonError, ConfigError, ReplayMismatch, validate_log

__all__ = [
    "AvalonError",
    "ConfigError",
    "ReplayMismatch",
    "compute_metrics",
    "config_digest",
    "parse_log",
    "play_rule_bot_game",
    "replay",
    "run_series",
    "validate_log",
]


def play_rule_bot_game(seed):
    return _avalon.play_rule_bot_game(seed)


def parse_log(text):
    """Events of a JSONL game log."""
    return [json.loads(line) for line in text.splitlines() if line]


def run_series(config=None, out_dir=None):
    """Metrics dict of a series run with `config` (dict)."""
    out = None if out_dir is None else str(out_dir)
    return json.loads(_avalon.run_series(json.dumps(config or {}), out))


def compute_metrics(games):
    return json.loads(_avalon.compute_metrics(list(games)))


def replay(game, exchange_log):
    return _avalon.replay(game, str(exchange_log))


def config_digest(config=None):
    return _avalon.config_digest(json.dumps(config or {}))
