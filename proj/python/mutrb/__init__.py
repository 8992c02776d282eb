# Copyright 2026 The mutrb Authors
#
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
"""Mutational robustness experiments on mini-language programs."""

import json as _json

from . import _core
from ._core import (
    ConfigError,
    ExperimentError,
    MutationError,
    MutrbError,
    OriginalFailsError,
    ParseError,
    canonical_key,
    evaluate,
    lower,
    mutate,
)

__all__ = [
    "ConfigError",
    "ExperimentError",
    "MutationError",
    "MutrbError",
    "OriginalFailsError",
    "ParseError",
    "canonical_key",
    "estimate_mutrb",
    "evaluate",
    "exhaustive_mutrb",
    "lower",
    "mutate",
    "mutrb_from_records",
    "neutral_walk",
    "run_command",
    "seed_defects",
]


def mutrb_from_records(records):
    """MutRB over (operator, neutral) pairs of already-deduplicated mutants."""
    return _json.loads(_core.mutrb_from_records(list(records)))


def estimate_mutrb(target, suite, *, seed, per_op_samples=200, comparator="exact", jobs=1):
    return _json.loads(
        _core.estimate_mutrb(str(target), str(suite), per_op_samples, comparator, seed, jobs)
    )


def exhaustive_mutrb(target, suite, *, comparator="exact", jobs=1):
    return _json.loads(_core.exhaustive_mutrb(str(target), str(suite), comparator, jobs))


def neutral_walk(target, suite, *, population, steps, seed, size_cap=False, jobs=1):
    return _json.loads(
        _core.neutral_walk(str(target), str(suite), population, steps, size_cap, seed, jobs)
    )


def seed_defects(target, suite, n, *, seed, jobs=1):
    return _json.loads(_core.seed_defects(str(target), str(suite), n, seed, jobs))


def run_command(command, **settings):
    """Runs a CLI subcommand in-process.

    Keyword names are config keys with dots written as double underscores
    (``walk__population=5``). Returns ``(exit_code, stdout, stderr)``.
    """
    pairs = [(k.replace("__", "."), str(v).lower() if isinstance(v, bool) else str(v))
             for k, v in settings.items()]
    return _core.run_command(command, pairs)
