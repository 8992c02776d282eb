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

import json
import os
import pathlib

import pytest

import mutrb

ROOT = pathlib.Path(os.environ.get("MUTRB_SOURCE_DIR", pathlib.Path(__file__).parents[2]))
SORTING = ROOT / "corpus" / "sorting"
BUBBLE = SORTING / "bubble.mini"
SUITE = SORTING / "tests"


def test_records_formula():
    records = [("copy", True)] * 3 + [("delete", False)] * 7
    report = mutrb.mutrb_from_records(records)
    assert report["unique_mutants"] == 10
    assert report["pooled_mutrb"] == pytest.approx(0.3)


def test_original_is_neutral():
    outcome, first_failure, cases = mutrb.evaluate(str(BUBBLE), str(SUITE))
    assert outcome == "neutral"
    assert first_failure == ""
    assert cases == 10


def test_mutate_is_deterministic():
    src = "a := 1;\nb := 2;\nprint a;\n"
    assert mutrb.mutate(src, "delete", 5) == mutrb.mutate(src, "delete", 5)
    desc, text = mutrb.mutate(src, "delete", 5)
    assert desc.startswith("delete(")
    assert text.count(";") == 2


def test_estimate_and_exhaustive_agree_roughly():
    exact = mutrb.exhaustive_mutrb(BUBBLE, SUITE)["pooled_mutrb"]
    est = mutrb.estimate_mutrb(BUBBLE, SUITE, seed=3, per_op_samples=100)
    assert abs(est["pooled_mutrb"] - exact) <= max(est["ci95"], 0.1)


def test_parse_error_maps_to_python():
    with pytest.raises(mutrb.ParseError):
        mutrb.canonical_key("x := ;")
    assert issubclass(mutrb.ParseError, mutrb.MutrbError)


def test_walk_and_seed():
    walk = mutrb.neutral_walk(BUBBLE, SUITE, population=3, steps=2, seed=1)
    assert [s["step"] for s in walk["series"]] == [0, 1, 2]
    seeded = mutrb.seed_defects(BUBBLE, SUITE, 1, seed=4)
    assert len(seeded["defects"]) == 1


def test_run_command_writes_valid_report(tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    out = tmp_path / "m.json"
    code, stdout, stderr = mutrb.run_command(
        "measure", target=BUBBLE, suite=SUITE, seed=2, per_op_samples=10, output=out)
    assert code == 0, stderr
    assert stdout.startswith("measure:")
    report = json.loads(out.read_text())
    schema = json.loads((ROOT / "docs" / "schema" / "robustness.schema.json").read_text())
    jsonschema.validate(report, schema)


def test_run_command_config_error():
    code, _, stderr = mutrb.run_command("measure", target=BUBBLE, suite=SUITE, seed=1,
                                        per_op_samples=0)
    assert code == 2
    assert "per_op_samples" in stderr


@pytest.mark.parametrize("command,schema,settings", [
    ("exhaustive", "robustness", {}),
    ("coverage", "coverage", {}),
    ("walk", "walk", {"walk__population": 3, "walk__steps": 2, "walk__robustness_samples": 3}),
    ("seed-bugs", "seeded", {"repair__n_defects": 1}),
    ("repair", "repair", {"repair__n_defects": 1, "repair__mode": "exhaustive-first-order"}),
    ("sweep", "sweep", {"sweep__n_values": "1,2", "repair__n_variants": 20}),
])
def test_reports_match_schemas(tmp_path, command, schema, settings):
    jsonschema = pytest.importorskip("jsonschema")
    out = tmp_path / "r.json"
    code, _, stderr = mutrb.run_command(command, target=BUBBLE, suite=SUITE, seed=3,
                                        output=out, **settings)
    assert code == 0, stderr
    spec = json.loads((ROOT / "docs" / "schema" / f"{schema}.schema.json").read_text())
    jsonschema.validate(json.loads(out.read_text()), spec)
