import csv
import io
import json
import os
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from latticealg.cli import export, main, run, to_csv

ROOT = Path(__file__).resolve().parents[1]
SCENARIOS = ROOT / "scenarios"
GOLDEN = Path(__file__).resolve().parent / "golden"
EXPECTED = json.loads((GOLDEN / "exit_codes.json").read_text())


def invoke(capsys, *argv):
    rc = main([str(a) for a in argv])
    out = capsys.readouterr()
    return rc, out.out, out.err


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_golden_reports_and_exit_codes(capsys, name):
    rc, out, _ = invoke(capsys, EXPECTED[name]["task"], SCENARIOS / f"{name}.json")
    assert rc == EXPECTED[name]["exit"]
    assert out == (GOLDEN / f"{name}.json").read_text()


def test_verify_axioms_lists_all_three(capsys):
    rc, out, _ = invoke(capsys, "verify-axioms", SCENARIOS / "fixture_a_verify_axioms.json")
    report = json.loads(out)
    assert rc == 0
    assert {c["invariant"]: c["ok"] for c in report["checks"]} == {"directed_family": True, "i": True, "ii": True, "iii": True}


def test_corrupted_thread_names_the_pair(capsys):
    rc, out, _ = invoke(capsys, "thread-check", SCENARIOS / "fixture_a_thread_corrupted.json")
    report = json.loads(out)
    assert rc == 1 and report["failed"] == ["thread"]
    witness = report["checks"][1]["witness"]
    assert {"s", "t"} <= set(witness) and [0, 1] in (witness["s"], witness["t"])


def test_missing_file(capsys, tmp_path):
    rc, out, err = invoke(capsys, "choquet", tmp_path / "absent.json")
    assert rc == 2 and out == "" and "cannot read" in err


def test_malformed_json_reports_position(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"universe": {"q": 2,\n  "sites" 4}}')
    rc, _, err = invoke(capsys, "choquet", bad)
    assert rc == 2 and f"{bad}:2:11:" in err


def _scenario(tmp_path, data):
    p = tmp_path / "s.json"
    p.write_text(json.dumps(data))
    return p


def test_schema_violations_are_input_errors(capsys, tmp_path):
    base = json.loads((SCENARIOS / "fixture_b_choquet_simplex.json").read_text())
    missing = dict(base, params={})
    rc, _, err = invoke(capsys, "choquet", _scenario(tmp_path, missing))
    assert rc == 2 and "state" in err
    decimal = dict(base, params={"state": ["0.25", "0.25", "0.25", "0.25"]})
    assert invoke(capsys, "choquet", _scenario(tmp_path, decimal))[0] == 2
    assert invoke(capsys, "dlr-check", SCENARIOS / "fixture_b_choquet_simplex.json")[0] == 2
    wrong_dim = dict(base, params={"state": ["1/2", "1/2"]})
    assert invoke(capsys, "choquet", _scenario(tmp_path, wrong_dim))[0] == 2
    bad_core = json.loads(json.dumps(base))
    bad_core["universe"]["boundary_core"] = [0, 1, 2, 3, 4]
    assert invoke(capsys, "choquet", _scenario(tmp_path, bad_core))[0] == 2
    assert invoke(capsys, "not-a-task", SCENARIOS / "fixture_b_choquet_simplex.json")[0] == 2


def test_state_outside_the_polytope_fails_membership(capsys, tmp_path):
    base = json.loads((SCENARIOS / "fixture_b_choquet_square.json").read_text())
    base["params"]["state"] = ["1", "0", "0", "0"]
    rc, out, _ = invoke(capsys, "choquet", _scenario(tmp_path, base))
    assert rc == 1 and json.loads(out)["failed"] == ["membership"]


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "latticealg.cli", "stationary", str(SCENARIOS / "fixture_b_stationary.json")]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first


def test_choquet_csv_weights_sum_to_one(capsys):
    rc, out, _ = invoke(capsys, "choquet", SCENARIOS / "fixture_b_choquet_square.json", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rc == 0 and list(rows[0]) == ["vertex_id", "weight_num", "weight_den"]
    assert sum(Fraction(int(r["weight_num"]), int(r["weight_den"])) for r in rows) == 1


def test_stationary_csv_has_one_row_per_level_set(capsys):
    rc, out, _ = invoke(capsys, "stationary", SCENARIOS / "fixture_b_stationary.json", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rc == 0 and len(rows) == 3
    assert [r["size"] for r in rows] == ["1", "2", "1"]


def test_empty_report_gives_header_only_csv():
    assert to_csv({}) == "invariant,ok\n"
    assert to_csv({"decomposition": []}) == "vertex_id,weight_num,weight_den\n"
    assert to_csv({"level_sets": []}).count("\n") == 1


def test_out_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    rc, out, _ = invoke(capsys, "verify-axioms", SCENARIOS / "fixture_a_verify_axioms.json", "--out", target)
    assert rc == 0 and out == ""
    assert target.read_text() == (GOLDEN / "fixture_a_verify_axioms.json").read_text()


def test_unwritable_out_path(capsys, tmp_path):
    target = tmp_path / "missing-dir" / "report.json"
    rc, _, err = invoke(capsys, "verify-axioms", SCENARIOS / "fixture_a_verify_axioms.json", "--out", target)
    assert rc == 2 and "cannot write" in err


def test_json_export_is_the_report_verbatim():
    report = run("choquet", str(SCENARIOS / "fixture_b_choquet_simplex.json"))
    assert json.loads(export(report, "json")) == report
