import csv
import io
import json
import subprocess
import sys

import pytest

from cyclorep.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_eval_prints_value(capsys):
    assert run(capsys, "eval", "5", "1", "1") == (0, "5\n", "")


def test_area_text(capsys):
    code, out, _ = run(capsys, "area", "--n", "4")
    assert code == 0 and out.splitlines()[0] == "3.1415926536 ± 1e-10"


def test_congruence_verdicts(capsys):
    code, doc = run_json(capsys, "congruence", "--n", "9", "--mod", "9")
    assert code == 0 and set(doc["result"]["attained"]) <= {0, 1, 3} and doc["result"]["verdict"] == "PASS"
    code, doc = run_json(capsys, "congruence", "--n", "10", "--mod", "7")
    assert code == 0 and doc["result"]["verdict"] == "NO CLAIM"


SCHEMA_CASES = [
    ("form", "12"),
    ("eval", "12", "2", "1"),
    ("represented", "--n", "4", "--limit", "25", "--height2"),
    ("count", "--d", "4", "--limit", "10000"),
    ("constants", "--d", "4"),
    ("area", "--n", "12"),
    ("congruence", "--n", "8", "--mod", "4"),
    ("confinement-classes", "--d", "4", "--m", "7"),
    ("common", "--n1", "3", "--n2", "6", "--limit", "100"),
    ("common-lattice", "--B", "1"),
    ("automorphisms", "--n", "8"),
    ("containment", "--n", "101", "--epsilon", "0.5", "--grid", "8"),
]


@pytest.mark.parametrize("argv", SCHEMA_CASES, ids=lambda a: a[0])
def test_json_schema(capsys, argv):
    code, doc = run_json(capsys, *argv)
    assert code == 0
    assert list(doc) == ["command", "inputs", "result", "error_bound", "elapsed_ms"]
    assert doc["command"] == argv[0] and doc["elapsed_ms"] is None


@pytest.mark.parametrize("argv", SCHEMA_CASES, ids=lambda a: a[0])
def test_csv_has_header(capsys, argv):
    code, out, _ = run(capsys, *argv, "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) >= 2 and all(len(r) == len(rows[0]) for r in rows)


@pytest.mark.parametrize("argv", SCHEMA_CASES, ids=lambda a: a[0])
def test_deterministic(capsys, argv):
    for fmt in ("json", "csv", "text"):
        first = run(capsys, *argv, "--format", fmt)
        assert run(capsys, *argv, "--format", fmt) == first


def test_values(capsys):
    _, doc = run_json(capsys, "represented", "--n", "4", "--limit", "25", "--height2")
    assert doc["result"]["members"] == [4, 5, 8, 9, 10, 13, 16, 17, 18, 20, 25]
    _, doc = run_json(capsys, "count", "--d", "4", "--limit", "1000000")
    assert doc["result"]["count"] == 2061
    _, doc = run_json(capsys, "constants", "--d", "4")
    assert [c["w"] for c in doc["result"]["contributions"]] == ["1/4", "1/8", "1/8"]
    _, doc = run_json(capsys, "confinement-classes", "--d", "4", "--m", "7")
    assert (doc["result"]["D"], doc["result"]["a0"], doc["result"]["b0"]) == (20, 5, 17)
    _, doc = run_json(capsys, "common-lattice", "--B", "1")
    assert doc["result"]["quadruples"] == 33
    _, doc = run_json(capsys, "automorphisms", "--n", "8")
    assert doc["result"]["kind"] == "D4" and doc["result"]["w_n"] == "1/8"
    _, doc = run_json(capsys, "area", "--n", "4")
    assert abs(doc["result"]["value"] - 3.141592653589793) <= doc["error_bound"] + 1e-15


def test_timing_flag(capsys):
    _, doc = run_json(capsys, "eval", "3", "1", "1", "--timing")
    assert doc["elapsed_ms"] >= 0


def test_containment_exit_codes(capsys):
    code, out, _ = run(capsys, "containment", "--n", "4", "--epsilon", "0.5")
    assert code == 0 and "reported only" in out
    code, _, _ = run(capsys, "containment", "--n", "4", "--epsilon", "0.5", "--assert-from", "3")
    assert code == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["area"],
        ["frobnicate"],
        ["area", "--n", "4", "--bogus"],
        ["eval", "x", "1", "1"],
        ["area", "--n", "2"],
        ["congruence", "--n", "5", "--mod", "1000"],
        ["count", "--d", "4", "--limit", "1000000", "--memory-cap", "10"],
        ["confinement-classes", "--d", "4", "--m", "11"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err


def test_config_file(capsys, tmp_path, monkeypatch):
    p = tmp_path / "c.conf"
    p.write_text("format = json\n")
    monkeypatch.setenv("CYCLOREP_CONFIG", str(p))
    code, out, _ = run(capsys, "eval", "4", "3", "4")
    assert code == 0 and json.loads(out)["result"]["value"] == 25
    p.write_text("format = yaml\n")
    assert run(capsys, "eval", "4", "3", "4")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cyclorep", "eval", "5", "1", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "5\n"


def test_progress_goes_to_stderr(capsys):
    code, out, err = run(capsys, "count", "--d", "4", "--limit", "1000", "-v", "--format", "json")
    assert code == 0 and json.loads(out) and "sieving" in err


@pytest.mark.slow
def test_verify_all_fast(capsys):
    code, out, err = run(capsys, "verify-all", "--fast")
    assert code == 0
    assert out.splitlines()[-1].endswith("checks passed")
    assert "[PASS]" in err and "[FAIL]" not in err
