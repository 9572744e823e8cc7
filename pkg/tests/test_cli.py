import json
import subprocess
import sys
from pathlib import Path

import pytest

from padic_lattes.cli import main

GOLDEN = Path(__file__).parent / "golden" / "verify_all.json"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_newton_example(capsys):
    code, out = run(capsys, "newton", "--prime", "2", "--poly", "4+4*t")
    assert code == 0
    assert json.loads(out)["spectrum"] == [{"valuation": "0", "multiplicity": 1}]


@pytest.mark.parametrize("argv", [
    ["newton", "--prime", "2", "--poly", "0"],
    ["newton", "--prime", "4", "--poly", "t"],
    ["newton", "--prime", "2", "--poly", "t^^2"],
    ["orbit", "--family", "legendre", "--lambda", "1", "--seed", "2"],
    ["orbit", "--family", "general", "--lambda", "1", "--seed", "2"],
    ["torsion", "--seed", "1", "--level", "6"],
    ["classify", "--alpha", "1"],
])
def test_error_exit_codes(capsys, argv):
    assert main(argv) == 2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["newton", "--prime"])
    assert exc.value.code == 2


def test_orbit_examples(capsys):
    code, out = run(capsys, "orbit", "--family", "legendre", "--lambda", "4", "--seed", "2")
    rec = json.loads(out)
    assert code == 0 and rec["status_text"] == "PreperiodicTail(2,1)"
    assert rec["points"] == ["2", "0", "inf"]
    code, out = run(capsys, "orbit", "--family", "weierstrass", "--lambda", "-1", "--seed", "1")
    assert json.loads(out)["status_text"] == "HitFixed(inf,1)"


def test_orbit_lambda_one_seed_two_is_never_preperiodic_tail(capsys):
    # 1 = 2^3 / 8, so the orbit of 2 lands on the fixed point 0 at once
    code, out = run(capsys, "orbit", "--lambda", "1", "--seed", "2", "--max-steps", "50")
    assert json.loads(out)["status"]["kind"] != "PreperiodicTail"
    code, out = run(capsys, "orbit", "--lambda", "1", "--seed", "3", "--max-steps", "50")
    assert json.loads(out)["status"]["kind"] == "EscapeCertified"


def test_level_cap_override(capsys, monkeypatch):
    monkeypatch.setenv("PADIC_LATTES_LEVEL_CAP", "2")
    assert main(["torsion", "--seed", "1", "--level", "3"]) == 2
    capsys.readouterr()
    code, out = run(capsys, "torsion", "--seed", "1", "--level", "3", "--level-cap", "3")
    assert code == 0 and json.loads(out)["degrees"] == [21, 21]


def test_classify_and_intersect(capsys):
    code, out = run(capsys, "classify", "--v-alpha", "0", "--v-lambda=-3/2")
    assert json.loads(out)["class"] == "HitsInfinity(1)"
    code, out = run(capsys, "intersect", "--a", "1", "--b", "-2", "--level", "3")
    rep = json.loads(out)
    assert code == 0 and rep["gcds"]["BA"] == "t + 1" and rep["common_parameters"] == ["-1"]


def test_verify_csv(capsys, tmp_path):
    target = tmp_path / "local.csv"
    assert main(["verify", "--suite", "local", "--format", "csv", "--output", str(target)]) == 0
    lines = target.read_text().splitlines()
    assert lines[0] == "family,check,inputs,expected,actual,pass"
    assert all(line.endswith(",true") for line in lines[1:])


def test_verify_trichotomy_report_order(capsys):
    code, out = run(capsys, "verify", "--suite", "trichotomy")
    rep = json.loads(out)
    keys = [(r["family"], r["check"], json.dumps(r["inputs"], sort_keys=True)) for r in rep["records"]]
    assert keys == sorted(keys)
    assert code == 0 and rep["summary"]["failures"] == 0
    assert "wall_time" in rep["summary"]


def strip_wall_time(text: str) -> dict:
    rep = json.loads(text)
    rep["summary"].pop("wall_time", None)
    return rep


def test_verify_all_matches_golden(tmp_path):
    out = tmp_path / "all.json"
    proc = subprocess.run(
        [sys.executable, "-m", "padic_lattes.cli", "verify", "--suite", "all", "--output", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert strip_wall_time(out.read_text()) == strip_wall_time(GOLDEN.read_text())
    again = tmp_path / "again.json"
    main(["verify", "--suite", "all", "--omit-wall-time", "--output", str(again)])
    assert again.read_bytes() == GOLDEN.read_bytes()
