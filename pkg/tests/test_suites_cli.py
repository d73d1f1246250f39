from __future__ import annotations

import json
import re

import pytest

from twistlab import cli
from twistlab.suites import SUITES, Outcome, compare, failures, run_checks, run_suite


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("s5")


def test_report_schema_and_order():
    report = run_suite("cochains")
    doc = report.to_json()
    assert set(doc) == {"suite", "fingerprint", "passed", "checks", "total_ms"}
    names = [c["name"] for c in doc["checks"]]
    assert names == sorted(names)
    assert all({"name", "status", "ms"} <= set(c) for c in doc["checks"])
    assert doc["fingerprint"]["bit_order"] == "a1-msb"
    assert report.dumps(timings=False) == run_suite("cochains").dumps(timings=False)


def test_octonion_suite_has_seven_square_checks():
    report = run_suite("octonions")
    squares = [c for c in report.checks if re.fullmatch(r"e_(\d)\.e_\1 = -e_0", c.name)]
    assert report.passed and len(squares) == 7


def test_s1_suite():
    report = run_suite("s1")
    assert report.passed
    assert any("1 = x0.x0 - x1.x1" in c.name for c in report.checks)


def test_failures_are_reported_with_residuals():
    report = run_checks("demo", {}, [
        ("ok", lambda: Outcome(True)),
        ("bad", lambda: compare(2, 3)),
        ("many", lambda: failures([str(i) for i in range(8)])),
        ("boom", lambda: 1 / 0),
    ])
    assert not report.passed
    by_name = {c.name: c for c in report.checks}
    assert by_name["bad"].residual == "-1"
    assert by_name["many"].residual.endswith("(+3 more)")
    assert by_name["boom"].residual.startswith("ZeroDivisionError")
    text = report.to_text()
    assert text.startswith("suite demo: FAIL") and "[fail] bad" in text


# -- command line ------------------------------------------------------------

def run(capsys, *argv):
    rc = cli.main(list(argv))
    return rc, capsys.readouterr().out


def test_verify_json_is_deterministic(capsys):
    rc, first = run(capsys, "verify", "--suite", "octonions", "--format", "json", "--no-timings")
    _, second = run(capsys, "verify", "--suite", "octonions", "--format", "json", "--no-timings")
    assert rc == 0 and first == second
    doc = json.loads(first)
    assert doc["suite"] == "octonions" and doc["passed"]
    assert "ms" not in doc["checks"][0]


def test_verify_text(capsys):
    rc, out = run(capsys, "verify", "--suite", "cochains")
    assert rc == 0 and "cochains" in out


def test_verify_unknown_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--suite", "nope"])
    assert exc.value.code == 2
    assert "nope" not in SUITES


def test_table_json(capsys):
    rc, out = run(capsys, "table", "--algebra", "octonion", "--format", "json")
    doc = json.loads(out)
    assert rc == 0 and doc["alternative"] and not doc["associative"]
    assert doc["table"][1][1] == {"sign": -1, "index": 0}
    assert doc["table"][0] == [{"sign": 1, "index": b} for b in range(8)]
    assert doc["basis"][1] == "e001"


def test_table_quaternion_text(capsys):
    rc, out = run(capsys, "table", "--algebra", "quaternion")
    assert rc == 0
    assert "associative: yes" in out and "alternative: yes" in out


def test_structure_constants_idempotent(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("TWISTLAB_CACHE", str(tmp_path / "cache"))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["structure-constants", "--out", str(a)]) == 0
    assert cli.main(["structure-constants", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["n"] == 3 and len(doc["entries"]) == 343


def test_structure_constants_text(capsys):
    rc, out = run(capsys, "structure-constants", "--n", "2", "--format", "text")
    assert rc == 0 and len(out.splitlines()) == 27


def test_podles_cli(capsys):
    rc, out = run(capsys, "podles", "--max-degree", "3", "--find-nonassoc")
    doc = json.loads(out)
    assert rc == 0 and doc["found"]
    assert doc["witness"]["triple"] == ["x3", "x3", "xp"]
    rc, out = run(capsys, "podles", "--max-degree", "3", "--find-nonassoc", "--trivial")
    assert rc == 0 and not json.loads(out)["found"]
    assert cli.main(["podles", "--max-degree", "2", "--find-nonassoc"]) == 2
    assert cli.main(["podles"]) == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0
    assert "twistlab" in capsys.readouterr().out
