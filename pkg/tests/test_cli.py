import json

import pytest
from flint import fmpq

from qcasimir.cli import main, run
from qcasimir.qscalar import parse_rational, parse_scalar
from qcasimir.qscalar import QContext
from qcasimir.rmatrix import build_standard, dump_rmatrix


def _rows(report, **match):
    return [r for r in report["rows"] if all(r["params"].get(k) == v or r.get(k) == v
                                             for k, v in match.items())]


def test_spectrum_command():
    status, report = run(["casimir-spectrum", "--preset", "standard", "--n", "2", "--q", "2",
                          "--k", "3", "--expr", "trL"])
    assert status == 0
    (row,) = _rows(report, **{"lambda": "(2,1)"})
    assert row["values"]["eigenvalue"] == "17/128"
    assert set(row["values"]) >= {"expr", "lambda", "tableau_count", "eigenvalue", "closed_form", "match"}


def test_perturbed_file_fails(tmp_path):
    doc = dump_rmatrix(build_standard(2, QContext(fmpq(7, 5))))
    doc["entries"][1]["value"] = "1/3"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    status, report = run(["validate-r", "--file", str(path), "--q", "7/5"])
    assert status == 1
    assert report["rows"][0]["values"]["braid_residual"] != "0"


def test_exit_codes(tmp_path, capsys):
    assert main(["validate-r", "--file", str(tmp_path / "missing.json")]) == 2
    assert main(["check", "--q", "1"]) == 2
    assert main(["check", "--q", "abc"]) == 2
    assert main(["cutjoin", "--delta", "1,2"]) == 2
    assert main(["casimir-spectrum", "--k", "1", "--expr", "z:1"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["check", "--suite", "nope"])
    assert exc.value.code == 2
    (tmp_path / "junk.json").write_text("{")
    assert main(["rank", "--file", str(tmp_path / "junk.json")]) == 2


def test_check_is_deterministic_and_round_trips(tmp_path):
    argv = ["check", "--suite", "spectrum", "--suite", "conjecture10", "--q", "2", "--q", "13/7",
            "--max-k", "3"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    for row in report["rows"]:
        for key in ("eigenvalue", "closed_form", "operator", "conjectured", "printed", "shift"):
            v = row["values"].get(key)
            if v is not None:
                assert str(parse_rational(v)) == v
        for key in ("printed_form", "shift_form"):
            v = row["values"].get(key)
            if v is not None:
                assert str(parse_scalar(v)) == v


def test_informational_rows_do_not_gate():
    status, report = run(["check", "--suite", "spectrum", "--suite", "conjecture10", "--q", "2",
                          "--max-k", "2"])
    assert status == 0
    s = report["summary"]
    assert s["DISCREPANCY"] > 0 and s["EVIDENCE"] > 0 and s["FAIL"] == 0
    (empty,) = [r for r in report["rows"]
                if r["check"] == "hat-trL-printed" and r["params"]["lambda"] == "()"]
    assert empty["values"]["shift"] == "0" and empty["values"]["printed"] == "1/32"


def test_cutjoin_command():
    status, report = run(["cutjoin", "--delta", "2", "--k", "2", "--spectrum", "2", "--q", "2"])
    assert status == 0
    checks = [r["check"] for r in report["rows"]]
    assert checks == ["normal-order", "identity", "spectrum"]
    assert report["rows"][2]["values"]["eigenvalue"] == "5/2048"


def test_cutjoin_unanchored():
    status, report = run(["cutjoin", "--delta", "2,1", "--q", "2"])
    assert status == 0
    assert report["rows"][0]["status"] == "UNANCHORED"


def test_rank_and_idempotents_commands():
    status, report = run(["rank", "--n", "3", "--q", "2"])
    assert status == 0 and report["rows"][0]["values"]["hilbert"] == [1, 3, 3, 1]
    status, report = run(["idempotents", "--k", "3"])
    assert status == 0 and len(report["rows"]) == 6


def test_text_summary_and_stdout(capsys):
    assert main(["validate-r", "--q", "2"]) == 0
    out, err = capsys.readouterr()
    assert json.loads(out)["summary"]["PASS"] == 1
    assert err.strip().endswith("evidence mismatches 0")
