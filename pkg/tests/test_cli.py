from __future__ import annotations

import json
import subprocess
import sys

import pytest

from gdrazin import GenSpec, Matrix, drazin_inverse, generate, verify_drazin_axioms
from gdrazin import harness
from gdrazin.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main
from gdrazin.harness import THEOREM_IDS, replay, run_fuzz, run_suite
from util import M


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def _mat_file(tmp_path, m, name="a.json"):
    return _write(tmp_path, name, m.dumps())


def _strip_timing(report: dict) -> dict:
    out = json.loads(json.dumps(report))
    for r in out.get("reports", [out]):
        r.pop("elapsed_ms")
    return out


def test_compute_roundtrip(tmp_path):
    a = M([2, 1, 0], [0, 0, 1], [0, 0, 0])
    out = tmp_path / "out.json"
    assert main(["compute", "--input", _mat_file(tmp_path, a), "--output", str(out)]) == EXIT_OK
    rec = json.loads(out.read_text())
    a_d = Matrix.from_json_obj(rec["a_d"])
    assert verify_drazin_axioms(a, a_d).ok
    r = drazin_inverse(a)
    assert a_d == r.a_d and rec["index"] == r.index == 2
    assert Matrix.from_json_obj(rec["a_pi"]) == r.a_pi


def test_compute_examples(tmp_path, capsys):
    assert main(["compute", "--input", _mat_file(tmp_path, M([0, 1], [0, 0]))]) == EXIT_OK
    rec = json.loads(capsys.readouterr().out)
    assert rec["a_d"]["entries"] == [["0", "0"], ["0", "0"]] and rec["index"] == 2
    assert main(["compute", "--input", _mat_file(tmp_path, M([2, 0], [0, 3]))]) == EXIT_OK
    rec = json.loads(capsys.readouterr().out)
    assert rec["a_d"]["entries"] == [["1/2", "0"], ["0", "1/3"]]


def test_compute_errors(tmp_path, capsys):
    bad = _write(tmp_path, "bad.json", {"rows": 1, "cols": 1, "entries": [["1//2"]]})
    assert main(["compute", "--input", bad]) == EXIT_USAGE
    err = capsys.readouterr().err
    assert "position 2" in err
    rect = _mat_file(tmp_path, M([1, 2, 3]))
    assert main(["compute", "--input", rect]) == EXIT_USAGE
    assert "square" in capsys.readouterr().err
    assert main(["compute", "--input", str(tmp_path / "missing.json")]) == EXIT_USAGE


def test_decompose_examples(tmp_path, capsys):
    d = _mat_file(tmp_path, M([2, 0], [0, 0]))
    assert main(["decompose", "--form", "euw", "--input", d]) == EXIT_OK
    rec = json.loads(capsys.readouterr().out)
    assert rec["e"]["entries"] == [["1", "0"], ["0", "0"]]
    assert rec["u"]["entries"] == [["2", "0"], ["0", "1"]]
    assert rec["w"]["entries"] == [["0", "0"], ["0", "0"]]
    assert all(rec["checks"].values())

    z = _mat_file(tmp_path, M([0, 0], [0, 0]), "z.json")
    assert main(["decompose", "--form", "two-units", "--input", z]) == EXIT_OK
    rec = json.loads(capsys.readouterr().out)
    assert rec["u1"]["entries"] == [["-1", "0"], ["0", "-1"]]
    assert rec["u2"]["entries"] == [["1", "0"], ["0", "1"]]

    assert main(["decompose", "--form", "splitting", "--input", d]) == EXIT_OK
    rec = json.loads(capsys.readouterr().out)
    assert [m["entries"] for m in rec["basis_P"]] == [[["1"], ["0"]]]
    assert [m["entries"] for m in rec["basis_Q"]] == [[["0"], ["1"]]]
    assert rec["restriction_P"]["entries"] == [["2"]] and rec["restriction_Q"]["entries"] == [["0"]]

    for form in ("quasipolar", "corner", "scaler"):
        assert main(["decompose", "--form", form, "--input", d]) == EXIT_OK
        assert all(json.loads(capsys.readouterr().out)["checks"].values())


def test_decompose_errors(tmp_path):
    assert main(["decompose", "--form", "euw", "--input", str(tmp_path / "nope.json")]) == EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        main(["decompose", "--form", "bogus", "--input", "x"])
    assert info.value.code == EXIT_USAGE


def test_verify_examples(tmp_path):
    rep = tmp_path / "r.json"
    assert main(["verify", "--theorem", "lem3.1", "--size", "3", "--trials", "50", "--seed", "7",
                 "--report", str(rep)]) == EXIT_OK
    r = json.loads(rep.read_text())
    assert r["passes"] == 50 and r["failures"] == []
    assert main(["verify", "--theorem", "thm3.3", "--size", "2", "--trials", "100", "--seed", "1",
                 "--report", str(rep)]) == EXIT_OK


def test_verify_unknown_theorem(capsys):
    assert main(["verify", "--theorem", "thm9.9"]) == EXIT_USAGE
    err = capsys.readouterr().err
    assert all(tid in err for tid in THEOREM_IDS)


def test_verify_bad_flags(capsys):
    assert main(["verify", "--theorem", "cline", "--trials", "0"]) == EXIT_USAGE
    assert main(["verify", "--theorem", "cline", "--size", "0"]) == EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        main(["verify", "--theorem", "cline", "--size", "two"])
    assert info.value.code == EXIT_USAGE


def _broken_check(inst):
    return {"planted failure": inst["a"].n_rows < 3}


def test_verify_failure_exit_and_dump(tmp_path, monkeypatch):
    suite = harness._SUITES["cline"]
    monkeypatch.setitem(harness._SUITES, "cline", harness._Suite(suite.kind, suite.make, _broken_check))
    rep = tmp_path / "r.json"
    code = main(["verify", "--theorem", "cline", "--size", "3", "--trials", "4", "--seed", "3", "--report", str(rep)])
    assert code == EXIT_FAILURE
    r = json.loads(rep.read_text())
    assert r["passes"] + len(r["failures"]) == r["trials"] == 4
    f = r["failures"][0]
    assert f["failed"] == ["planted failure"]
    assert f["gen_spec"]["seed"] == f["trial_seed"]
    # the dump replays to the same failure
    assert replay("cline", f) == ["planted failure"]


def test_failure_dump_regenerates_from_spec(monkeypatch):
    suite = harness._SUITES["thm3.3"]
    monkeypatch.setitem(harness._SUITES, "thm3.3", harness._Suite(suite.kind, suite.make, _broken_check))
    rep = run_suite("thm3.3", 3, 5, [3])
    assert len(rep.failures) == 3
    for f in rep.failures:
        regenerated = generate(GenSpec(**f["gen_spec"]))
        assert {k: m.to_json_obj() for k, m in regenerated.items()} == f["instance"]


def test_exceptions_become_failures(monkeypatch):
    def boom(inst):
        raise RuntimeError("kaput")

    monkeypatch.setitem(harness._SUITES, "cline", harness._Suite("drazin_structured", harness._make_cline, boom))
    rep = run_suite("cline", 2, 0, [2])
    assert rep.passes == 0 and rep.failures[0]["failed"] == ["error: RuntimeError: kaput"]


def test_fuzz_deterministic(tmp_path):
    r1, r2 = tmp_path / "a.json", tmp_path / "b.json"
    args = ["fuzz", "--trials", "3", "--seed", "42", "--sizes", "2,3"]
    assert main(args + ["--report", str(r1)]) == EXIT_OK
    assert main(args + ["--report", str(r2)]) == EXIT_OK
    a, b = json.loads(r1.read_text()), json.loads(r2.read_text())
    assert len(a["reports"]) == 18
    assert [r["theorem_id"] for r in a["reports"]] == list(THEOREM_IDS)
    assert _strip_timing(a) == _strip_timing(b)


def test_fuzz_errors(tmp_path):
    assert main(["fuzz", "--trials", "1", "--report", str(tmp_path / "no" / "such" / "dir.json")]) == EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        main(["fuzz", "--sizes", "2,x"])
    assert info.value.code == EXIT_USAGE
    assert main(["fuzz", "--sizes", "0"]) == EXIT_USAGE


def test_run_fuzz_api_sizes_cycle():
    reports = run_fuzz(2, 9, [1, 2])
    assert all(r.ok for r in reports)


def test_module_entry_point(tmp_path):
    a = _mat_file(tmp_path, M([2, 1], [0, 0]))
    out = subprocess.run([sys.executable, "-m", "gdrazin", "compute", "--input", a],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["a_d"]["entries"] == [["1/2", "1/4"], ["0", "0"]]
    out = subprocess.run([sys.executable, "-m", "gdrazin"], capture_output=True, text=True)
    assert out.returncode == EXIT_USAGE
