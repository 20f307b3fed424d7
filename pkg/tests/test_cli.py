import json
import subprocess
import sys

import pytest

from hypergroups import parse_hgt
from hypergroups.cli import main
from hypergroups.enumeration import are_isomorphic, canonical_form

from conftest import DATA


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", str(DATA / "k2.hgt"))
    assert code == 0 and "order 2" in out


def test_validate_missing_cell(capsys, tmp_path):
    p = tmp_path / "bad.hgt"
    p.write_text("hypergroup v1\norder 2\n0 0 : 0\n0 1 : 1\n1 0 : 1\n")
    code, _, err = run(capsys, "validate", str(p))
    assert code == 2 and "missing cell (1, 1)" in err


def test_validate_associativity_witness(capsys, tmp_path):
    text = (DATA / "w3.hgt").read_text().replace("2 2 : 0 1", "2 2 : 0")
    p = tmp_path / "w3bad.hgt"
    p.write_text(text)
    code, _, err = run(capsys, "validate", str(p))
    assert code == 2 and "AssociativityViolation witness=(" in err


def test_validate_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "validate", str(tmp_path / "nope.hgt"))
    assert code == 1


def test_analyze_w3(capsys):
    code, out, _ = run(capsys, "analyze", "--json", str(DATA / "w3.hgt"))
    rep = json.loads(out)
    assert code == 0
    assert rep["report_version"] == 1
    assert rep["weakly_nilpotent"] and rep["nilpotency_class"] == 2
    assert rep["valency"] == 4 and rep["solvable"]
    assert rep["upper_center_series"] == [[0], [0, 1], [0, 1, 2]]
    assert rep["thin_residue"] == [0, 1]
    assert rep["theorem_checks"]["failures"] == []
    assert rep["primes"][0] == {"p": 2, "sylow": [[0, 1, 2]], "p_valenced": True, "o_p": [0, 1, 2]}


def test_analyze_k2(capsys):
    code, out, _ = run(capsys, "analyze", "--json", str(DATA / "k2.hgt"))
    rep = json.loads(out)
    assert code == 0
    assert rep["commutative"] and not rep["rt"] and not rep["weakly_nilpotent"]
    assert rep["primes"] == []


def test_analyze_t1_text(capsys):
    code, out, _ = run(capsys, "analyze", str(DATA / "t1.hgt"))
    assert code == 0
    assert "order:               1" in out
    assert "weakly nilpotent:    yes (class 0)" in out


def test_analyze_primes_on_non_rt(capsys):
    code, _, err = run(capsys, "analyze", "--primes", "2", str(DATA / "k2.hgt"))
    assert code == 3


def test_analyze_membership_reading(capsys):
    code, out, _ = run(capsys, "analyze", "--json", "--primes", "3", "--pvalenced-reading", "membership", str(DATA / "w3.hgt"))
    rep = json.loads(out)
    assert rep["p_valenced_reading"] == "membership"
    assert rep["primes"][0]["p_valenced"] is True


def test_analyze_is_deterministic(capsys):
    outs = {run(capsys, "analyze", "--json", str(DATA / f))[1] for f in ("s3.hgt", "s3.hgt")}
    assert len(outs) == 1


def test_quotient_w3(capsys, C2):
    code, out, _ = run(capsys, "quotient", str(DATA / "w3.hgt"), "--by", "0,1")
    assert code == 0
    assert "# class 1: 2" in out
    assert are_isomorphic(parse_hgt(out), C2)


def test_quotient_by_identity_echoes(capsys, W3):
    code, out, _ = run(capsys, "quotient", str(DATA / "w3.hgt"), "--by", "0")
    assert code == 0 and canonical_form(parse_hgt(out)) == canonical_form(W3)


def test_quotient_not_closed(capsys):
    code, _, err = run(capsys, "quotient", str(DATA / "w3.hgt"), "--by", "0,2")
    assert code == 2 and "NotClosed" in err


def test_enumerate_and_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "enumerate", "--order", "2", "--out", str(tmp_path))
    assert code == 0 and "2 classes" in out
    for n in (1, 3):
        run(capsys, "enumerate", "--order", str(n), "--out", str(tmp_path))
    code, out, _ = run(capsys, "verify", "--catalog", str(tmp_path), "--json")
    summary = json.loads(out)
    assert code == 0 and summary["hypergroups"] == 13 and summary["total_failures"] == 0
    code, out, _ = run(capsys, "verify", "--catalog", str(tmp_path), "--theorem", "closed-subsets-wn,quotients-wn")
    assert code == 0 and "closed-subsets-wn" in out and "sylow" not in out


def test_enumerate_budget_exit(capsys, tmp_path):
    code, _, err = run(capsys, "enumerate", "--order", "5", "--out", str(tmp_path))
    assert code == 4


def test_env_budget(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("HG_BUDGET_SECS", "0.01")
    code, _, _ = run(capsys, "enumerate", "--order", "5", "--out", str(tmp_path))
    assert code == 4


def test_search_writes_outcome(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--question", "q56", "--max-order", "2", "--out", str(tmp_path))
    assert code == 0 and "finding" in out
    assert (tmp_path / "q56_order2.json").exists() and (tmp_path / "q56_order2.hgt").exists()


@pytest.mark.parametrize("workers", ["1", "2"])
def test_enumerate_workers_byte_identical(capsys, tmp_path, workers):
    ref = tmp_path / "ref"
    out = tmp_path / workers
    run(capsys, "enumerate", "--order", "4", "--out", str(ref))
    run(capsys, "enumerate", "--order", "4", "--out", str(out), "--workers", workers)
    for p in sorted(ref.iterdir()):
        assert p.read_bytes() == (out / p.name).read_bytes()


def test_entry_point_module():
    res = subprocess.run(
        [sys.executable, "-m", "hypergroups", "validate", str(DATA / "w3.hgt")], capture_output=True, text=True
    )
    assert res.returncode == 0 and "order 3" in res.stdout
