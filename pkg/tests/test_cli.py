import json
import subprocess
import sys

import pytest

from dirlab.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gram_csv(capsys):
    code, out, _ = _run(capsys, "gram", "--symbol", "power:k=2", "--size", "6")
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()]
    assert rows[0] == ["n", "1", "2", "3", "4", "5", "6"]
    for i, row in enumerate(rows[1:], start=1):
        for j, cell in enumerate(row[1:], start=1):
            value = complex(cell)
            assert value == (2 * i if i == j else 0)


def test_norm_json_ladder(capsys):
    code, out, _ = _run(capsys, "norm", "--symbol", "mobius:p=0.5", "--trunc", "64,128,256")
    assert code == 0
    doc = json.loads(out)
    assert doc["formula_target"] == pytest.approx(1.30352, abs=5e-6)
    assert doc["nondecreasing"] is True
    assert [r["truncation"] for r in doc["ladder"]] == [64, 128, 256]
    assert all(r["value"] <= doc["formula_target"] + 1e-9 for r in doc["ladder"])


def test_verify_counterexample(capsys):
    code, out, err = _run(capsys, "verify", "--theorem", "counterexample_lft", "--symbol", "lft:t=2")
    assert code == 0
    (rep,) = json.loads(out)
    assert rep["passed"] is True
    assert rep["computed"]["restricted_norm"] == pytest.approx(1, abs=2e-2)
    assert rep["computed"]["fullness_defect"] == pytest.approx(0.4375, abs=1e-2)
    assert rep["expected"]["fullness_defect"]["provenance"] == "DERIVED"
    assert "PASS counterexample_lft" in err


def test_verify_failure_exit_code(capsys):
    # z^2 is not univalent and its norm sqrt(2) exceeds the formula value 1
    code, out, err = _run(capsys, "verify", "--theorem", "full_norm_formula", "--symbol", "power:k=2")
    assert code == 1
    assert json.loads(out)[0]["passed"] is False and "FAIL" in err
    code, out, _ = _run(capsys, "covcheck", "--symbol", "lft:t=2", "--tol", "1e-12", "--grid", "16x32")
    assert code == 1
    assert json.loads(out)["passed"] is False


def test_report_key_order(capsys):
    _, out, _ = _run(capsys, "verify", "--theorem", "inner_product")
    (rep,) = json.loads(out)
    assert list(rep) == ["theorem_id", "symbol_spec", "passed", "computed", "expected",
                         "tolerances", "relations", "check_passed", "notes", "error"]


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["gram", "--nope"],
        ["gram"],
        ["gram", "--symbol", "foo:x=1"],
        ["gram", "--symbol", "poly:0,2"],
        ["counting", "--symbol", "identity", "--grid", "12"],
        ["verify", "--theorem", "not_a_theorem"],
        ["verify", "--symbol", "identity"],
        ["essnorm", "--symbol", "identity", "--trunc", "16", "--nmax", "16"],
        [],
    ],
)
def test_usage_and_numerical_errors_exit_2(capsys, argv):
    code, out, err = _run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err


def test_show_config(capsys):
    code, out, _ = _run(capsys, "--show-config")
    assert code == 0
    cfg = json.loads(out)
    assert cfg["seed"] == 20240601 and cfg["truncation_ladder"] == [64, 128, 256, 512]


def test_deterministic_outputs(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert run(["essnorm", "--symbol", "mobius:p=0.5", "--trunc", "64", "--nmax", "8",
                    "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().startswith("n,s_n\n")
    assert capsys.readouterr().out == ""


def test_counting_and_radialtest(capsys):
    code, out, _ = _run(capsys, "counting", "--symbol", "power:k=2", "--grid", "8x16", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["snap_fraction"] == 1 and doc["shape"] == [8, 16]
    code, out, _ = _run(capsys, "radialtest", "--symbol", "lft:t=2", "--grid", "16x64")
    doc = json.loads(out)
    assert code == 0 and doc["radial"] is False
    code, out, _ = _run(capsys, "radialtest", "--symbol", "power:k=3", "--format", "csv")
    assert out.startswith("k,r,re,im\n")


def test_defect_and_covcheck(capsys):
    code, out, _ = _run(capsys, "defect", "--symbol", "lft:t=2")
    assert code == 0 and json.loads(out)["fullness_defect"] == pytest.approx(0.4375, abs=1e-2)
    code, out, _ = _run(capsys, "covcheck", "--symbol", "power:k=2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "f,lhs,rhs,residual" and len(lines) == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dirlab", "gram", "--symbol", "rotation:theta=0",
                           "--size", "2", "--trunc", "4"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "n,1,2\n1,1+0j,0+0j\n2,0+0j,2+0j\n"
