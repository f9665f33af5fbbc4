"""Acceptance criteria, one test per criterion.

Each test prints a single ``CRITERION n PASS|FAIL`` line with the deciding
numbers. All checks run through :func:`dirlab.verify.verify_all`, so the
tolerances here are the ones stored in the reports, and the tests assert
them again explicitly.
"""

import json
import os
import subprocess
import sys

import pytest

from dirlab import verify as V


@pytest.fixture(scope="module")
def reports():
    reps = V.verify_all()
    return reps


@pytest.fixture(scope="module")
def by_key(reports):
    return {(r.theorem_id, r.symbol_spec): r for r in reports}


def _announce(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\nCRITERION {n} {'PASS' if ok else 'FAIL'}: {detail}")


def _reports(by_key, theorem_id):
    return {spec: r for (tid, spec), r in by_key.items() if tid == theorem_id}


def test_criterion_01_inner_product_oracle(by_key, capsys):
    r = by_key[("inner_product", "")]
    c = r.computed
    ok = c["max_abs_error_vs_area_quadrature"] < 1e-8 and c["max_monomial_norm_error"] == 0
    _announce(capsys, 1, ok, f"quadrature error {c['max_abs_error_vs_area_quadrature']:.2e}, "
                             f"<z^n,z^n> - n max {c['max_monomial_norm_error']}")
    assert ok and r.passed


def test_criterion_02_reproducing_kernel(by_key, capsys):
    r = by_key[("reproducing_kernel", "")]
    c = r.computed
    ok = (c["max_reproducing_error"] < 1e-8 and c["max_kernel_norm_error"] < 1e-8
          and c["log_only_formula_gap_minus_one"] < 1e-8 and r.notes)
    _announce(capsys, 2, ok, f"reproducing {c['max_reproducing_error']:.2e}, "
                             f"kernel norm {c['max_kernel_norm_error']:.2e}, discrepancy noted")
    assert ok and r.passed


def test_criterion_03_orthogonality_radial(by_key, capsys):
    reps = _reports(by_key, "orthogonality_radial")
    off = {s: reps[s].computed.get("gram_max_off_diagonal") for s in
           ("power:k=2", "power:k=3", "rotation:theta=1", "slit:c=0.5")}
    ok = (off["power:k=2"] < 1e-6 and off["power:k=3"] < 1e-6 and off["rotation:theta=1"] < 1e-6
          and off["slit:c=0.5"] < 1e-3)
    poly = reps["poly:0,0.5,0.5"].computed
    ok = ok and abs(poly["gram_2_1"] - 0.25) <= 1e-10 and poly["essentially_radial"] is False
    ok = ok and reps["lft:t=2"].computed["essentially_radial"] is False
    ok = ok and all(r.passed for r in reps.values())
    _announce(capsys, 3, ok, "off-diagonals " + ", ".join(f"{k} {v:.1e}" for k, v in off.items())
              + f"; poly Gram(2,1) {complex(poly['gram_2_1']).real:.12f}")
    assert ok


def test_criterion_04_change_of_variable(by_key, capsys):
    reps = _reports(by_key, "change_of_variable")
    assert set(reps) == set(V.CATALOG)
    worst = max(max(r.computed["residual_one"], r.computed["residual_abs_w_sq"]) for r in reps.values())
    ident, sq = reps["identity"].computed, reps["power:k=2"].computed
    ok = (worst < 5e-3 and abs(ident["lhs_one"] - 1) < 1e-6 and abs(ident["rhs_one"] - 1) < 1e-6
          and abs(sq["lhs_one"] - 2) < 1e-3 and abs(sq["rhs_one"] - 2) < 1e-3)
    ok = ok and all(r.passed for r in reps.values())
    _announce(capsys, 4, ok, f"worst residual {worst:.2e} over {len(reps)} symbols")
    assert ok


def test_criterion_05_norm_formula(by_key, capsys):
    reps = _reports(by_key, "full_norm_formula")
    ok = True
    parts = []
    for spec in ("mobius:p=0.5", "mobius:p=0.5|slit:c=0.5"):
        c = reps[spec].computed
        vals = [c[f"norm_N{N}_le_target"] for N in (64, 128, 256, 512)]
        ok = ok and c["ladder_nondecreasing"] and all(v <= 1.30352 for v in vals)
        ok = ok and abs(vals[-1] - 1.30352) <= 0.05 * 1.30352
        ok = ok and c["formula_at_p0"] == 1.0 and abs(c["formula_at_L1"] - 1.6180339887498949) <= 1e-12
        ok = ok and reps[spec].passed
        parts.append(f"{spec} N=512 {vals[-1]:.8f}")
    _announce(capsys, 5, ok, "; ".join(parts) + " (target 1.30352)")
    assert ok


def test_criterion_06_isometry(by_key, capsys):
    reps = _reports(by_key, "isometry_full")
    d = {s: reps[s].computed["isometry_defect"] for s in reps}
    ok = d["rotation:theta=1"] < 1e-12 and d["slit:c=0.5"] < 1e-3 and d["mobius:p=0.5"] > 0.1
    _announce(capsys, 6, ok, ", ".join(f"{k} {v:.3e}" for k, v in d.items()))
    assert ok


def test_criterion_07_restricted_norm(by_key, capsys):
    lft = by_key[("counterexample_lft", "lft:t=2")].computed
    half = by_key[("d0_norm_one", "poly:0,0.5")].computed
    ok = (abs(lft["restricted_norm"] - 1) <= 2e-2 and lft["restricted_norm"] <= 1 + 1e-9
          and abs(lft["fullness_defect"] - 0.4375) <= 1e-2
          and abs(half["restricted_norm_attains_bound"] - 0.5) <= 1e-10)
    ok = ok and by_key[("counterexample_lft", "lft:t=2")].passed and by_key[("d0_norm_one", "poly:0,0.5")].passed
    _announce(capsys, 7, ok, f"lft restricted {lft['restricted_norm']:.6f}, defect {lft['fullness_defect']:.5f}, "
                             f"z/2 restricted {half['restricted_norm_attains_bound']:.12f}")
    assert ok


def test_criterion_08_essential_norm(by_key, capsys):
    reps = _reports(by_key, "essential_norm_one")
    rot = reps["rotation:theta=1"].computed["max_profile_deviation_from_one"]
    slit = reps["slit:c=0.5"].computed["max_profile_deviation_from_one"]
    alpha = reps["mobius:p=0.5"].computed
    ok = rot <= 1e-10 and slit <= 2e-2 and alpha["s1_ge_s8_ge_s32"] and reps["mobius:p=0.5"].passed
    _announce(capsys, 8, ok, f"rotation dev {rot:.1e}, slit dev {slit:.1e}, "
                             f"automorphism s_32 {alpha['s_32_below_norm']:.10f}")
    assert ok


def test_criterion_09_counting_engine(by_key, capsys):
    reps = _reports(by_key, "counting_engine")
    assert set(reps) == set(V.CATALOG)
    snap = min(r.computed["snap_fraction"] for r in reps.values())
    gap = max(abs(r.checks[1].computed - r.checks[1].expected) for r in reps.values())
    ok = (snap >= 0.99 and reps["power:k=2"].computed["nodes_off_constant_value"] == 0
          and gap < 5e-3 and all(r.passed for r in reps.values()))
    _announce(capsys, 9, ok, f"min snap fraction {snap:.4f}, worst energy gap {gap:.2e}")
    assert ok


def test_criterion_10_determinism(reports, tmp_path, capsys):
    out = tmp_path / "verify.json"
    env = dict(os.environ, DIRLAB_THREADS="1")
    proc = subprocess.run([sys.executable, "-m", "dirlab", "verify", "--out", str(out)],
                          capture_output=True, text=True, env=env)
    assert proc.returncode in (0, 1), proc.stderr
    first = V.reports_to_json(reports) + "\n"
    second = out.read_text(encoding="utf-8")
    ok = first == second
    _announce(capsys, 10, ok, f"{len(second)} bytes of JSON, identical across runs: {ok}")
    assert ok
    assert json.loads(second)[0]["theorem_id"] == "inner_product"
