import cmath
import math

import numpy as np
import pytest

from dirlab import operators as O
from dirlab import space as D
from dirlab import symbols as Y
from dirlab.errors import ContractError, ConvergenceError

# Dense-SVD values, frozen at truncations N = 64, 128, 256, 512.
ALPHA_HALF_NORMS = [1.3035159552185691, 1.303515955218569, 1.303515955218569, 1.303515955218569]
LFT2_D0_NORMS = [0.9868424988498249, 0.9932359560778241, 0.9965552697406503, 0.9982562656632236]
# s_1, s_8, s_32 of the automorphism with p = 0.5 at N = 256
ALPHA_HALF_PROFILE = [1.1347607996629867, 1.0000012273523693, 1.0000000000000007]

UNIVALENT = ["identity", "rotation:theta=1", "mobius:p=0.5", "mobius:p=0.3-0.4j", "lft:t=2",
             "slit:c=0.5", "mobius:p=0.5|slit:c=0.5", "poly:0,0.5", "poly:0.2,0.3"]


def _svd_top(A):
    return np.linalg.svd(A, compute_uv=False)[0]


def test_rotation_matrix_is_diagonal():
    th = 0.7
    M = O.build_matrix(Y.rotation(th), 16).entries
    np.testing.assert_allclose(M, np.diag([cmath.exp(1j * j * th) for j in range(17)]), atol=1e-14)


def test_half_dilation_matrix():
    M = O.build_matrix(Y.polynomial([0, 0.5]), 12).entries
    np.testing.assert_allclose(M, np.diag(0.5 ** np.arange(13)), atol=0)


def test_square_matrix_columns():
    N = 20
    M = O.build_matrix(Y.monomial(2), N).entries
    for j in range(1, N + 1):
        col = np.zeros(N + 1)
        if 2 * j <= N:
            col[2 * j] = math.sqrt(2)
        np.testing.assert_allclose(M[:, j], col, atol=1e-14)


def test_zero_symbol_rejected():
    with pytest.raises(ContractError):
        O.build_matrix(Y.polynomial([0]), 8)


def test_power_iteration_matches_svd():
    rng = np.random.default_rng(5)
    A = rng.standard_normal((40, 30)) + 1j * rng.standard_normal((40, 30))
    s, v, _, res = O.largest_singular_value(A)
    assert s == pytest.approx(_svd_top(A), rel=1e-12)
    assert np.linalg.norm(A @ v) == pytest.approx(s, rel=1e-10)
    assert res < 1e-10


def test_power_iteration_reports_nonconvergence():
    rng = np.random.default_rng(1)
    A = rng.standard_normal((200, 200))
    with pytest.raises(ConvergenceError) as exc:
        O.largest_singular_value(A, tol=1e-15, max_iter=3, window=2)
    assert exc.value.vector is not None and exc.value.iterations >= 3


def test_known_norms():
    assert O.operator_norm(O.build_matrix(Y.rotation(1.0), 64)).value == pytest.approx(1, abs=1e-14)
    assert O.operator_norm(O.build_matrix(Y.monomial(2), 64)).value == pytest.approx(math.sqrt(2), abs=1e-12)
    assert O.restricted_norm_D0(O.build_matrix(Y.identity(), 32)).value == pytest.approx(1, abs=1e-14)
    assert O.restricted_norm_D0(O.build_matrix(Y.polynomial([0, 0.5]), 32)).value == pytest.approx(0.5, abs=1e-12)


def test_restricted_norm_needs_fixed_origin():
    with pytest.raises(ContractError):
        O.restricted_norm_D0(O.build_matrix(Y.automorphism(0.5), 16))


def test_norm_formula_values():
    assert O.norm_formula(0) == 1.0
    assert O.norm_formula(0.5) == pytest.approx(1.30352, abs=5e-6)
    p = math.sqrt(1 - math.exp(-1))
    assert O.norm_formula(p) == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-12)
    with pytest.raises(ContractError):
        O.norm_formula(1.0)


def test_d0_bound_reduces_to_rho():
    assert O.d0_norm_bound(1.0) == 1.0
    assert O.d0_norm_bound(0.75) == pytest.approx(0.75, abs=1e-15)
    assert O.d0_norm_bound(0.5) == pytest.approx(0.5, abs=1e-15)


def test_automorphism_ladder_frozen():
    ladder = O.norm_ladder(Y.automorphism(0.5))
    np.testing.assert_allclose([r.value for r in ladder], ALPHA_HALF_NORMS, rtol=0, atol=1e-12)
    assert all(r.lower_bound for r in ladder)


def test_lft_restricted_ladder_frozen():
    ladder = O.norm_ladder(Y.boundary_fixed_lft(2), restricted=True)
    vals = [r.value for r in ladder]
    np.testing.assert_allclose(vals, LFT2_D0_NORMS, rtol=0, atol=1e-10)
    assert vals == sorted(vals) and vals[-1] <= 1


@pytest.mark.parametrize("spec", UNIVALENT)
def test_upper_bound_law_for_univalent_symbols(spec):
    sym = Y.parse_symbol(spec)
    bound = O.norm_formula(abs(sym.value_at_zero))
    vals = [O.operator_norm(O.build_matrix(sym, N)).value for N in (64, 128, 256)]
    assert all(v <= bound + 1e-9 for v in vals)
    assert all(b >= a - 1e-12 * a for a, b in zip(vals, vals[1:]))


def test_essential_profile_matches_svd():
    M = O.build_matrix(Y.automorphism(0.5), 256)
    prof = O.essential_norm_profile(M, 32)
    np.testing.assert_allclose([prof[0], prof[7], prof[31]], ALPHA_HALF_PROFILE, rtol=0, atol=1e-12)
    for n in (3, 17):
        assert prof[n - 1] == pytest.approx(_svd_top(M.entries[:, n:]), abs=1e-12)


@pytest.mark.parametrize("spec", ["rotation:theta=1", "power:k=2", "mobius:p=0.5", "lft:t=2",
                                  "slit:c=0.5", "poly:0,0.5,0.5"])
def test_essential_profile_nonincreasing(spec):
    prof = O.essential_norm_profile(O.build_matrix(Y.parse_symbol(spec), 128), 32)
    assert all(b <= a + 1e-10 for a, b in zip(prof, prof[1:]))


def test_essential_profile_guard():
    with pytest.raises(ContractError):
        O.essential_norm_profile(O.build_matrix(Y.identity(), 16), 16)


def test_isometry_defect():
    assert O.isometry_defect(O.build_matrix(Y.rotation(2.0), 64), 32) < 1e-12
    assert O.isometry_defect(O.build_matrix(Y.automorphism(0.5), 64), 8) > 0.1
    with pytest.raises(ContractError):
        O.isometry_defect(O.build_matrix(Y.identity(), 16), 9)


def test_gram_operator_consistency():
    sym = Y.polynomial([0, 0.5, 0.5])
    N = 64
    M = O.build_matrix(sym, N).entries
    G = D.gram_powers(sym, size=6, N=N)
    for n in range(1, 7):
        for m in range(1, 7):
            val = math.sqrt(n * m) * np.vdot(M[:, m], M[:, n])
            assert val == pytest.approx(G[n, m], abs=1e-10)


def test_norm_report_json():
    rep = O.operator_norm(O.build_matrix(Y.rotation(0.0), 8))
    assert list(rep.as_dict()) == ["value", "truncation", "lower_bound", "iterations", "residual"]
    assert '"truncation": 8' in rep.to_json()
