import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirlab import series as S
from dirlab import space as D
from dirlab import symbols as Y
from dirlab.errors import ContractError
from dirlab.quadrature import area_integral, dirichlet_inner_by_area, disk_grid

DEG = 16

poly = st.lists(
    st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False),
    min_size=1, max_size=DEG + 1,
).map(lambda c: S.from_coeffs(c, DEG))


def _area_inner(f, g):
    return dirichlet_inner_by_area(f, S.derivative(f), g, S.derivative(g))


def test_disk_area_quadrature():
    assert area_integral(lambda w: np.ones(w.shape)) == pytest.approx(1.0, abs=1e-14)
    # int |w|^2 dA / pi = 1/2
    assert area_integral(lambda w: np.abs(w) ** 2).real == pytest.approx(0.5, abs=1e-14)
    g = disk_grid(8, 16, r_max=0.5)
    assert g.integrate(np.ones(g.shape)).real == pytest.approx(0.25, abs=1e-14)


def test_basic_inner_products():
    one = S.constant(1.0, 4)
    assert D.inner(one, one) == 1
    z3 = S.monomial(3, 4)
    assert D.inner(z3, z3) == 3
    assert _area_inner(z3, z3) == pytest.approx(3, abs=1e-10)
    assert D.inner(S.monomial(2, 4), S.monomial(1, 4)) == 0


def test_power_cross_term():
    phi = S.from_coeffs([0, 0.5, 0.5], 8)
    phi2 = S.multiply(phi, phi)
    assert D.inner(phi2, phi) == pytest.approx(0.25, abs=1e-15)
    assert _area_inner(phi2, phi) == pytest.approx(0.25, abs=1e-10)


def test_norms():
    assert D.norm(S.constant(1.0, 3)) == 1
    assert D.norm(S.monomial(4, 6)) == pytest.approx(2.0, abs=1e-15)
    assert D.norm(D.kernel(0)) == 1


def test_inner_requires_matching_degree():
    with pytest.raises(ContractError):
        D.inner(S.monomial(1, 3), S.monomial(1, 4))


def test_kernel():
    np.testing.assert_array_equal(D.kernel(0, 5).coeffs, [1, 0, 0, 0, 0, 0])
    z2 = S.monomial(2, 32)
    assert D.inner(z2, D.kernel(0.5, 32)) == pytest.approx(0.25, abs=1e-15)
    K = D.kernel(0.6)
    assert D.inner(K, K).real == pytest.approx(1 + math.log(1 / 0.64), abs=1e-10)
    assert D.kernel_norm_sq(0.6) == pytest.approx(1.4462871026284195, abs=1e-15)


def test_kernel_refuses_points_near_the_circle():
    with pytest.raises(ContractError):
        D.kernel(1.0)
    with pytest.raises(ContractError):
        D.kernel_degree(1 - 1e-9)


def test_dilated_energy():
    f = S.from_coeffs([0, 1, 1], 2)
    assert D.seminorm_sq(f) == 3
    assert D.seminorm_sq(f, 0.5) == pytest.approx(0.25 + 2 * 0.0625)


@settings(max_examples=20, deadline=None)
@given(poly, poly)
def test_coefficients_match_area_oracle(f, g):
    scale = max(1.0, D.norm(f) * D.norm(g))
    assert abs(D.inner(f, g) - _area_inner(f, g)) < 1e-8 * scale


@settings(max_examples=40, deadline=None)
@given(poly, poly, st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False))
def test_hermitian_and_cauchy_schwarz(f, g, c):
    assert D.inner(f, g) == pytest.approx(np.conj(D.inner(g, f)), abs=1e-9)
    assert abs(D.inner(f, g)) <= D.norm(f) * D.norm(g) * (1 + 1e-12) + 1e-12
    lhs = D.inner(f * c + g, f)
    rhs = c * D.inner(f, f) + D.inner(g, f)
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(poly, st.floats(0, 0.7), st.floats(0, 2 * math.pi))
def test_reproducing_property(f, r, t):
    w = r * complex(math.cos(t), math.sin(t))
    f128 = f.pad(128)
    assert abs(D.inner(f128, D.kernel(w, 128)) - f128(w)) < 1e-8 * max(1.0, D.norm(f))


def test_gram_examples():
    G = D.gram_powers(Y.monomial(2), size=6, N=64)
    np.testing.assert_array_equal(np.diag(G.entries).real, 2 * np.arange(1, 7))
    assert G.max_off_diagonal() == 0
    R = D.gram_powers(Y.rotation(0.7), size=5, N=16)
    np.testing.assert_allclose(np.diag(R.entries).real, np.arange(1, 6), atol=1e-14)
    assert R.max_off_diagonal() < 1e-15
    P = D.gram_powers(Y.polynomial([0, 0.5, 0.5]), size=3, N=16)
    assert P[2, 1] == pytest.approx(0.25, abs=1e-15)
    np.testing.assert_allclose(P.entries, P.entries.conj().T, atol=0)


def test_gram_unsafe_powers_flagged():
    G = D.gram_powers(Y.monomial(3), size=4, N=9)
    assert G.unsafe_powers == (4,)


def test_gram_csv_layout():
    text = D.gram_powers(Y.monomial(2), size=2, N=8).to_csv()
    assert text == "n,1,2\n1,2+0j,0+0j\n2,0+0j,4+0j\n"


def test_counting_gram_matches_series_gram():
    from dirlab.counting import area_field

    sym = Y.polynomial([0, 0.5, 0.5])
    fld = area_field(sym, 48, 128)
    Gs = D.gram_powers(sym, size=3, N=16)
    Gc = D.gram_powers(sym, size=3, method="counting", field_=fld)
    np.testing.assert_allclose(Gc.entries, Gs.entries, atol=5e-3)
