"""Hilbert-space structure of the Dirichlet space.

In coefficient form the norm ``|f(0)|^2 + int |f'|^2 dA`` polarizes to

    <f, g> = a_0 conj(b_0) + sum_{k>=1} k a_k conj(b_k),

so the monomials ``e_0 = 1`` and ``e_k = z^k / sqrt(k)`` form an orthonormal
basis. Production code always uses this formula; the area integral in
:mod:`dirlab.quadrature` exists to check it.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import series as S
from .config import DEFAULTS
from .errors import ContractError
from .series import TruncatedSeries


def _weights(degree: int) -> np.ndarray:
    w = np.arange(degree + 1, dtype=float)
    w[0] = 1.0
    return w


def inner(f: TruncatedSeries, g: TruncatedSeries) -> complex:
    """Dirichlet inner product of two series of equal degree."""
    if f.degree != g.degree:
        raise ContractError(f"degree mismatch: {f.degree} vs {g.degree}")
    return complex(np.sum(_weights(f.degree) * f.coeffs * np.conj(g.coeffs)))


def norm(f: TruncatedSeries) -> float:
    return math.sqrt(max(inner(f, f).real, 0.0))


def seminorm_sq(f: TruncatedSeries, radius: float = 1.0) -> float:
    """``int |f'|^2 dA``, the Dirichlet energy (drops the constant term).

    With ``radius < 1`` this is the energy of the dilation ``z -> f(radius z)``.
    """
    k = np.arange(f.degree + 1)
    return float(np.sum(k * np.abs(f.coeffs) ** 2 * radius ** (2 * k)))


def kernel_degree(w: complex, tol: float = DEFAULTS.kernel_tail_tol) -> int:
    """Smallest ``N`` with ``|w|^(N+1) / (N+1) < tol``."""
    r = abs(w)
    if r >= 1:
        raise ContractError(f"kernel point must lie in the open disk, got |w| = {r}")
    if r == 0:
        return 0
    N = 0
    while r ** (N + 1) / (N + 1) >= tol:
        N += 1
        if N > DEFAULTS.kernel_max_degree:
            raise ContractError(
                f"|w| = {r:.6g} needs more than {DEFAULTS.kernel_max_degree} kernel "
                "coefficients for the requested tail; move w away from the circle"
            )
    return N


def kernel(w: complex, N: int | None = None) -> TruncatedSeries:
    """Reproducing kernel ``K_w(z) = 1 + log(1 / (1 - conj(w) z))``.

    Coefficients are ``1`` and ``conj(w)^k / k``. With ``N`` omitted the
    truncation is picked by :func:`kernel_degree`.
    """
    if abs(w) >= 1:
        raise ContractError(f"kernel point must lie in the open disk, got |w| = {abs(w)}")
    if N is None:
        N = kernel_degree(w)
    k = np.arange(1, N + 1)
    c = np.empty(N + 1, dtype=complex)
    c[0] = 1.0
    c[1:] = np.conj(w) ** k / k
    return TruncatedSeries(c)


def kernel_norm_sq(w: complex) -> float:
    """``||K_w||^2 = K_w(w) = 1 + log(1 / (1 - |w|^2))``."""
    return 1.0 + math.log(1.0 / (1.0 - abs(w) ** 2))


def format_complex(z: complex) -> str:
    """Stable text form ``re+imj`` used in CSV output."""
    z = complex(z)
    # adding 0.0 turns -0.0 into 0.0
    return f"{z.real + 0.0:.17g}{z.imag + 0.0:+.17g}j"


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """Entries ``<phi^n, phi^m>`` for powers ``n, m = 1 .. size``."""

    entries: np.ndarray
    truncation: int
    method: str = "series"
    unsafe_powers: tuple = field(default_factory=tuple)

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, nm):
        """1-based power indices, matching the ``<phi^n, phi^m>`` notation."""
        n, m = nm
        return self.entries[n - 1, m - 1]

    def max_off_diagonal(self) -> float:
        off = self.entries - np.diag(np.diag(self.entries))
        return float(np.max(np.abs(off))) if self.size > 1 else 0.0

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(["n"] + [str(m) for m in range(1, self.size + 1)]) + "\n")
        for n in range(self.size):
            row = [str(n + 1)] + [format_complex(v) for v in self.entries[n]]
            buf.write(",".join(row) + "\n")
        return buf.getvalue()


def _hermitian_from_upper(fn, size):
    G = np.zeros((size, size), dtype=complex)
    for n in range(size):
        for m in range(n, size):
            G[n, m] = fn(n + 1, m + 1)
            G[m, n] = np.conj(G[n, m])
        G[n, n] = G[n, n].real
    return G


def gram_powers(symbol, size: int = DEFAULTS.gram_size, N: int = DEFAULTS.gram_truncation,
                method: str = "series", field_=None) -> GramMatrix:
    """Gram matrix of ``phi, phi^2, ..., phi^size``.

    ``method="series"`` takes inner products of truncated powers (exact on the
    retained coefficients). ``method="counting"`` evaluates

        <phi^n, phi^m> = n m int w^(n-1) conj(w)^(m-1) n_phi(w) dA(w)

    on a counting field instead, which is independent of the Taylor series.
    Powers whose lowest-order term already exceeds ``N`` are reported in
    ``unsafe_powers``.
    """
    if method == "series":
        phi = symbol.taylor(N)
        order = max(phi.order(), 1)
        unsafe = tuple(n for n in range(1, size + 1) if n * order > N)
        P = S.powers(phi, size)
        G = _hermitian_from_upper(lambda n, m: inner(P[n], P[m]), size)
        return GramMatrix(G, N, "series", unsafe)
    if method == "counting":
        from .counting import area_field

        fld = field_ if field_ is not None else area_field(symbol)
        w = fld.points
        n_vals = np.where(fld.valid, fld.values, 0)

        def entry(n, m):
            integrand = n * m * w ** (n - 1) * np.conj(w) ** (m - 1) * n_vals
            return fld.integrate(integrand)

        G = _hermitian_from_upper(entry, size)
        return GramMatrix(G, 0, "counting", ())
    raise ContractError(f"unknown gram method {method!r}")
