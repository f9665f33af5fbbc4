"""Truncated power series on the unit disk.

A :class:`TruncatedSeries` holds the Taylor coefficients ``a_0 .. a_N`` of an
analytic function. Every operation here has the exact-prefix property: the
coefficient of ``z^k`` in a result depends only on input coefficients of index
``<= k``, so truncating at ``N`` never corrupts entries ``0 .. N``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.signal import fftconvolve

from .errors import ContractError

# Below this length a direct convolution is both faster and slightly more accurate.
_FFT_THRESHOLD = 1024


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Complex Taylor coefficients ``a_0 .. a_N``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        if c.size == 0:
            raise ContractError("a truncated series needs at least one coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __repr__(self):
        return f"TruncatedSeries(degree={self.degree}, coeffs={self.coeffs!r})"

    def __call__(self, z):
        """Evaluate the truncated polynomial at ``z`` (Horner)."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for a in self.coeffs[::-1]:
            out = out * z + a
        return out

    def __add__(self, other):
        _check_degrees(self, other)
        return TruncatedSeries(self.coeffs + other.coeffs)

    def __sub__(self, other):
        _check_degrees(self, other)
        return TruncatedSeries(self.coeffs - other.coeffs)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return multiply(self, other)
        return TruncatedSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __pow__(self, n):
        return power(self, n)

    def pad(self, degree: int) -> "TruncatedSeries":
        """Return the same series zero-padded (or truncated) to ``degree``."""
        if degree < 0:
            raise ContractError("degree must be nonnegative")
        c = np.zeros(degree + 1, dtype=complex)
        m = min(degree, self.degree) + 1
        c[:m] = self.coeffs[:m]
        return TruncatedSeries(c)

    def order(self) -> int:
        """Index of the lowest nonzero coefficient (``degree + 1`` for zero)."""
        nz = np.flatnonzero(self.coeffs)
        return int(nz[0]) if nz.size else self.degree + 1

    def allclose(self, other, atol=1e-12) -> bool:
        return self.degree == other.degree and np.allclose(
            self.coeffs, other.coeffs, rtol=0.0, atol=atol
        )


def from_coeffs(coeffs, degree: int | None = None) -> TruncatedSeries:
    """Build a series from a coefficient list, optionally padded to ``degree``."""
    s = TruncatedSeries(coeffs)
    return s if degree is None else s.pad(degree)


def constant(value, degree: int) -> TruncatedSeries:
    c = np.zeros(degree + 1, dtype=complex)
    c[0] = value
    return TruncatedSeries(c)


def monomial(k: int, degree: int, scale=1.0) -> TruncatedSeries:
    c = np.zeros(degree + 1, dtype=complex)
    if k <= degree:
        c[k] = scale
    return TruncatedSeries(c)


def _check_degrees(f, g):
    if f.degree != g.degree:
        raise ContractError(
            f"degree mismatch: {f.degree} vs {g.degree} (pad the shorter series)"
        )


def _convolve(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    if n > _FFT_THRESHOLD:
        return fftconvolve(a, b)[:n]
    return np.convolve(a, b)[:n]


def multiply(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product of two series of equal degree, truncated to that degree."""
    _check_degrees(f, g)
    return TruncatedSeries(_convolve(f.coeffs, g.coeffs, f.degree + 1))


def power(f: TruncatedSeries, n: int) -> TruncatedSeries:
    """``f**n`` truncated to the degree of ``f`` (binary exponentiation)."""
    if n < 0:
        raise ContractError("power requires n >= 0")
    result = constant(1.0, f.degree)
    base = f
    while n:
        if n & 1:
            result = multiply(result, base)
        n >>= 1
        if n:
            base = multiply(base, base)
    return result


def powers(f: TruncatedSeries, n_max: int) -> list[TruncatedSeries]:
    """``[f**0, f**1, ..., f**n_max]`` by repeated multiplication."""
    out = [constant(1.0, f.degree)]
    for _ in range(n_max):
        out.append(multiply(out[-1], f))
    return out


def derivative(f: TruncatedSeries) -> TruncatedSeries:
    """Termwise derivative, zero-padded back to the input degree."""
    c = np.zeros_like(f.coeffs)
    k = np.arange(1, f.degree + 1)
    c[:-1] = k * f.coeffs[1:]
    return TruncatedSeries(c)


def reciprocal(f: TruncatedSeries) -> TruncatedSeries:
    """``1/f`` for ``f(0) != 0``."""
    return divide(constant(1.0, f.degree), f)


def divide(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """``f/g`` for ``g(0) != 0`` by forward substitution."""
    _check_degrees(f, g)
    b = g.coeffs
    if b[0] == 0:
        raise ContractError("division by a series with vanishing constant term")
    a = f.coeffs
    c = np.zeros_like(a)
    for n in range(a.size):
        acc = a[n]
        if n:
            acc -= np.dot(c[:n], b[n:0:-1])
        c[n] = acc / b[0]
    return TruncatedSeries(c)


def sqrt(f: TruncatedSeries) -> TruncatedSeries:
    """Principal square root of a series with ``f(0) != 0``."""
    q = f.coeffs
    if q[0] == 0:
        raise ContractError("series square root needs a nonzero constant term")
    s = np.zeros_like(q)
    s[0] = np.sqrt(q[0])
    two_s0 = 2 * s[0]
    for n in range(1, q.size):
        acc = q[n]
        if n > 1:
            acc -= np.dot(s[1:n], s[n - 1:0:-1])
        s[n] = acc / two_s0
    return TruncatedSeries(s)


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(z))`` for ``inner(0) == 0``; exact on entries ``0 .. N``."""
    _check_degrees(outer, inner)
    if inner.coeffs[0] != 0:
        raise ContractError("series composition needs inner(0) == 0")
    n = outer.degree + 1
    out = np.zeros(n, dtype=complex)
    # Horner: only the first k outer terms can reach z^k, but the full loop is cheap.
    for a in outer.coeffs[::-1]:
        out = _convolve(out, inner.coeffs, n)
        out[0] += a
    return TruncatedSeries(out)


def coefficients_from_samples(
    evaluator: Callable,
    N: int,
    sample_radius: float = 0.5,
    oversample: int = 8,
) -> TruncatedSeries:
    """Estimate Taylor coefficients from samples on a circle.

    Uses ``M = oversample * (N + 1)`` equispaced samples on ``|z| = sample_radius``
    and a discrete Fourier transform. Aliasing contributes ``O(sample_radius**M)``
    relative error; rounding noise is amplified by ``sample_radius**-k`` in
    coefficient ``k``, so large ``N`` needs a radius close to 1.
    """
    if not 0.0 < sample_radius < 1.0:
        raise ContractError(f"sample_radius must lie in (0, 1), got {sample_radius}")
    if oversample < 4:
        raise ContractError("oversample must be >= 4")
    if N < 0:
        raise ContractError("N must be nonnegative")
    M = oversample * (N + 1)
    theta = 2 * np.pi * np.arange(M) / M
    values = np.asarray(evaluator(sample_radius * np.exp(1j * theta)), dtype=complex)
    c = np.fft.fft(values)[: N + 1] / M
    c /= sample_radius ** np.arange(N + 1)
    return TruncatedSeries(c)
