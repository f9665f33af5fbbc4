"""Catalog of analytic self-maps of the unit disk.

Each constructor returns a :class:`SymbolMap` carrying a vectorized evaluator,
its derivative, a Taylor-coefficient provider and tri-state metadata
(``True`` / ``False`` / ``None`` for unknown). Spec strings such as
``"mobius:p=0.5|slit:c=0.5"`` are parsed by :func:`parse_symbol`.
"""

from __future__ import annotations

import cmath
import functools
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import series as S
from .config import DEFAULTS
from .errors import ContractError, NotASelfMapError, SymbolSpecError
from .series import TruncatedSeries


@dataclass(frozen=True, eq=False)
class SymbolMap:
    """An analytic self-map ``phi`` of the disk."""

    name: str
    evaluate: Callable
    derivative: Callable
    taylor_fn: Callable[[int], TruncatedSeries]
    fixes_origin: bool
    univalent: Optional[bool] = None
    full: Optional[bool] = None
    sup_modulus: float = 1.0
    params: dict = field(default_factory=dict)
    # analytic on a neighborhood of the closed disk
    boundary_regular: bool = True

    def __post_init__(self):
        # Taylor expansions are reused heavily (ladders, Gram sizes); memoize per N.
        object.__setattr__(self, "_taylor_cached", functools.lru_cache(maxsize=8)(self.taylor_fn))

    def taylor(self, N: int) -> TruncatedSeries:
        return self._taylor_cached(int(N))

    def __call__(self, z):
        return self.evaluate(np.asarray(z, dtype=complex))

    @property
    def value_at_zero(self) -> complex:
        return complex(self.evaluate(np.array(0j)))

    def __repr__(self):
        return f"SymbolMap({self.name!r})"


def _asz(z):
    return np.asarray(z, dtype=complex)


def rotation(theta: float) -> SymbolMap:
    lam = cmath.exp(1j * theta)
    return SymbolMap(
        name=f"rotation:theta={theta:g}",
        evaluate=lambda z: lam * _asz(z),
        derivative=lambda z: np.full_like(_asz(z), lam),
        taylor_fn=lambda N: S.monomial(1, N, lam),
        fixes_origin=True,
        univalent=True,
        full=True,
        sup_modulus=1.0,
        params={"kind": "rotation", "theta": theta},
    )


def identity() -> SymbolMap:
    sym = rotation(0.0)
    return SymbolMap("identity", sym.evaluate, sym.derivative, sym.taylor_fn,
                     True, True, True, 1.0, {"kind": "rotation", "theta": 0.0}, True)


def automorphism(p: complex) -> SymbolMap:
    """The involution ``alpha_p(z) = (p - z) / (1 - conj(p) z)`` swapping ``p`` and 0."""
    p = complex(p)
    if abs(p) >= 1:
        raise ContractError(f"automorphism needs |p| < 1, got {abs(p)}")
    pc = p.conjugate()
    s = 1 - abs(p) ** 2

    def taylor(N):
        c = np.empty(N + 1, dtype=complex)
        c[0] = p
        if N:
            c[1:] = -s * pc ** np.arange(N)
        return TruncatedSeries(c)

    return SymbolMap(
        name=f"mobius:p={_fmt(p)}",
        evaluate=lambda z: (p - _asz(z)) / (1 - pc * _asz(z)),
        derivative=lambda z: -s / (1 - pc * _asz(z)) ** 2,
        taylor_fn=taylor,
        fixes_origin=(p == 0),
        univalent=True,
        full=True,
        sup_modulus=1.0,
        params={"kind": "automorphism", "p": p},
    )


def boundary_fixed_lft(t: float) -> SymbolMap:
    """Linear fractional map with ``phi(0)=0``, ``phi(1)=1``, ``phi(-1)=-1/t``.

    ``phi_t(z) = 2z / ((1+t) + (1-t)z)``; its image is the disk on the real
    diameter ``[-1/t, 1]``, so the map is full only for ``t = 1``.
    """
    t = float(t)
    if t < 1:
        raise ContractError(f"boundary_fixed_lft needs t >= 1, got {t}")
    a = 1 + t
    b = 1 - t
    q = (t - 1) / (t + 1)

    def taylor(N):
        c = np.zeros(N + 1, dtype=complex)
        if N:
            c[1:] = (2 / a) * q ** np.arange(N)
        return TruncatedSeries(c)

    return SymbolMap(
        name=f"lft:t={t:g}",
        evaluate=lambda z: 2 * _asz(z) / (a + b * _asz(z)),
        derivative=lambda z: 2 * a / (a + b * _asz(z)) ** 2,
        taylor_fn=taylor,
        fixes_origin=True,
        univalent=True,
        full=(t == 1),
        sup_modulus=1.0,
        params={"kind": "lft", "t": t, "image_center": (1 - 1 / t) / 2, "image_radius": (1 + 1 / t) / 2},
    )


def monomial(k: int) -> SymbolMap:
    k = int(k)
    if k < 1:
        raise ContractError(f"monomial needs k >= 1, got {k}")
    return SymbolMap(
        name=f"power:k={k}",
        evaluate=lambda z: _asz(z) ** k,
        derivative=lambda z: k * _asz(z) ** (k - 1),
        taylor_fn=lambda N: S.monomial(k, N),
        fixes_origin=True,
        univalent=(k == 1),
        full=True,
        sup_modulus=1.0,
        params={"kind": "monomial", "k": k},
    )


def _koebe_inverse(w):
    # ((2w+1) - sqrt(4w+1)) / (2w), rewritten to avoid cancellation near w = 0
    return 2 * w / ((2 * w + 1) + np.sqrt(4 * w + 1))


def _koebe_prime(u):
    return (1 + u) / (1 - u) ** 3


def radial_slit_full_map(c: float) -> SymbolMap:
    """``k^{-1}(c k(z))`` with ``k(z) = z / (1-z)^2`` the Koebe function.

    Maps the disk univalently onto the disk minus a segment of the negative
    real axis ending at ``-1``. The Taylor series uses the closed form

        phi(z) = 2cz / ((1-z)^2 + 2cz + (1-z) sqrt(1 - (2-4c) z + z^2)),

    whose pieces all have bounded coefficients, so the series arithmetic stays
    stable at large ``N``.
    """
    c = float(c)
    if not 0 < c < 1:
        raise ContractError(f"slit map needs 0 < c < 1, got {c}")

    def evaluate(z):
        z = _asz(z)
        return _koebe_inverse(c * z / (1 - z) ** 2)

    def derivative(z):
        z = _asz(z)
        return c * _koebe_prime(z) / _koebe_prime(evaluate(z))

    def taylor(N):
        one_minus_z = S.from_coeffs([1, -1], N)
        quad = S.from_coeffs([1, -(2 - 4 * c), 1], N)
        denom = S.multiply(one_minus_z, one_minus_z) + S.multiply(one_minus_z, S.sqrt(quad))
        denom = denom + S.monomial(1, N, 2 * c)
        return S.divide(S.monomial(1, N, 2 * c), denom)

    tip = -float(_koebe_inverse(-c / 4).real)
    return SymbolMap(
        name=f"slit:c={c:g}",
        evaluate=evaluate,
        derivative=derivative,
        taylor_fn=taylor,
        fixes_origin=True,
        univalent=True,
        full=True,
        sup_modulus=1.0,
        params={"kind": "slit", "c": c, "slit": (-1.0, -tip)},
        boundary_regular=False,
    )


def polynomial(coeffs) -> SymbolMap:
    """Polynomial symbol; rejected unless it maps ``|z| <= 0.999`` into the disk."""
    a = np.array([complex(x) for x in coeffs], dtype=complex)
    if a.size == 0:
        raise ContractError("polynomial needs at least one coefficient")
    poly = TruncatedSeries(a)
    dpoly = S.derivative(poly)
    theta = 2 * np.pi * np.arange(4096) / 4096
    inner_max = float(np.max(np.abs(poly(0.999 * np.exp(1j * theta)))))
    if inner_max >= 1:
        raise NotASelfMapError(
            f"polynomial {list(coeffs)} reaches modulus {inner_max:.6g} on |z| = 0.999"
        )
    sup = min(float(np.max(np.abs(poly(np.exp(1j * theta))))), 1.0)
    is_linear = a.size <= 2 or not np.any(a[2:])
    univalent = full = None
    # image of a + bz is the disk of radius |b| about a
    if is_linear:
        a1 = a[1] if a.size > 1 else 0
        univalent = bool(a1 != 0)
        full = bool(a[0] == 0 and abs(abs(a1) - 1) < 1e-15)

    def taylor(N):
        return poly.pad(N)

    return SymbolMap(
        name="poly:" + ",".join(_fmt(x) for x in a),
        evaluate=lambda z: poly(_asz(z)),
        derivative=lambda z: dpoly(_asz(z)),
        taylor_fn=taylor,
        fixes_origin=abs(a[0]) < 1e-12,
        univalent=univalent,
        full=full,
        sup_modulus=sup,
        params={"kind": "polynomial", "coeffs": a, "degree": int(np.flatnonzero(a).max()) if np.any(a) else 0},
    )


def compose(outer: SymbolMap, inner: SymbolMap) -> SymbolMap:
    """``outer o inner``.

    Taylor coefficients come from series composition when ``inner`` fixes the
    origin (exact prefix) and from circle sampling otherwise.
    """

    def evaluate(z):
        return outer.evaluate(inner.evaluate(_asz(z)))

    def derivative(z):
        z = _asz(z)
        return outer.derivative(inner.evaluate(z)) * inner.derivative(z)

    def taylor(N):
        if inner.fixes_origin:
            return S.compose(outer.taylor(N), inner.taylor(N).pad(N))
        return S.coefficients_from_samples(
            evaluate, N, DEFAULTS.sample_radius, DEFAULTS.oversample
        )

    if outer.univalent is None or inner.univalent is None:
        univalent = None
    else:
        univalent = outer.univalent and inner.univalent
    full = True if (outer.full and inner.full and outer.univalent) else None
    if full:
        sup = 1.0
    else:
        theta = 2 * np.pi * np.arange(8192) / 8192
        sup = min(float(np.max(np.abs(evaluate((1 - 1e-9) * np.exp(1j * theta))))), 1.0)
    return SymbolMap(
        name=f"{outer.name}|{inner.name}",
        evaluate=evaluate,
        derivative=derivative,
        taylor_fn=taylor,
        fixes_origin=abs(complex(evaluate(np.array(0j)))) < 1e-12,
        univalent=univalent,
        full=full,
        sup_modulus=sup,
        params={"kind": "compose", "outer": outer.name, "inner": inner.name},
        boundary_regular=outer.boundary_regular and inner.boundary_regular,
    )


def self_map_margin(symbol: SymbolMap, n: int = 64) -> float:
    """Largest ``|phi(z)|`` over an ``n x n`` polar grid of the open disk."""
    radii = (np.arange(n) + 0.5) / n
    theta = 2 * np.pi * np.arange(n) / n
    z = radii[:, None] * np.exp(1j * theta[None, :])
    return float(np.max(np.abs(symbol.evaluate(z))))


def _fmt(x) -> str:
    x = complex(x)
    if x.imag == 0:
        return f"{x.real:g}"
    return f"{x.real:g}{x.imag:+g}j"


def _parse_number(text, token, kind=float):
    try:
        return kind(text.replace(" ", ""))
    except ValueError:
        raise SymbolSpecError(f"bad number {text!r} in token {token!r}") from None


def _parse_kv(args: str, token: str, key: str, kind=float):
    name, sep, value = args.partition("=")
    if not sep or name.strip() != key:
        raise SymbolSpecError(f"expected '{key}=<value>' in token {token!r}")
    return _parse_number(value.strip(), token, kind)


def _parse_one(token: str) -> SymbolMap:
    token = token.strip()
    kind, _, args = token.partition(":")
    kind = kind.strip().lower()
    try:
        if kind == "identity" and not args:
            return identity()
        if kind == "rotation":
            return rotation(_parse_kv(args, token, "theta"))
        if kind == "mobius":
            return automorphism(_parse_kv(args, token, "p", complex))
        if kind == "lft":
            return boundary_fixed_lft(_parse_kv(args, token, "t"))
        if kind == "power":
            return monomial(_parse_kv(args, token, "k", int))
        if kind == "slit":
            return radial_slit_full_map(_parse_kv(args, token, "c"))
        if kind == "poly":
            if not args.strip():
                raise SymbolSpecError(f"empty coefficient list in token {token!r}")
            return polynomial([_parse_number(x.strip(), token, complex) for x in args.split(",")])
    except ContractError as exc:
        raise SymbolSpecError(f"invalid parameters in token {token!r}: {exc}") from exc
    raise SymbolSpecError(f"unknown symbol kind in token {token!r}")


def parse_symbol(spec: str) -> SymbolMap:
    """Parse a symbol spec; ``"A|B"`` is ``compose(A, B)`` (outer first)."""
    tokens = [t for t in spec.split("|")]
    if not spec.strip() or any(not t.strip() for t in tokens):
        raise SymbolSpecError(f"empty token in symbol spec {spec!r}")
    maps = [_parse_one(t) for t in tokens]
    out = maps[-1]
    for outer in reversed(maps[:-1]):
        out = compose(outer, out)
    return out
