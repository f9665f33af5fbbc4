"""Truncated matrices of composition operators and their norms.

In the orthonormal basis ``e_0 = 1``, ``e_j = z^j / sqrt(j)`` the operator
``C_phi f = f o phi`` has column ``j`` equal to the coefficient vector of
``phi^j / sqrt(j)``, with the coefficient of ``z^k`` scaled by ``sqrt(k)``.
Because series products have the exact-prefix property, every entry of the
``(N+1) x (N+1)`` truncation is an entry of the infinite matrix, and the
largest singular value of any truncation is a lower bound for the true norm.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import series as S
from .config import DEFAULTS
from .errors import ContractError, ConvergenceError


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    entries: np.ndarray
    truncation: int
    symbol: object = None

    @property
    def symbol_id(self) -> str:
        return getattr(self.symbol, "name", "")

    def to_csv(self) -> str:
        from .space import format_complex

        buf = io.StringIO()
        n = self.truncation + 1
        buf.write(",".join(["row"] + [str(j) for j in range(n)]) + "\n")
        for i in range(n):
            buf.write(",".join([str(i)] + [format_complex(v) for v in self.entries[i]]) + "\n")
        return buf.getvalue()


@dataclass(frozen=True)
class NormReport:
    value: float
    truncation: int
    lower_bound: bool
    iterations: int
    residual: float

    def as_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def build_matrix(symbol, N: int) -> OperatorMatrix:
    """Matrix of ``C_phi`` in the orthonormal monomial basis, truncated to degree ``N``."""
    phi = symbol.taylor(N).pad(N)
    if not np.any(phi.coeffs):
        raise ContractError("the zero symbol induces a rank-one operator; not supported")
    M = np.zeros((N + 1, N + 1), dtype=complex)
    M[0, 0] = 1.0
    row_scale = np.sqrt(np.arange(N + 1, dtype=float))
    row_scale[0] = 1.0
    P = S.constant(1.0, N)
    for j in range(1, N + 1):
        P = S.multiply(P, phi)
        M[:, j] = P.coeffs * row_scale / math.sqrt(j)
    return OperatorMatrix(M, N, symbol)


def largest_singular_value(A: np.ndarray, tol: float = DEFAULTS.power_tol,
                           max_iter: int = DEFAULTS.power_max_iter, seed: int = DEFAULTS.seed,
                           start: np.ndarray | None = None, window: int = DEFAULTS.krylov_window):
    """Top singular value of ``A`` by power iteration on ``G = A^H A``.

    The iterates ``v, Gv, G^2 v, ...`` are kept in windows of ``window``
    vectors (orthonormalized) and the estimate is the largest Rayleigh-Ritz
    value on their span; the window restarts from the best Ritz vector. Plain
    power iteration stalls when the top singular values cluster, which happens
    for every isometric symbol. Convergence means the relative residual
    ``||G x - theta x|| / theta`` is below ``tol``. A Ritz value never exceeds
    the top eigenvalue, so the result is a lower bound at every stage.

    Returns ``(sigma, x, matvecs, residual)``.
    """
    n = A.shape[1]
    if n == 0:
        return 0.0, np.zeros(0, dtype=complex), 0, 0.0
    G = A.conj().T @ A
    if start is None:
        rng = np.random.default_rng(seed)
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    else:
        v = np.asarray(start, dtype=complex).copy()
    nv = np.linalg.norm(v)
    if nv == 0:
        raise ContractError("power iteration needs a nonzero start vector")
    v = v / nv
    m = max(1, min(window, n))
    matvecs = 0
    theta, residual = 0.0, np.inf
    while True:
        V = np.zeros((n, m), dtype=complex)
        GV = np.zeros((n, m), dtype=complex)
        V[:, 0] = v
        k = m
        for j in range(m):
            GV[:, j] = G @ V[:, j]
            matvecs += 1
            if j + 1 == m:
                break
            w = GV[:, j].copy()
            for _ in range(2):
                w -= V[:, : j + 1] @ (V[:, : j + 1].conj().T @ w)
            nw = np.linalg.norm(w)
            if nw <= 1e-14 * max(np.linalg.norm(GV[:, j]), 1e-300):
                k = j + 1
                break
            V[:, j + 1] = w / nw
        H = V[:, :k].conj().T @ GV[:, :k]
        vals, vecs = np.linalg.eigh(0.5 * (H + H.conj().T))
        theta = float(vals[-1])
        y = vecs[:, -1]
        x = V[:, :k] @ y
        gx = GV[:, :k] @ y
        if theta <= 0:
            return 0.0, x, matvecs, 0.0
        residual = float(np.linalg.norm(gx - theta * x) / theta)
        if residual < tol or k < m:
            return math.sqrt(theta), x / np.linalg.norm(x), matvecs, residual
        if matvecs >= max_iter:
            raise ConvergenceError(
                f"power iteration did not reach relative residual {tol:g} in {max_iter} "
                f"matrix-vector products (last residual {residual:.3g})",
                vector=x, value=math.sqrt(theta), iterations=matvecs,
            )
        v = x / np.linalg.norm(x)


def _report(A, truncation, **kw) -> NormReport:
    sigma, _, its, res = largest_singular_value(A, **kw)
    return NormReport(sigma, truncation, True, its, res)


def operator_norm(M: OperatorMatrix, **kw) -> NormReport:
    """Compression norm of ``C_phi`` on the whole space."""
    return _report(M.entries, M.truncation, **kw)


def restricted_norm_D0(M: OperatorMatrix, **kw) -> NormReport:
    """Compression norm of ``C_phi`` on functions vanishing at 0."""
    sym = M.symbol
    if sym is not None and not sym.fixes_origin:
        raise ContractError(
            f"{sym.name} does not fix the origin, so functions vanishing at 0 are not invariant"
        )
    return _report(M.entries[1:, 1:], M.truncation, **kw)


def norm_formula(p_modulus: float) -> float:
    """``sqrt((L + 2 + sqrt(L(4 + L))) / 2)`` with ``L = log(1 / (1 - p^2))``.

    The norm of ``C_phi`` for a univalent full map with ``|phi(0)| = p``.
    """
    if not 0 <= p_modulus < 1:
        raise ContractError(f"|phi(0)| must lie in [0, 1), got {p_modulus}")
    L = math.log(1.0 / (1.0 - p_modulus**2))
    return math.sqrt((L + 2.0 + math.sqrt(L * (4.0 + L))) / 2.0)


def d0_norm_bound(rho: float) -> float:
    """``(1 + ((1 - rho^2)/2) / (rho^2/2))^(-1/2)``, which equals ``rho``."""
    if not 0 < rho <= 1:
        raise ContractError(f"rho must lie in (0, 1], got {rho}")
    nu = (1.0 + ((1.0 - rho**2) / 2.0) / (rho**2 / 2.0)) ** -0.5
    assert abs(nu - rho) < 1e-12 * max(1.0, rho), (nu, rho)
    return nu


def essential_norm_profile(M: OperatorMatrix, n_max: int = DEFAULTS.essnorm_n_max, **kw) -> list[float]:
    """``s_n = ||C_phi R_n||`` on the truncation for ``n = 1 .. n_max``.

    ``R_n`` projects onto ``span{e_k : k >= n}``; on the matrix that means
    dropping columns ``0 .. n-1``. Each solve is warm-started from the previous
    singular vector. The exact ``s_n`` decrease with ``n`` towards the
    essential norm.
    """
    N = M.truncation
    if n_max >= N:
        raise ContractError(f"n_max = {n_max} must be below the truncation N = {N}")
    out = []
    v = None
    for n in range(1, n_max + 1):
        A = M.entries[:, n:]
        start = None if v is None else v[1:]
        if start is not None and np.linalg.norm(start) < 1e-8:
            start = None
        sigma, v, _, _ = largest_singular_value(A, start=start, **kw)
        out.append(sigma)
    return out


def isometry_defect(M: OperatorMatrix, block: int = DEFAULTS.isometry_block) -> float:
    """``max |(M^H M - I)_{ij}|`` over the leading ``block x block`` corner."""
    if block < 1 or block > M.truncation // 2:
        raise ContractError(
            f"block = {block} must lie in 1 .. N/2 = {M.truncation // 2} to stay clear of truncation"
        )
    A = M.entries[:, :block]
    G = A.conj().T @ A
    return float(np.max(np.abs(G - np.eye(block))))


def norm_ladder(symbol, truncations=DEFAULTS.truncation_ladder, restricted: bool = False, **kw):
    """Compression norms at increasing truncations, to expose the convergence."""
    out = []
    for N in truncations:
        M = build_matrix(symbol, N)
        out.append(restricted_norm_D0(M, **kw) if restricted else operator_norm(M, **kw))
    return out
