"""Counting function ``n_phi`` and the area identities built on it.

``n_phi(w)`` is computed with the argument principle: the number of zeros of
``phi - w`` inside ``|z| < rho_c`` equals

    (1 / 2 pi i) * contour integral of phi'(z) / (phi(z) - w) dz,

evaluated with the trapezoid rule on ``M`` equispaced contour nodes. The
trapezoid rule converges geometrically for this periodic analytic integrand,
but the rate degrades as a zero of ``phi - w`` approaches the contour, so
nodes whose raw value does not sit on an integer are recomputed with twice as
many contour nodes. Zeros are counted with multiplicity; that differs from the
set cardinality only on the critical values of ``phi``, a set of zero area.
"""

from __future__ import annotations

import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .config import DEFAULTS, worker_count
from .errors import ContourTooCloseError, ContractError, QuadratureError
from .quadrature import DiskGrid, disk_grid

_CHUNK_ELEMENTS = 1 << 22


@dataclass(frozen=True, eq=False)
class CountingField:
    """Samples of ``n_phi`` on a polar grid.

    ``valid`` is false at guarded nodes (too close to the contour image) and at
    nodes whose winding integral never settled; such nodes are left out of
    every integral and moment, ring by ring.
    """

    grid: DiskGrid
    values: np.ndarray
    raw: np.ndarray
    valid: np.ndarray
    guarded: np.ndarray
    failed: np.ndarray
    contour_nodes: np.ndarray
    contour_radius: float
    symbol_name: str = ""

    @property
    def radii(self):
        return self.grid.radii

    @property
    def angles(self):
        return self.grid.angles

    @property
    def points(self):
        return self.grid.points

    @property
    def r_max(self):
        return self.grid.r_max

    @property
    def unresolved_mass(self) -> float:
        """Normalized area of the annulus ``r_max < |w| < 1`` left unsampled."""
        return 1.0 - self.r_max**2

    @property
    def snap_fraction(self) -> float:
        """Fraction of nodes whose winding integral landed within 0.1 of an integer."""
        return float(np.mean(self.valid))

    @property
    def guarded_count(self) -> int:
        return int(self.guarded.sum())

    @property
    def failed_count(self) -> int:
        return int(self.failed.sum())

    def integrate(self, values) -> complex:
        """``int F dA`` over ``|w| < r_max``, averaging each ring over valid nodes."""
        values = np.asarray(values)
        counts = self.valid.sum(axis=1)
        sums = np.where(self.valid, values, 0).sum(axis=1)
        sums = sums.astype(complex)
        means = np.divide(sums, counts, out=np.zeros_like(sums), where=counts > 0)
        total = np.sum(self.grid.ring_weights * means)
        return complex(total)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("r,theta,value,valid\n")
        for i, r in enumerate(self.radii):
            for j, t in enumerate(self.angles):
                buf.write(f"{r:.17g},{t:.17g},{int(self.values[i, j])},{int(self.valid[i, j])}\n")
        return buf.getvalue()


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """Angular Fourier moment ``f_k(r) = sum_theta e^{ik theta} n(r e^{i theta}) dtheta``."""

    k: int
    radii: np.ndarray
    moments: np.ndarray


def profiles_to_csv(profiles) -> str:
    buf = io.StringIO()
    buf.write("k,r,re,im\n")
    for prof in profiles:
        for r, m in zip(prof.radii, prof.moments):
            buf.write(f"{prof.k},{r:.17g},{m.real:.17g},{m.imag:.17g}\n")
    return buf.getvalue()


@dataclass(frozen=True)
class RadialTestReport:
    radial: bool
    worst_ratio: float
    worst_k: int
    worst_r: float
    tol: float
    k_max: int
    guarded: int
    failed: int

    def as_dict(self):
        return dict(self.__dict__)


class _Contour:
    """Symbol samples on ``|z| = rho`` for successive node counts."""

    def __init__(self, symbol, rho):
        self.symbol = symbol
        self.rho = rho
        self._cache = {}

    def samples(self, M):
        if M not in self._cache:
            z = self.rho * np.exp(2j * np.pi * np.arange(M) / M)
            fz = np.asarray(self.symbol.evaluate(z), dtype=complex)
            dz = np.asarray(self.symbol.derivative(z), dtype=complex) * z
            self._cache[M] = (fz, dz)
        return self._cache[M]


def _winding_chunk(ws, fz, dz):
    diff = fz[None, :] - ws[:, None]
    # a target exactly on the contour image gives inf; dmin = 0 guards it
    with np.errstate(divide="ignore", invalid="ignore"):
        raw = np.mean(dz[None, :] / diff, axis=1)
    dmin = np.min(np.abs(diff), axis=1)
    return raw, dmin


def _winding_level(ws, fz, dz, workers):
    per_chunk = max(1, _CHUNK_ELEMENTS // fz.size)
    chunks = [slice(i, i + per_chunk) for i in range(0, ws.size, per_chunk)]
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda s: _winding_chunk(ws[s], fz, dz), chunks))
    else:
        parts = [_winding_chunk(ws[s], fz, dz) for s in chunks]
    raw = np.concatenate([p[0] for p in parts]) if parts else np.zeros(0, complex)
    dmin = np.concatenate([p[1] for p in parts]) if parts else np.zeros(0)
    return raw, dmin


def winding_numbers(symbol, ws, rho_c, M=DEFAULTS.contour_nodes, M_max=DEFAULTS.contour_nodes_max,
                    guard=DEFAULTS.guard_distance, refine_tol=DEFAULTS.snap_refine_tol):
    """Raw winding integrals for many targets at once.

    Returns ``(raw, dmin, nodes)``: the complex trapezoid value, the smallest
    distance from each target to the sampled contour image, and the node count
    that produced the final value.
    """
    if not 0 < rho_c <= 1:
        raise ContractError(f"contour radius must lie in (0, 1], got {rho_c}")
    ws = np.asarray(ws, dtype=complex).reshape(-1)
    raw = np.zeros(ws.size, dtype=complex)
    dmin = np.full(ws.size, np.inf)
    nodes = np.zeros(ws.size, dtype=np.int64)
    contour = _Contour(symbol, rho_c)
    workers = worker_count()
    pending = np.arange(ws.size)
    level = int(M)
    while pending.size:
        fz, dz = contour.samples(level)
        r, d = _winding_level(ws[pending], fz, dz, workers)
        raw[pending], dmin[pending], nodes[pending] = r, d, level
        with np.errstate(invalid="ignore"):
            offset = np.abs(r - np.round(r.real))
        need = (d >= guard) & (offset > refine_tol)
        if 2 * level > M_max:
            break
        pending = pending[need]
        level *= 2
    return raw, dmin, nodes


def count_preimages(symbol, w, rho_c=DEFAULTS.contour_radius, M=DEFAULTS.contour_nodes) -> int:
    """Number of solutions of ``phi(z) = w`` in ``|z| < rho_c``, with multiplicity.

    ``rho_c = 1`` is allowed for maps analytic across the unit circle.
    """
    if abs(w) >= 1:
        raise ContractError(f"target must lie in the open disk, got |w| = {abs(w)}")
    raw, dmin, nodes = winding_numbers(symbol, [w], rho_c, M)
    if dmin[0] < DEFAULTS.guard_distance:
        raise ContourTooCloseError(
            f"w = {w} lies within {dmin[0]:.2e} of the image of |z| = {rho_c}; "
            f"try a contour radius such as {_suggest_radius(rho_c)}"
        )
    value = raw[0]
    n = round(value.real)
    if abs(value - n) > DEFAULTS.snap_fail_tol:
        raise QuadratureError(
            f"winding integral {value:.6g} did not settle on an integer with {nodes[0]} nodes"
        )
    return int(n)


def _suggest_radius(rho_c):
    return round(rho_c - 0.01, 4) if rho_c > 0.5 else round(rho_c + 0.01, 4)


def counting_field(symbol, n_r=DEFAULTS.field_n_r, n_theta=DEFAULTS.field_n_theta,
                   r_max=DEFAULTS.field_r_max, rho_c=DEFAULTS.contour_radius,
                   M=DEFAULTS.contour_nodes) -> CountingField:
    """Sample ``n_phi`` on Gauss-Legendre radii times uniform angles.

    With ``r_max = 1`` the radial nodes still lie strictly inside the disk and
    the Gauss weights cover the whole disk, which is what area identities need.
    """
    if not 0 < r_max <= 1:
        raise ContractError(f"r_max must lie in (0, 1], got {r_max}")
    grid = disk_grid(n_r, n_theta, r_max)
    pts = grid.points.reshape(-1)
    raw, dmin, nodes = winding_numbers(symbol, pts, rho_c, M)
    guarded = dmin < DEFAULTS.guard_distance
    rounded = np.round(raw.real)
    failed = ~guarded & (np.abs(raw - rounded) > DEFAULTS.snap_fail_tol)
    if guarded.mean() > DEFAULTS.max_guarded_fraction:
        raise ContourTooCloseError(
            f"{guarded.sum()} of {guarded.size} grid nodes lie within "
            f"{DEFAULTS.guard_distance:g} of the contour image; change rho_c or the grid"
        )
    valid = ~guarded & ~failed
    values = np.where(valid, np.maximum(rounded, 0), 0).astype(np.int64)
    shape = grid.shape
    return CountingField(
        grid=grid,
        values=values.reshape(shape),
        raw=raw.reshape(shape),
        valid=valid.reshape(shape),
        guarded=guarded.reshape(shape),
        failed=failed.reshape(shape),
        contour_nodes=nodes.reshape(shape),
        contour_radius=float(rho_c),
        symbol_name=getattr(symbol, "name", ""),
    )


def area_contour_radius(symbol) -> float:
    """Contour radius for full-disk fields.

    Maps analytic across the unit circle are counted on the circle itself, which
    gives the true ``n_phi``. Otherwise the field counts preimages in
    ``|z| < rho`` only, i.e. it is the exact counting function of the dilation
    ``z -> phi(rho z)``, and area identities compare against that dilation.
    """
    if getattr(symbol, "boundary_regular", False):
        return DEFAULTS.area_contour_radius
    return DEFAULTS.area_contour_radius_singular


def area_field(symbol, n_r=DEFAULTS.area_n_r, n_theta=DEFAULTS.area_n_theta) -> CountingField:
    """Counting field over the whole disk, for area integrals of ``n_phi``."""
    return counting_field(symbol, n_r, n_theta, r_max=1.0, rho_c=area_contour_radius(symbol))


def radial_moments(field: CountingField, k_max: int) -> list[RadialProfile]:
    """Angular Fourier moments ``f_0 .. f_{k_max}`` at every radius node."""
    theta = field.angles
    vals = np.where(field.valid, field.values, 0).astype(float)
    counts = field.valid.sum(axis=1)
    dtheta = np.divide(2 * np.pi, counts, out=np.zeros(counts.shape), where=counts > 0)
    out = []
    for k in range(k_max + 1):
        m = (vals * np.exp(1j * k * theta)[None, :]).sum(axis=1) * dtheta
        out.append(RadialProfile(k, field.radii.copy(), m))
    return out


def is_essentially_radial(symbol, tol=DEFAULTS.radial_tol, k_max=DEFAULTS.radial_k_max,
                          field: CountingField | None = None):
    """Test whether ``n_phi`` depends on ``|w|`` alone.

    The statistic is ``max |f_k(r)| / max(f_0(r), 1)`` over ``k = 1 .. k_max``
    and all radius nodes. Returns ``(radial, report)``.
    """
    if field is None:
        regular = getattr(symbol, "boundary_regular", False)
        rho = DEFAULTS.contour_radius if regular else DEFAULTS.contour_radius_singular
        field = counting_field(symbol, rho_c=rho)
    fld = field
    profiles = radial_moments(fld, k_max)
    scale = np.maximum(profiles[0].moments.real, 1.0)
    worst = (0.0, 1, float(fld.radii[0]))
    for prof in profiles[1:]:
        ratio = np.abs(prof.moments) / scale
        i = int(np.argmax(ratio))
        if ratio[i] > worst[0]:
            worst = (float(ratio[i]), prof.k, float(fld.radii[i]))
    report = RadialTestReport(
        radial=worst[0] < tol, worst_ratio=worst[0], worst_k=worst[1], worst_r=worst[2],
        tol=tol, k_max=k_max, guarded=fld.guarded_count, failed=fld.failed_count,
    )
    return report.radial, report


def fullness_defect(symbol, field: CountingField | None = None) -> float:
    """Normalized area of the part of the disk the symbol misses.

    ``1 - int 1[n_phi >= 1] dA`` over the sampled disk; any unsampled annulus
    beyond ``field.r_max`` counts as missed (see ``unresolved_mass``).
    """
    fld = field if field is not None else area_field(symbol)
    covered = fld.integrate((fld.values >= 1).astype(float)).real
    return float(min(max(1.0 - covered, 0.0), 1.0))


def counting_integral(field: CountingField, f=None) -> float:
    """``int f(w) n_phi(w) dA(w)`` on the field (``f = 1`` when omitted)."""
    w = field.points
    fw = np.ones(w.shape) if f is None else np.asarray(f(w))
    return float(field.integrate(fw * field.values).real)


def change_of_variable_sides(symbol, f=None, field: CountingField | None = None,
                             n_r=DEFAULTS.z_grid_n_r, n_theta=None):
    """Both sides of ``int f(phi)|phi'|^2 dA = int f n_phi dA`` by quadrature.

    The left side runs on a polar grid in ``z`` over the disk enclosed by the
    field's counting contour (the whole disk for boundary-regular maps); the
    right side on the full-disk counting field in ``w``.
    """
    fld = field if field is not None else area_field(symbol)
    if n_theta is None:
        regular = getattr(symbol, "boundary_regular", False)
        n_theta = DEFAULTS.z_grid_n_theta if regular else DEFAULTS.z_grid_n_theta_singular
    zg = disk_grid(n_r, n_theta, fld.contour_radius)
    z = zg.points
    fz = np.ones(z.shape) if f is None else np.asarray(f(symbol.evaluate(z)))
    lhs = float(zg.integrate(fz * np.abs(symbol.derivative(z)) ** 2).real)
    rhs = counting_integral(fld, f)
    return lhs, rhs


def change_of_variable_residual(symbol, f=None, field: CountingField | None = None, **kw) -> float:
    lhs, rhs = change_of_variable_sides(symbol, f, field, **kw)
    return abs(lhs - rhs)
