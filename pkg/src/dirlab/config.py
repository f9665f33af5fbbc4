"""Centralized numerical defaults.

Everything tunable lives in :data:`DEFAULTS` so that a run can be reproduced
from the printed configuration alone (``dirlab --show-config``).
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class Defaults:
    # series_core
    gram_truncation: int = 64
    norm_truncation: int = 256
    sample_radius: float = 0.5
    oversample: int = 8
    # dirichlet_space
    kernel_tail_tol: float = 1e-10
    kernel_max_degree: int = 100_000
    gram_size: int = 8
    # counting_geometry: angular/radial test grid
    field_n_r: int = 48
    field_n_theta: int = 128
    field_r_max: float = 0.99
    contour_radius: float = 0.995
    # dilation of a boundary-singular map pulls its image off the circle near the corners
    contour_radius_singular: float = 0.9999
    # counting_geometry: full-disk grid for area integrals
    area_n_r: int = 64
    area_n_theta: int = 256
    # contour on the unit circle itself for maps analytic across it
    area_contour_radius: float = 1.0
    area_contour_radius_singular: float = 0.999
    z_grid_n_r: int = 128
    z_grid_n_theta: int = 512
    # boundary singularities sit 1 - rho from the z-grid edge
    z_grid_n_theta_singular: int = 8192
    contour_nodes: int = 4096
    contour_nodes_max: int = 2**20
    guard_distance: float = 1e-4
    snap_refine_tol: float = 1e-8
    snap_fail_tol: float = 0.1
    max_guarded_fraction: float = 0.05
    radial_tol: float = 0.05
    radial_k_max: int = 8
    # operator_engine
    power_tol: float = 1e-10
    power_max_iter: int = 10_000
    krylov_window: int = 24
    seed: int = 20240601
    truncation_ladder: tuple = (64, 128, 256, 512)
    essnorm_n_max: int = 32
    isometry_block: int = 32

    def as_dict(self) -> dict:
        d = asdict(self)
        d["truncation_ladder"] = list(self.truncation_ladder)
        return d


DEFAULTS = Defaults()


def worker_count() -> int:
    """Worker cap from ``DIRLAB_THREADS`` (0 or unset means one per CPU)."""
    raw = os.environ.get("DIRLAB_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = os.cpu_count() or 1
    return n
