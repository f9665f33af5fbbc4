"""Truncated series and the Dirichlet inner product.

Run with ``python demos/01_series_and_space.py``.
"""

import math

import numpy as np

from dirlab import series as S
from dirlab import space as D
from dirlab.quadrature import dirichlet_inner_by_area

# Series live at a fixed degree; products keep every retained coefficient exact.
phi = S.from_coeffs([0, 0.5, 0.5], 8)
print("phi^2 =", np.round(S.power(phi, 2).coeffs.real, 4))

# The norm is |f(0)|^2 + int |f'|^2 dA, so ||z^n||^2 = n.
for n in (1, 2, 4):
    print(f"||z^{n}|| = {D.norm(S.monomial(n, 8)):.6f}")

# Coefficient formula against a direct area integral of f' conj(g').
f, g = S.power(phi, 2), phi
coef = D.inner(f, g)
area = dirichlet_inner_by_area(f, S.derivative(f), g, S.derivative(g))
print(f"<phi^2, phi>: coefficients {coef.real:.12f}, area quadrature {area.real:.12f}")

# Reproducing kernel: <f, K_w> = f(w), and ||K_w||^2 = K_w(w) = 1 + log(1/(1-|w|^2)).
w = 0.6
K = D.kernel(w)
print(f"K_w truncated at degree {K.degree} for |w| = {w}")
print(f"<z^2, K_w> = {D.inner(S.monomial(2, K.degree), K).real:.12f}  (w^2 = {w**2})")
print(f"||K_w||^2 = {D.inner(K, K).real:.10f}, 1 + log(1/(1-w^2)) = {1 + math.log(1 / (1 - w * w)):.10f}")
