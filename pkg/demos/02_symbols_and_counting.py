"""Self-maps of the disk and their counting functions.

The counting function n_phi(w) is sampled by the argument principle on a
polar grid. Run with ``python demos/02_symbols_and_counting.py`` (about 30 s).
"""

import numpy as np

from dirlab import counting as C
from dirlab import space as D
from dirlab.symbols import parse_symbol

for spec in ("power:k=2", "mobius:p=0.5", "lft:t=2", "slit:c=0.5", "mobius:p=0.5|slit:c=0.5"):
    sym = parse_symbol(spec)
    print(f"{spec:26s} phi(0) = {complex(sym.value_at_zero):.3f}  univalent={sym.univalent}  full={sym.full}")

# Preimage counts at single points.
print("z^2 hits 0.25 this many times:", C.count_preimages(parse_symbol("power:k=2"), 0.25, rho_c=0.9))
print("the lft misses -0.9:", C.count_preimages(parse_symbol("lft:t=2"), -0.9, rho_c=0.99) == 0)

# The lft maps onto a disk of radius 3/4 tangent to the circle at 1, so it misses
# 1 - 9/16 of the area. Its counting function is an indicator, and not radial.
lft = parse_symbol("lft:t=2")
fld = C.area_field(lft)
print(f"lft fullness defect {C.fullness_defect(lft, fld):.4f} (image-disk value {1 - 0.75**2})")
radial, report = C.is_essentially_radial(lft)
print(f"lft radial? {radial}  (worst moment ratio {report.worst_ratio:.3f} at k = {report.worst_k})")

# Change of variables: int f(phi)|phi'|^2 dA = int f n_phi dA.
for spec in ("power:k=2", "poly:0,0.5,0.5"):
    sym = parse_symbol(spec)
    f = C.area_field(sym)
    lhs, rhs = C.change_of_variable_sides(sym, lambda w: np.abs(w) ** 2, f)
    energy = D.seminorm_sq(sym.taylor(256))
    print(f"{spec}: |w|^2 sides {lhs:.6f} / {rhs:.6f};  int n dA {C.counting_integral(f):.6f} vs energy {energy:.6f}")
