"""Compression norms of composition operators.

The largest singular value of each truncation is a lower bound for the
operator norm, so the ladders below climb towards the true value.
Run with ``python demos/04_operator_norms.py``.
"""

from dirlab import operators as O
from dirlab.symbols import parse_symbol

# Univalent full maps: the norm depends only on |phi(0)|.
for spec in ("mobius:p=0.5", "mobius:p=0.5|slit:c=0.5"):
    sym = parse_symbol(spec)
    target = O.norm_formula(abs(sym.value_at_zero))
    ladder = O.norm_ladder(sym)
    print(spec, " ".join(f"N={r.truncation}:{r.value:.8f}" for r in ladder), f"target {target:.8f}")

# A univalent map fixing 0 that is not full can still have restricted norm 1.
lft = parse_symbol("lft:t=2")
print("lft on D_0:", " ".join(f"{r.value:.6f}" for r in O.norm_ladder(lft, restricted=True)))

# z/2 attains the bound sup|phi| on D_0.
half = parse_symbol("poly:0,0.5")
print("z/2 on D_0:", O.restricted_norm_D0(O.build_matrix(half, 64)).value, "bound", O.d0_norm_bound(0.5))

# Essential-norm profile s_n = ||C_phi R_n|| falls towards 1 for an automorphism.
prof = O.essential_norm_profile(O.build_matrix(parse_symbol("mobius:p=0.5"), 256), 32)
print("automorphism s_1, s_8, s_32:", [round(prof[i], 8) for i in (0, 7, 31)])

# Isometries: rotations exactly; the slit map only up to its slowly decaying series tail.
for spec, N, block in (("rotation:theta=1", 64, 32), ("slit:c=0.5", 256, 64), ("slit:c=0.5", 2048, 8)):
    d = O.isometry_defect(O.build_matrix(parse_symbol(spec), N), block)
    print(f"isometry defect {spec} N={N} block={block}: {d:.3e}")
