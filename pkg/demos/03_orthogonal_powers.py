"""Powers of a symbol are orthogonal exactly when n_phi is radial.

Run with ``python demos/03_orthogonal_powers.py`` (about 40 s, mostly the slit map).
"""

from dirlab import counting as C
from dirlab import space as D
from dirlab.symbols import parse_symbol

cases = [
    ("power:k=3", 64),
    ("rotation:theta=1", 64),
    ("slit:c=0.5", 32768),  # coefficients decay like k^(-3/2)
    ("poly:0,0.5,0.5", 64),
    ("lft:t=2", 256),
]
for spec, N in cases:
    sym = parse_symbol(spec)
    G = D.gram_powers(sym, size=6, N=N)
    radial, rep = C.is_essentially_radial(sym)
    print(f"{spec:18s} max |<phi^n, phi^m>|, n != m: {G.max_off_diagonal():.2e}   radial: {radial}")

G = D.gram_powers(parse_symbol("poly:0,0.5,0.5"), size=3, N=16)
print("witness entry <phi^2, phi> =", G[2, 1].real)
print(G.to_csv())
