"""Generic Newton polygons against the Hodge polygon.

For each prime p the asymptotic generic polygon GNP(A^d, F_p) sits on or
above HP(A^d) and meets it exactly when p = 1 mod d.  The gap is measured by
the integers eps_i, printed here as a small table.
"""

import sympy

from asnp.gnp import epsilon_slopes, gnp_full, gnp_one_param, hodge, minimum_table
from asnp.polygon import slopes

d = 5
print(f"HP(A^{d}) slopes: {slopes(hodge(d))}")
print()
print(f"{'p':>5} {'p mod d':>7}  {'M_n':<16} {'eps':<18} GNP = HP")
for p in sympy.primerange(7, 80):
    M = minimum_table(d, p % d)
    eps = epsilon_slopes(d, p)
    print(f"{p:>5} {p % d:>7}  {str(M):<16} {str(eps):<18} {gnp_full(d, p) == hodge(d)}")

# The one-parameter family x^d + a x has its own (higher) generic polygon.
p = 103
print()
print(f"p={p}: GNP(A^{d})    slopes {slopes(gnp_full(d, p))}")
print(f"p={p}: GNP(A^{d}(1)) slopes {slopes(gnp_one_param(d, p))}")
