"""L-functions of alpha * (x^3 + x) over F_p for every alpha.

Each L-polynomial is computed from exponential sums (histograms of the
trace over F_{p^k}), then its Newton polygon is compared with the generic
one.  The polygon does not depend on alpha.
"""

import sys
import time
from collections import Counter

from asnp.gnp import gnp_full, hodge
from asnp.lfun import PolyOverFq, l_poly, np_of_l
from asnp.polygon import slopes

p = int(sys.argv[1]) if len(sys.argv) > 1 else 29
f = PolyOverFq.from_ints(p, 1, [1, 0, 1])

t0 = time.perf_counter()
cache = {}
seen = Counter()
for a in range(1, p):
    L = l_poly(f, f.field.from_int(a), galois_cache=cache)
    seen[str(slopes(np_of_l(L)))] += 1
dt = time.perf_counter() - t0

print(f"x^3 + x over F_{p}: {p - 1} values of alpha in {dt:.2f}s")
for s, n in seen.items():
    print(f"  {n:3d} x slopes {s}")
print(f"GNP(A^3, F_{p}) slopes {slopes(gnp_full(3, p))}")
print(f"HP(A^3)         slopes {slopes(hodge(3))}")
