"""Finite truncations of the polygon-transform statement.

Random (t+1) x (t+1) matrices over Q(zeta_p) are built with prescribed row
valuations; the slope < 1 part of det(1 - M s) is then compared with the
polygon of the leading-minor polynomial Q_M.
"""

import random

from asnp.dwork import (artin_hasse_coeffs, np_transform_check, random_transform_matrix,
                        standard_bounds)
from asnp.polygon import slopes

for p in (2, 3, 5):
    E = artin_hasse_coeffs(p, 8)
    print(f"Artin-Hasse p={p}:", [str(c) for c in E.coeffs])

rng = random.Random(7)
p, t = 5, 3
h, delta = standard_bounds(p, t)
print(f"\nrow bounds h = {[str(x) for x in h]}, delta = {delta}")
for _ in range(5):
    M, delta = random_transform_matrix(p, t, rng)
    rep = np_transform_check(M, delta)
    print(f"  NP(det)^<1 {slopes(rep.np_det)}  NP(Q_M) {slopes(rep.np_q)}  equal={rep.equal}")

M, delta = random_transform_matrix(p, t, rng, violate=True)
rep = np_transform_check(M, delta)
print("violating sample:", rep.failed)
