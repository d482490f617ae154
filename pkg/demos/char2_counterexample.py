"""In characteristic 2 the Newton polygon can depend on alpha.

f = x^11 + x^9 + x^5 over F_4.  The curve y^2 - y = f(x) is supersingular
(one slope 1/2 repeated), while twisting f by a generator w of F_4 changes
the polygon of the L-function.
"""

from asnp.lfun import PolyOverFq, l_poly, np_of_l
from asnp.polygon import slopes
from asnp.zeta import CurveSpec, zeta_slopes_product

f = PolyOverFq.from_ints(2, 2, [0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1])
F = f.field
w = F.gen()

L1 = l_poly(f, F.one())
Lw = l_poly(f, w)
print("NP(L_f)   :", slopes(np_of_l(L1)))
print("NP(L_wf)  :", slopes(np_of_l(Lw)))
print("NP(X_f)   :", zeta_slopes_product(CurveSpec(1, f), ls=[(F.one(), L1)]))

fw = PolyOverFq(F, tuple(w * c for c in f.coeffs))
print("NP(X_wf)  :", zeta_slopes_product(CurveSpec(1, fw)))
