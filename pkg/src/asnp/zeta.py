"""Zeta functions of the Artin-Schreier curves y^{p^ell} - y = f(x) over F_q.

Two routes to the Newton polygon of the curve:

* direct: count points over F_{q^m} for m <= 2g and rebuild the numerator
  of Z(s) (exponential in g, only for tiny instances);
* product: union over alpha in F_{p^ell}^* of the normalized polygons of
  L_{alpha f}(chi_1, s).
"""

from dataclasses import dataclass
from fractions import Fraction

from . import fields as fq
from .cyclo import vp_int, INF
from .errors import ConsistencyError, HypothesisError
from .gnp import gnp_curve, gnp_full
from .lfun import DEGREE_CHECK_BUDGET, PolyOverFq, l_poly, np_of_l
from .polygon import hull_from_values, lies_above, polygon_from_slopes, slopes, union_slopes


@dataclass(frozen=True)
class CurveSpec:
    """X: y^{p^ell} - y = f(x) with f over F_q, q = p^b and ell | b."""

    ell: int
    f: PolyOverFq

    def __post_init__(self):
        if self.ell < 1 or self.f.b % self.ell:
            raise HypothesisError(f"ell={self.ell} must divide b={self.f.b}")

    @property
    def p(self):
        return self.f.p

    @property
    def b(self):
        return self.f.b

    @property
    def q(self):
        return self.f.field.order

    @property
    def d(self):
        return self.f.degree

    @property
    def genus(self):
        return (self.p ** self.ell - 1) * (self.d - 1) // 2


@dataclass(frozen=True)
class ZetaNumerator:
    """1 + c_1 s + ... + c_{2g} s^{2g} with integer coefficients."""

    coeffs: tuple
    q: int
    b: int

    @property
    def genus(self):
        return (len(self.coeffs) - 1) // 2

    def newton_polygon(self):
        p = _prime_of(self.q, self.b)
        pts = [(i, INF if c == 0 else Fraction(vp_int(c, p), self.b))
               for i, c in enumerate(self.coeffs)]
        return hull_from_values(pts)

    def slopes(self):
        return slopes(self.newton_polygon())


def _prime_of(q, b):
    p = round(q ** (1 / b))
    for cand in (p - 1, p, p + 1):
        if cand ** b == q:
            return cand
    raise ValueError(f"{q} is not a {b}-th power")


def count_points(curve, m):
    """#X(F_{q^m}) = p^ell * N_0 + 1, N_0 = #{x : Tr_{q^m/p^ell} f(x) = 0}."""
    f = curve.f
    E = fq.build_field(f.p, f.b * m)
    fq.check_enumerable(E.order, repr(E))
    cs = [fq.embed(c, E) for c in (f.const,) + f.coeffs]
    n0 = 0
    for x in fq.enumerate_field(E):
        if fq.trace_rel(fq.poly_eval(cs, x), curve.ell).is_zero():
            n0 += 1
    return curve.p ** curve.ell * n0 + 1


def _exp_series(a, top):
    """Coefficients z_0..z_top of exp(sum_{m>=1} a[m] s^m / m)."""
    z = [Fraction(1)]
    for n in range(1, top + 1):
        z.append(sum(Fraction(a[k]) * z[n - k] for k in range(1, n + 1)) / n)
    return z


def zeta_numerator_direct(curve, counts=None):
    """Numerator of Z(X/F_q, s) from point counts over F_{q^m}, m <= 2g."""
    g = curve.genus
    q = curve.q
    top = 2 * g
    if counts is None:
        counts = [None] + [count_points(curve, m) for m in range(1, top + 1)]
    z = _exp_series(counts, top)
    # multiply by (1 - s)(1 - q s) = 1 - (q+1) s + q s^2
    mult = [1, -(q + 1), q]
    num = []
    for n in range(top + 1):
        num.append(sum(mult[k] * z[n - k] for k in range(3) if n - k >= 0))
    if any(c.denominator != 1 for c in num):
        raise ConsistencyError("zeta numerator has non-integral coefficients")
    coeffs = tuple(int(c) for c in num)
    for i in range(g + 1):
        if coeffs[top - i] != q ** (g - i) * coeffs[i]:
            raise ConsistencyError(f"functional equation fails at i={i}")
    return ZetaNumerator(coeffs, q, curve.b)


def alpha_values(curve):
    """Nonzero elements of F_{p^ell}, in enumeration order."""
    K = fq.build_field(curve.p, curve.ell)
    return [a for a in fq.enumerate_field(K) if not a.is_zero()]


def l_functions(curve, budget=DEGREE_CHECK_BUDGET, threads=1, galois_cache=None):
    """[(alpha, L_{alpha f})] over alpha in F_{p^ell}^*."""
    cache = {} if galois_cache is None else galois_cache
    return [(a, l_poly(curve.f, a, budget=budget, threads=threads, galois_cache=cache))
            for a in alpha_values(curve)]


def zeta_slopes_product(curve, budget=DEGREE_CHECK_BUDGET, threads=1, galois_cache=None,
                        ls=None):
    """Union over alpha in F_{p^ell}^* of the slopes of NP_q(L_{alpha f})."""
    if ls is None:
        ls = l_functions(curve, budget=budget, threads=threads, galois_cache=galois_cache)
    ms = union_slopes([slopes(np_of_l(L)) for _, L in ls])
    if ms.width != 2 * curve.genus:
        raise ConsistencyError(f"slope count {ms.width} != 2g = {2 * curve.genus}")
    return ms


@dataclass(frozen=True)
class OrdinaryReport:
    np: object
    gnp_ref: object
    achieves: bool
    above: bool
    reference: str
    small_p: bool


def is_ordinary(curve, np_slopes=None, **kw):
    """Compare NP(X) with p^ell - 1 copies of the asymptotic GNP(A^d, F_p).

    ``small_p`` is set when the asymptotic polygon was degenerate for this p;
    the true generic polygon of the family (an infimum over all f) is not
    computed, so the comparison is only against the asymptotic one.
    """
    ms = np_slopes if np_slopes is not None else zeta_slopes_product(curve, **kw)
    ref = gnp_curve(curve.d, curve.p, curve.ell)
    above = lies_above(polygon_from_slopes(ms), polygon_from_slopes(ref))
    return OrdinaryReport(ms, ref, ms == ref, above, "asymptotic GNP",
                          gnp_full(curve.d, curve.p).degenerate)


__all__ = [
    "CurveSpec", "ZetaNumerator", "OrdinaryReport", "count_points", "zeta_numerator_direct",
    "zeta_slopes_product", "is_ordinary", "alpha_values", "l_functions",
]
