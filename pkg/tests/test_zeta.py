from fractions import Fraction

import pytest

from asnp import fields as fq
from asnp.errors import HypothesisError
from asnp.lfun import PolyOverFq
from asnp.zeta import (CurveSpec, count_points, is_ordinary, zeta_numerator_direct,
                       zeta_slopes_product)


def brute_count(curve, m):
    """Affine solutions of y^{p^ell} - y = f(x) over F_{q^m}, plus infinity."""
    E = fq.build_field(curve.p, curve.b * m)
    cs = [fq.embed(c, E) for c in (curve.f.const,) + curve.f.coeffs]
    P = curve.p ** curve.ell
    image = {}
    for y in fq.enumerate_field(E):
        key = (y ** P - y).coeffs
        image[key] = image.get(key, 0) + 1
    total = sum(image.get(fq.poly_eval(cs, x).coeffs, 0) for x in fq.enumerate_field(E))
    return total + 1


@pytest.mark.parametrize("p,ell,b,coeffs", [(2, 1, 1, [1, 0, 1]), (3, 1, 1, [1, 0, 0, 1]),
                                            (2, 1, 2, [1, 1, 1])])
def test_point_count_against_brute_force(p, ell, b, coeffs):
    curve = CurveSpec(ell, PolyOverFq.from_ints(p, b, coeffs))
    for m in (1, 2, 3):
        if (p ** b) ** m <= 4096:
            assert count_points(curve, m) == brute_count(curve, m)


def test_numerator_is_symmetric_and_integral():
    curve = CurveSpec(1, PolyOverFq.from_ints(2, 1, [1, 0, 1]))
    Z = zeta_numerator_direct(curve)
    g, q = Z.genus, Z.q
    assert g == curve.genus == 1
    for i in range(2 * g + 1):
        assert Z.coeffs[2 * g - i] == q ** (g - i) * Z.coeffs[i]


@pytest.mark.parametrize("p,ell,b,coeffs", [
    (2, 1, 1, [1, 0, 1]), (2, 1, 1, [0, 1, 1]), (3, 1, 1, [1, 0, 0, 1]),
    (2, 2, 2, [1, 0, 1]), (2, 1, 3, [1, 0, 1]), (2, 1, 1, [1, 1, 1, 0, 1]),
])
def test_direct_equals_product(p, ell, b, coeffs):
    curve = CurveSpec(ell, PolyOverFq.from_ints(p, b, coeffs))
    assert zeta_numerator_direct(curve).slopes() == zeta_slopes_product(curve)


def test_ordinary_report():
    curve = CurveSpec(1, PolyOverFq.from_ints(7, 1, [1, 1, 1]))
    rep = is_ordinary(curve)
    assert rep.achieves and rep.above and rep.reference == "asymptotic GNP"
    assert rep.np.width == 2 * curve.genus


def test_ell_must_divide_b():
    with pytest.raises(HypothesisError):
        CurveSpec(2, PolyOverFq.from_ints(3, 1, [1, 0, 0, 1]))
