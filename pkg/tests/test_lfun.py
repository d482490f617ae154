from fractions import Fraction

import pytest

from asnp import fields as fq
from asnp.cyclo import CycNum
from asnp.errors import HypothesisError
from asnp.gnp import gnp_full, hodge
from asnp.lfun import (PolyOverFq, exp_sum, exp_sum_galois, functional_equation_holds,
                       histogram_fast, histogram_naive, l_poly, l_poly_rank_ell, np_of_l)
from asnp.polygon import lies_above, slopes


@pytest.mark.parametrize("p,b,coeffs,k", [
    (7, 1, [1, 0, 1], 1), (7, 1, [1, 0, 1], 2), (5, 1, [2, 1, 0, 3], 2),
    (3, 2, [1, 0, 0, 1], 1), (2, 2, [1, 1, 1], 2), (11, 1, [3, 4, 1], 2),
])
def test_fast_matches_naive(p, b, coeffs, k):
    f = PolyOverFq.from_ints(p, b, coeffs, const=1)
    F = f.field
    for code in (1, 2 % F.order or 1, F.order - 1):
        a = F.from_int(code)
        assert list(histogram_fast(f, k, a)) == list(histogram_naive(f, k, a))


def test_thread_count_does_not_change_result():
    f = PolyOverFq.from_ints(5, 1, [1, 2, 1])
    a = f.field.one()
    one = histogram_fast(f, 4, a, threads=1, chunk=37)
    many = histogram_fast(f, 4, a, threads=4, chunk=37)
    assert list(one) == list(many)


def test_galois_shortcut_matches_direct():
    f = PolyOverFq.from_ints(7, 2, [1, 3, 1])
    cache = {}
    for code in range(1, 49, 5):
        a = f.field.from_int(code)
        assert exp_sum_galois(f, 2, a, cache) == exp_sum(f, 2, a)
    assert len(cache) < 10


def test_constant_term_only_twists_by_root_of_unity():
    f = PolyOverFq.from_ints(5, 1, [1, 0, 1])
    g = f.with_const(f.field.from_int(2))
    a = f.field.one()
    L1, L2 = l_poly(f, a), l_poly(g, a)
    assert np_of_l(L1) == np_of_l(L2)


def test_x3_plus_x_over_f7():
    f = PolyOverFq.from_ints(7, 1, [1, 0, 1])
    L = l_poly(f, f.field.one())
    assert L.degree == 2
    assert [n for n, _, _ in L.checks["degree"]] == [3, 4, 5]
    assert all(status == "ok" for _, status, _ in L.checks["degree"])
    assert functional_equation_holds(L.coeffs, 7)
    assert np_of_l(L) == hodge(3)


def test_alpha_scan_p23():
    f = PolyOverFq.from_ints(23, 1, [1, 0, 1])
    ref = gnp_full(3, 23)
    cache = {}
    for code in range(1, 23):
        L = l_poly(f, f.field.from_int(code), galois_cache=cache)
        np_ = np_of_l(L)
        assert np_ == ref
        assert lies_above(np_, hodge(3))
        assert all(0 < s < 1 for s, _ in slopes(np_).items)


def test_naive_method_l_poly_agrees():
    f = PolyOverFq.from_ints(5, 1, [1, 1, 2])
    a = f.field.from_int(3)
    assert l_poly(f, a, method="naive").coeffs == l_poly(f, a).coeffs


def test_rank_two_dual_form():
    f = PolyOverFq.from_ints(3, 2, [1, 0, 0, 1])
    for ns in ([1, 0], [0, 1], [2, 1]):
        L, alpha = l_poly_rank_ell(f, 2, ns, check_dual=True)
        assert L.checks["dual_form"] == "ok"
        assert np_of_l(L).endpoint == (3, Fraction(3, 2))


def test_rejects_bad_input():
    with pytest.raises(HypothesisError):
        PolyOverFq.from_ints(3, 1, [1, 0, 1])  # gcd(3, 3) != 1
    with pytest.raises(HypothesisError):
        PolyOverFq.from_ints(7, 1, [1, 0])
    f = PolyOverFq.from_ints(7, 1, [1, 0, 1])
    with pytest.raises(HypothesisError):
        l_poly(f, f.field.zero())
    with pytest.raises(HypothesisError):
        PolyOverFq.from_ints(7, 1, [Fraction(1, 7), 0, 1])


def test_budget_marks_skipped():
    f = PolyOverFq.from_ints(7, 1, [1, 0, 1])
    L = l_poly(f, f.field.one(), budget=7 ** 3)
    assert [st for _, st, _ in L.checks["degree"]] == ["ok", "skipped", "skipped"]
