import itertools
import random

import pytest

from asnp import fields as fq
from asnp.errors import FeasibilityError


@pytest.mark.parametrize("p,n", [(2, 1), (2, 4), (3, 3), (5, 2), (7, 3), (23, 2)])
def test_field_axioms(p, n):
    F = fq.build_field(p, n)
    rng = random.Random(p * 100 + n)
    for _ in range(50):
        a, b, c = (F.from_int(rng.randrange(F.order)) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        if not a.is_zero():
            assert a * a.inverse() == F.one()
        assert a ** F.order == a


def test_defining_polynomial_is_least_irreducible():
    # F_4: x^2 + x + 1 is the only irreducible quadratic over F_2
    F = fq.build_field(2, 2)
    w = F.gen()
    assert w * w + w + F.one() == F.zero()


@pytest.mark.parametrize("p,n", [(2, 3), (3, 2), (5, 3), (7, 2)])
def test_trace_matches_frobenius_sum(p, n):
    F = fq.build_field(p, n)
    for x in fq.enumerate_field(F):
        acc = x
        y = x
        for _ in range(n - 1):
            y = y.frobenius()
            acc = acc + y
        assert acc.in_prime_field()
        assert fq.trace_abs(x) == acc.coeffs[0]


def test_trace_is_linear_and_surjective():
    F = fq.build_field(3, 4)
    values = {fq.trace_abs(x) for x in fq.enumerate_field(F)}
    assert values == {0, 1, 2}


def test_dual_basis():
    F = fq.build_field(5, 3)
    basis = [F.elem([1, 0, 0]), F.elem([1, 1, 0]), F.elem([0, 2, 1])]
    dual = fq.dual_basis(basis)
    for i, j in itertools.product(range(3), repeat=2):
        assert fq.trace_abs(basis[i] * dual[j]) == (1 if i == j else 0)


def test_relative_trace_lands_in_subfield():
    F = fq.build_field(3, 4)
    sub = set(x.coeffs for x in fq.subfield_elements(F, 2))
    assert len(sub) == 9
    for x in list(fq.enumerate_field(F))[:40]:
        assert fq.trace_rel(x, 2).coeffs in sub


def test_embedding_is_a_ring_map():
    src, dst = fq.build_field(3, 2), fq.build_field(3, 4)
    rng = random.Random(1)
    for _ in range(30):
        a, b = (src.from_int(rng.randrange(9)) for _ in range(2))
        assert fq.embed(a * b, dst) == fq.embed(a, dst) * fq.embed(b, dst)
        assert fq.embed(a + b, dst) == fq.embed(a, dst) + fq.embed(b, dst)


def test_discrete_log_and_trace_table():
    F = fq.build_field(7, 2)
    g = F.primitive
    T = fq.trace_power_table(F)
    for m in range(0, F.order - 1, 5):
        x = g ** m
        assert fq.discrete_log(x) == m
        assert int(T[m]) == fq.trace_abs(x)


def test_log_of_embedded():
    src, dst = fq.build_field(5, 1), fq.build_field(5, 2)
    for k in range(1, 5):
        x = src.from_int(k)
        assert dst.primitive ** fq.log_of_embedded(x, dst) == fq.embed(x, dst)


def test_enumeration_cap():
    with pytest.raises(FeasibilityError) as info:
        fq.check_enumerable(2 ** 41)
    assert info.value.cost == 2 ** 41


def test_poly_eval_horner():
    F = fq.build_field(11, 1)
    x = F.from_int(3)
    assert fq.poly_eval([F.from_int(c) for c in (1, 0, 2)], x).to_int() == (1 + 2 * 9) % 11
