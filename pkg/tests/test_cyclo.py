import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from asnp.cyclo import (INF, CycNum, norm, resultant, resultant_euclid, valuation,
                        valuation_by_stripping, vp_int, vp_rational, zeta_power_combination)

PRIMES = [3, 5, 7, 11]


def random_cyc(p, rng, lo=-6, hi=6):
    return CycNum(p, tuple(rng.randint(lo, hi) for _ in range(p - 1)))


def test_vp_helpers():
    assert vp_int(48, 2) == 4
    assert vp_int(0, 3) is INF
    assert vp_rational(Fraction(9, 50), 5) == -2


def test_zeta_relations():
    p = 5
    z = CycNum.zeta_power(p, 1)
    assert z ** p == CycNum.one(p)
    total = sum((CycNum.zeta_power(p, k) for k in range(p)), CycNum.zero(p))
    assert total.is_zero()


def test_pi_has_valuation_one_over_p_minus_one():
    for p in PRIMES:
        pi = CycNum.one(p) - CycNum.zeta_power(p, 1)
        assert valuation(pi) == Fraction(1, p - 1)
        assert valuation(CycNum.rational(p, p)) == 1


def test_resultant_agrees_with_euclid():
    rng = random.Random(3)
    for _ in range(40):
        f = [rng.randint(-5, 5) for _ in range(rng.randint(2, 6))]
        g = [rng.randint(-5, 5) for _ in range(rng.randint(2, 6))]
        if not f[-1] or not g[-1]:
            continue
        assert resultant(f, g) == resultant_euclid(f, g)


def test_norm_is_multiplicative():
    rng = random.Random(4)
    for p in PRIMES:
        a, b = random_cyc(p, rng), random_cyc(p, rng)
        assert norm(a * b) == norm(a) * norm(b)


@pytest.mark.parametrize("p", PRIMES)
def test_valuation_properties_random_pairs(p):
    rng = random.Random(p)
    for _ in range(60):
        a, b = random_cyc(p, rng), random_cyc(p, rng)
        va, vb = valuation(a), valuation(b)
        vab = valuation(a * b)
        if va is INF or vb is INF:
            assert vab is INF
        else:
            assert vab == va + vb
        vs = valuation(a + b)
        if va is not INF and vb is not INF:
            assert vs is INF or vs >= min(va, vb)
            if va != vb:
                assert vs == min(va, vb)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES), st.lists(st.integers(-20, 20), min_size=10, max_size=10))
def test_norm_and_stripping_agree(p, raw):
    a = CycNum(p, tuple(raw[: p - 1] + [0] * max(0, p - 1 - len(raw))))
    assert valuation(a) == valuation_by_stripping(a)


def test_galois_action():
    p = 7
    rng = random.Random(9)
    a, b = random_cyc(p, rng), random_cyc(p, rng)
    for k in range(1, p):
        assert (a * b).galois(k) == a.galois(k) * b.galois(k)
        assert valuation(a.galois(k)) == valuation(a)
    assert a.conjugate().conjugate() == a


def test_zeta_power_combination():
    p = 3
    # 2 + z + 0*z^2
    c = zeta_power_combination(p, [2, 1, 0])
    assert c == CycNum.rational(p, 2) + CycNum.zeta_power(p, 1)
