import random
from fractions import Fraction
from math import factorial

import pytest
import sympy

from asnp.cyclo import CycNum
from asnp.dwork import (GammaPoly, TruncatedMatrix, artin_hasse_coeffs, check_leading_vs_k,
                        g_n_leading, leading_minors, np_transform_check, principal_minor_sums,
                        q_aux_poly, random_transform_matrix, standard_bounds)
from asnp.errors import ConsistencyError
from asnp.genpoly import MultiPoly, key2_floor
from asnp.gnp import units_mod


def exp_series_oracle(p, N):
    """exp(sum_k x^{p^k}/p^k) by sympy series expansion."""
    x = sympy.symbols("x")
    k, arg = 0, 0
    while p ** k <= N:
        arg += x ** (p ** k) / sympy.Integer(p) ** k
        k += 1
    s = sympy.series(sympy.exp(arg), x, 0, N + 1).removeO()
    return [Fraction(str(s.coeff(x, m))) for m in range(N + 1)]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_artin_hasse_against_series(p):
    assert list(artin_hasse_coeffs(p, 12).coeffs) == exp_series_oracle(p, 12)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_artin_hasse_integrality(p):
    E = artin_hasse_coeffs(p, 200)
    assert all(c.denominator % p for c in E.coeffs)
    assert E[2] == (1 if p == 2 else Fraction(1, 2))
    for m in range(min(p, 10)):
        assert E[m] == Fraction(1, factorial(m))


def test_g_n_leading_trivial_cases():
    A = [MultiPoly.variable(4, k) for k in (1, 2, 3, 4)]
    assert g_n_leading(4, 29, 1) == (1, A[0])
    assert g_n_leading(4, 29, 4) == (1, A[3])


def test_leading_matches_k_tilde():
    for d in (3, 4):
        for p in sympy.primerange(key2_floor(d), 80):
            if p % d == 0:
                continue
            for i in range(1, d):
                for j in range(1, d):
                    assert check_leading_vs_k(d, p, i, j)


def g(e, c=1):
    return GammaPoly.monomial(e, c)


def test_q_aux_examples():
    one, zero = g(0), GammaPoly()
    ident = [[one if i == j else zero for j in range(3)] for i in range(3)]
    assert q_aux_poly(ident) == [one, one, one, one]
    diag = [[g(k + 1) if i == j == k else zero for j in range(3)] for i, k in zip(range(3), range(3))]
    assert q_aux_poly(diag) == [one, g(1), g(3), g(6)]
    sing = [[g(1), g(0)], [g(2), g(1)]]
    assert leading_minors(sing) == [g(1), zero]


def test_gamma_valuation_ties_raise():
    assert g(2, 3).valuation(3) == Fraction(2, 2) + 1
    with pytest.raises(ConsistencyError):
        (g(0, 1) + g(2, Fraction(1, 3))).valuation(3)


def test_char_poly_of_diagonal():
    p = 5
    pi = CycNum.one(p) - CycNum.zeta_power(p, 1)
    z = CycNum.zero(p)
    vals = [pi, pi ** 2, pi ** 5]
    M = [[vals[i] if i == j else z for j in range(3)] for i in range(3)]
    c = principal_minor_sums(M)
    assert c[3] == -(vals[0] * vals[1] * vals[2])
    h = (Fraction(1, 4), Fraction(1, 2), Fraction(1))
    rep = np_transform_check(TruncatedMatrix(p, tuple(map(tuple, M)), h), Fraction(1, 4))
    assert rep.hypotheses_hold and rep.equal


def test_standard_bounds():
    h, delta = standard_bounds(7, 4)
    assert h == (0, Fraction(2, 6), Fraction(3, 6), Fraction(5, 6), 1)
    assert delta == Fraction(1, 6)


@pytest.mark.parametrize("p,t", [(5, 3), (7, 3)])
def test_transform_property_small(p, t):
    rng = random.Random(p * 10 + t)
    for _ in range(15):
        M, delta = random_transform_matrix(p, t, rng)
        rep = np_transform_check(M, delta)
        assert rep.hypotheses_hold and rep.equal
    M, delta = random_transform_matrix(p, t, rng, violate=True)
    rep = np_transform_check(M, delta)
    assert not rep.hypotheses_hold and not rep.equal
