import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from asnp.errors import HypothesisError
from asnp.genpoly import (MultiPoly, check_key2, f_tilde, factor_partial, h_tilde,
                          height_bound, k_tilde, key2_floor, membership_U,
                          ordinary_certificate, psi_factors, sigma0, xi_exponent)
from asnp.gnp import gnp_full, units_mod
from asnp.lfun import PolyOverFq, l_poly, np_of_l

A = [None] + [MultiPoly.variable(3, k) for k in (1, 2, 3)]


def test_multipoly_arithmetic():
    x = (A[1] + A[2]) * (A[1] - A[2])
    assert x == A[1] * A[1] - A[2] * A[2]
    assert x.evaluate([2, 3, 5]) == -5
    assert x.is_homogeneous()


@settings(max_examples=50, deadline=None)
@given(st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3),
                       st.fractions(max_denominator=20), max_size=6))
def test_json_round_trip(terms):
    P = MultiPoly(3, terms)
    assert MultiPoly.from_json(3, P.to_json()) == P


def test_h_tilde_known_entry():
    expected = A[1] * A[3] * A[3] * Fraction(1, 3) - A[2] * A[2] * A[3] * Fraction(1, 9)
    assert h_tilde(3, 2, 1, 1) == expected


def test_k_tilde_known_entry():
    assert k_tilde(3, 5, 1, 1) == A[1] * A[3] + A[2] * A[2] * Fraction(1, 2)


@pytest.mark.parametrize("d", [3, 4, 5])
def test_scaling_homogeneity(d):
    # A_k -> c^k A_k scales H~_ij uniformly
    rng = random.Random(d)
    for r in units_mod(d):
        a = [Fraction(rng.randint(1, 9)) for _ in range(d)]
        c = Fraction(2)
        scaled = [c ** (k + 1) * x for k, x in enumerate(a)]
        for i in range(1, d):
            for j in range(1, d):
                H = h_tilde(d, r, i, j)
                v, w = H.evaluate(a), H.evaluate(scaled)
                assert (v == 0) == (w == 0)


def test_sigma0_certificates_small():
    for d in (3, 4, 5):
        for r in units_mod(d):
            for n in range(1, d):
                cert = sigma0(d, r, n)
                assert cert.ok, (d, r, n, cert)
                assert cert.xi == xi_exponent(d, r, n)
                assert not f_tilde(d, r, n).is_zero()


def test_literal_delta_breaks_key2():
    # with the written delta rule the congruence fails; the corrected rule holds
    d, p = 3, 31
    assert all(check_key2(d, p, i, j) for i in range(1, d) for j in range(1, d))
    assert h_tilde(d, 1, 1, 1, literal_delta=True) != h_tilde(d, 1, 1, 1)


def test_key2_needs_large_p():
    with pytest.raises(HypothesisError):
        check_key2(3, 7, 1, 1)
    assert key2_floor(3) == 20


def test_membership_and_height():
    assert membership_U([1, 1, 1]).in_U
    rep = membership_U([1, 0, 1])
    assert not rep.in_U and rep.failing_factor == (1, "H[1,2]")
    h = height_bound([1, 1, 1])
    assert h.complete and h.bound >= key2_floor(3)
    with pytest.raises(HypothesisError):
        height_bound([1, 0, 1])


def test_factor_partial():
    assert factor_partial(2 ** 5 * 3 * 10007) == ([2, 3, 10007], 1)
    big = 1000000007 * 1000000009
    ps, cof = factor_partial(6 * big)
    assert ps == [2, 3] and cof == big


def test_certificate_agrees_with_l_function():
    # at p = 23 a polynomial in U mod p has NP(L) = GNP for every alpha
    d, p = 3, 23
    coeffs = [1, 1, 1]
    assert ordinary_certificate(d, p, coeffs)
    f = PolyOverFq.from_ints(p, 1, coeffs)
    for code in (1, 5, 22):
        assert np_of_l(l_poly(f, f.field.from_int(code))) == gnp_full(d, p)


def test_psi_factors_shape():
    fs = psi_factors(4, 1)
    labels = [label for label, _ in fs]
    assert "A_d" in labels and len(fs) == 1 + 9 + 2
