import random
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
import sympy

from asnp.errors import HypothesisError
from asnp.gnp import (assignment_min, epsilon_slope_values, epsilon_slopes, gnp_curve,
                      gnp_full, gnp_one_param, hodge, hodge_curve, hungarian_value,
                      minimizer_set, minimum_table, residue_table, units_mod)
from asnp.polygon import lies_above, slopes


def brute(cost):
    n = len(cost)
    best, arg = None, set()
    for s in permutations(range(n)):
        v = sum(cost[i][s[i]] for i in range(n))
        if best is None or v < best:
            best, arg = v, {s}
        elif v == best:
            arg.add(s)
    return best, frozenset(arg)


def test_assignment_against_brute_force():
    rng = random.Random(0)
    for _ in range(1000):
        n = rng.randint(1, 5)
        cost = [[rng.randint(0, 6) for _ in range(n)] for _ in range(n)]
        assert assignment_min(cost) == brute(cost)
        assert hungarian_value(np.array(cost)) == brute(cost)[0]


def test_large_assignment_uses_solver():
    rng = random.Random(1)
    cost = [[rng.randint(0, 3) for _ in range(10)] for _ in range(10)]
    value, perms = assignment_min(cost)
    assert value == hungarian_value(np.array(cost))
    for s in perms:
        assert sum(cost[i][s[i]] for i in range(10)) == value


def test_residue_tables():
    assert residue_table(3, 2) == ((2, 0), (0, 1))
    assert residue_table(3, 2, primed=True) == ((1, 0), (0, 2))


def test_known_small_values():
    # d=3, p=5 (r=2): M = (2, 0), vertex at (1, 1/3 + 2/12) = (1, 1/2)
    assert minimum_table(3, 2) == (2, 0)
    assert gnp_full(3, 5).vertices == ((0, 0), (2, 1))
    assert gnp_full(3, 11).vertices == ((0, 0), (1, Fraction(2, 5)), (2, 1))
    assert gnp_full(3, 7) == hodge(3)


def test_minimizers_are_exactly_optimal():
    for d in (4, 5, 6):
        for r in units_mod(d):
            table = residue_table(d, r)
            for n in range(1, d):
                sub = [row[:n] for row in table[:n]]
                assert minimizer_set(d, r, n) == brute(sub)[1]


@pytest.mark.parametrize("d", [3, 4, 5, 7])
def test_gnp_between_hodge_and_line(d):
    for p in sympy.primerange(d + 1, 200):
        if p % d == 0:
            continue
        g = gnp_full(d, p)
        assert lies_above(g, hodge(d))
        assert g.endpoint == (d - 1, Fraction(d - 1, 2))
        assert lies_above(gnp_one_param(d, p), hodge(d))


def test_gnp_hodge_criterion_sweep():
    for d in range(3, 9):
        for p in sympy.primerange(2, 300):
            if p % d == 0 or d % p == 0:
                continue
            assert (gnp_full(d, p) == hodge(d)) == (p % d == 1), (d, p)


def test_epsilon_bounds_and_values():
    for d in range(3, 10):
        for p in sympy.primerange(d + 1, 120):
            if p % d:
                eps = epsilon_slopes(d, p)
                assert sum(eps) == 0
                vals = epsilon_slope_values(d, p)
                assert sum(vals) == Fraction(d - 1, 2)


def test_curve_multisets():
    assert hodge_curve(3, 5, 1).width == 2 * 4
    assert gnp_curve(3, 5, 2).width == 2 * 24
    assert gnp_curve(3, 5, 1) == slopes(gnp_full(3, 5)).scaled(4)


def test_bad_parameters():
    with pytest.raises(HypothesisError):
        gnp_full(3, 3)
    with pytest.raises(HypothesisError):
        gnp_full(2, 5)
