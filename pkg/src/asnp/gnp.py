"""Generic Newton polygons of the families A^d and A^d(1).

For r in (Z/dZ)^* the residue costs are r_ij = (-(r i - j) mod d) and
r'_ij = (r i - j mod d), 1 <= i, j <= d-1.  M_n (resp. M'_n) is the minimum
of sum_i cost[i][sigma(i)] over sigma in S_n, and the generic polygons have
vertices

    w_n  = n(n+1)/(2d) + M_n / (d(p-1))
    w'_n = n(n+1)/(2d) + (d-1) M'_n / (d(p-1))

for 1 <= n <= d-2, closing at (d-1, (d-1)/2).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import gcd

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import HypothesisError
from .polygon import NewtonPolygon, SlopeMultiset, dilate, hull_from_values, slopes

#: Largest n for which the minimizer set is found by exhaustive search.
BRUTE_FORCE_MAX_N = 8


@dataclass(frozen=True)
class GnpSpec:
    d: int
    r: int
    p: int

    def __post_init__(self):
        if gcd(self.r, self.d) != 1 or not 0 < self.r < self.d:
            raise HypothesisError(f"r={self.r} is not a unit representative mod {self.d}")
        if self.p % self.d != self.r:
            raise HypothesisError(f"p={self.p} is not congruent to r={self.r} mod {self.d}")

    @classmethod
    def of(cls, d, p):
        if gcd(p, d) != 1:
            raise HypothesisError(f"gcd(p={p}, d={d}) != 1")
        return cls(d, p % d, p)


def residue_table(d, r, primed=False):
    """(d-1) x (d-1) nested tuple; entry [i-1][j-1] is r_ij (or r'_ij)."""
    if primed:
        return tuple(tuple((r * i - j) % d for j in range(1, d)) for i in range(1, d))
    return tuple(tuple((-(r * i - j)) % d for j in range(1, d)) for i in range(1, d))


def permutation_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def hungarian_value(cost):
    """Minimum assignment value (scipy's Hungarian-type solver)."""
    C = np.asarray(cost, dtype=np.int64)
    if C.size == 0:
        return 0
    rows, cols = linear_sum_assignment(C)
    return int(C[rows, cols].sum())


def _minimizers_dfs(cost, target):
    n = len(cost)
    # suffix lower bounds: row minima of remaining rows
    row_min = [min(row) for row in cost]
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + row_min[i]
    found = []
    perm = [0] * n
    used = [False] * n

    def rec(i, acc):
        if acc + suffix[i] > target:
            return
        if i == n:
            if acc == target:
                found.append(tuple(perm))
            return
        for j in range(n):
            if not used[j]:
                used[j] = True
                perm[i] = j
                rec(i + 1, acc + cost[i][j])
                used[j] = False

    rec(0, 0)
    return found


def assignment_min(cost):
    """(value, minimizers): the minimum of sum cost[i][s(i)] and all s attaining it.

    Permutations are 0-based tuples (s[i] = column of row i).
    """
    cost = [list(map(int, row)) for row in cost]
    n = len(cost)
    if n == 0:
        return 0, frozenset({()})
    if n <= BRUTE_FORCE_MAX_N:
        best, mins = None, []
        for perm in permutations(range(n)):
            v = sum(cost[i][perm[i]] for i in range(n))
            if best is None or v < best:
                best, mins = v, [perm]
            elif v == best:
                mins.append(perm)
        return best, frozenset(mins)
    value = hungarian_value(cost)
    return value, frozenset(_minimizers_dfs(cost, value))


@lru_cache(maxsize=None)
def minimum_table(d, r, primed=False):
    """(M_1, ..., M_{d-1}) for the given residue class."""
    table = residue_table(d, r, primed)
    out = []
    for n in range(1, d):
        sub = [row[:n] for row in table[:n]]
        if n <= BRUTE_FORCE_MAX_N:
            out.append(assignment_min(sub)[0])
        else:
            out.append(hungarian_value(sub))
    return tuple(out)


@lru_cache(maxsize=None)
def minimizer_set(d, r, n, primed=False):
    """S_n^min as a frozenset of 0-based permutation tuples."""
    table = residue_table(d, r, primed)
    sub = [row[:n] for row in table[:n]]
    return assignment_min(sub)[1]


def _check_dp(d, p):
    if d < 3:
        raise HypothesisError(f"d must be >= 3, got {d}")
    if gcd(p, d) != 1:
        raise HypothesisError(f"gcd(p={p}, d={d}) != 1")


def _generic(d, p, primed):
    _check_dp(d, p)
    r = p % d
    M = minimum_table(d, r, primed)
    scale = (d - 1) if primed else 1
    pts = [(0, Fraction(0))]
    for n in range(1, d - 1):
        pts.append((n, Fraction(n * (n + 1), 2 * d) + Fraction(scale * M[n - 1], d * (p - 1))))
    pts.append((d - 1, Fraction(d - 1, 2)))
    hull = hull_from_values(pts)
    # a listed point strictly above the hull means the list was not convex
    degenerate = any(y > hull(x) for x, y in pts)
    return NewtonPolygon(hull.vertices, degenerate=degenerate)


def gnp_full(d, p):
    """Asymptotic generic Newton polygon GNP(A^d, F_p).

    For small p the listed points need not be convex; the lower hull is
    returned with ``degenerate=True`` in that case.
    """
    return _generic(d, p, primed=False)


def gnp_one_param(d, p):
    """Asymptotic generic Newton polygon GNP(A^d(1), F_p) of x^d + a x."""
    return _generic(d, p, primed=True)


def hodge(d):
    """HP(A^d): vertices (n, n(n+1)/(2d)), 0 <= n <= d-1."""
    if d < 3:
        raise HypothesisError(f"d must be >= 3, got {d}")
    return NewtonPolygon(tuple((n, _frac(n * (n + 1), 2 * d)) for n in range(d)))


def _frac(a, b):
    f = Fraction(a, b)
    return f.numerator if f.denominator == 1 else f


def hodge_curve(d, p, ell):
    """HP_g as a slope multiset: p^ell - 1 copies of every HP(A^d) slope."""
    return slopes(hodge(d)).scaled(p ** ell - 1)


def gnp_curve(d, p, ell, family="full"):
    """GNP^{p^ell - 1}: the curve-level generic polygon as a slope multiset."""
    base = gnp_full(d, p) if family == "full" else gnp_one_param(d, p)
    return slopes(base).scaled(p ** ell - 1)


def epsilon_slopes(d, p):
    """[eps_1, ..., eps_{d-1}] with eps_i = M_i - M_{i-1} (M_0 = 0)."""
    _check_dp(d, p)
    M = (0,) + minimum_table(d, p % d)
    eps = [M[i] - M[i - 1] for i in range(1, d)]
    for i, e in enumerate(eps, start=1):
        if not -(i - 1) * (d - 1) <= e <= i * (d - 1):
            raise AssertionError(f"eps_{i}={e} out of bounds for d={d}")
    return eps


def epsilon_slope_values(d, p):
    """The slopes i/d + eps_i/(d(p-1)) as Fractions."""
    return [Fraction(i, d) + Fraction(e, d * (p - 1))
            for i, e in enumerate(epsilon_slopes(d, p), start=1)]


def units_mod(d):
    return [r for r in range(1, d) if gcd(r, d) == 1]


__all__ = [
    "GnpSpec", "residue_table", "assignment_min", "hungarian_value", "minimum_table",
    "minimizer_set", "gnp_full", "gnp_one_param", "hodge", "hodge_curve", "gnp_curve",
    "epsilon_slopes", "epsilon_slope_values", "permutation_sign", "units_mod", "dilate",
    "SlopeMultiset",
]
