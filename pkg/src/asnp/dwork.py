"""Artin-Hasse coefficients, leading terms of the Dwork entries G_n, and the
polygon-transform check on finite matrices.

The uniformizer gamma (a root of log E with v_p(gamma) = 1/(p-1)) is never
expanded.  Quantities are kept as formal polynomials in gamma with p-integral
rational coefficients, and only their gamma-adic leading terms are used.
For concrete matrices over Q(zeta_p) the uniformizer pi = 1 - zeta plays the
same role.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod

from .cyclo import INF, CycNum, valuation, vp_rational
from .errors import ConsistencyError, HypothesisError
from .genpoly import MultiPoly, k_tilde
from .polygon import hull_from_values, truncate_lt_one

# ---------------------------------------------------------------------------
# Artin-Hasse exponential
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ArtinHasseSeries:
    """E(x) = sum e_m x^m to order N; lambda_m = e_m gamma^m."""

    p: int
    coeffs: tuple

    @property
    def N(self):
        return len(self.coeffs) - 1

    def __getitem__(self, m):
        return self.coeffs[m]


@lru_cache(maxsize=None)
def artin_hasse_coeffs(p, N):
    """Coefficients of exp(sum_k x^{p^k}/p^k) up to x^N.

    From E' = (sum_k x^{p^k - 1}) E: n e_n = sum_{p^k <= n} e_{n - p^k}.
    """
    if N < 1:
        raise HypothesisError("truncation order must be >= 1")
    powers = []
    q = 1
    while q <= N:
        powers.append(q)
        q *= p
    e = [Fraction(1)]
    for n in range(1, N + 1):
        e.append(sum(e[n - q] for q in powers if q <= n) / n)
    for m, c in enumerate(e):
        if c.denominator % p == 0:
            raise ConsistencyError(f"e_{m} = {c} is not p-integral")
        if m < p and c != Fraction(1, factorial(m)):
            raise ConsistencyError(f"e_{m} differs from 1/{m}!")
    return ArtinHasseSeries(p, tuple(e))


# ---------------------------------------------------------------------------
# formal gamma-polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GammaScaled:
    """gamma^exp * value, value a rational or CycNum."""

    exp: int
    value: object

    def valuation(self, p):
        v = _value_valuation(self.value, p)
        return INF if v is INF else Fraction(self.exp, p - 1) + v

    def __mul__(self, other):
        return GammaScaled(self.exp + other.exp, self.value * other.value)


def _value_valuation(x, p):
    if isinstance(x, CycNum):
        return valuation(x)
    return vp_rational(x, p)


class GammaPoly:
    """Finite sum of c_e gamma^e with rational coefficients (immutable)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {e: Fraction(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, e, c=1):
        return cls({e: c})

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in _as_gamma(other).terms.items():
            out[e] = out.get(e, 0) + c
        return GammaPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return GammaPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_gamma(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GammaPoly({e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return GammaPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, GammaPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def valuation(self, p):
        """v_p of the value, when one term has strictly least valuation.

        Terms with equal valuation could cancel once gamma is specialized, so
        that case raises instead of guessing.
        """
        if not self.terms:
            return INF
        vals = sorted((Fraction(e, p - 1) + vp_rational(c, p), e) for e, c in self.terms.items())
        if len(vals) > 1 and vals[0][0] == vals[1][0]:
            raise ConsistencyError("valuation undetermined: tied leading terms")
        return vals[0][0]

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})g^{e}" for e, c in sorted(self.terms.items()))


def _as_gamma(x):
    if isinstance(x, GammaPoly):
        return x
    return GammaPoly({0: x})


# ---------------------------------------------------------------------------
# leading terms of G_n
# ---------------------------------------------------------------------------

def _compositions(n, d, count):
    """m in Z_{>=0}^d with sum k m_k = n and sum m_k = count."""
    out = []

    def rec(k, rest, left, acc):
        if k == 0:
            if rest == 0 and left == 0:
                out.append(tuple(reversed(acc)))
            return
        if rest < left or rest > k * left:
            return
        for x in range(min(left, rest // k), -1, -1):
            rec(k - 1, rest - k * x, left - x, acc + [x])

    rec(d, n, count, [])
    return out


def g_n_leading(d, p, n):
    """(c, lead) with G_n = gamma^c * lead (mod gamma^{c+1}), c = ceil(n/d)."""
    if n < 1:
        raise HypothesisError("n must be >= 1")
    c = -((-n) // d)
    comps = _compositions(n, d, c)
    if any(x > p - 1 for m in comps for x in m):
        raise HypothesisError(f"minimal stratum for n={n} has an exponent >= p={p}")
    terms = {m: Fraction(1, prod(factorial(x) for x in m)) for m in comps}
    return c, MultiPoly(d, terms)


def check_leading_vs_k(d, p, i, j):
    """g_n_leading at n = pi - j agrees with K~_ij."""
    c, lead = g_n_leading(d, p, p * i - j)
    return c == -((j - p * i) // d) and lead == k_tilde(d, p, i, j)


# ---------------------------------------------------------------------------
# determinants and Q_M
# ---------------------------------------------------------------------------

def _det(rows):
    """Determinant by cofactor expansion over column subsets (no division)."""
    n = len(rows)
    if n == 0:
        return None
    memo = {}

    def rec(i, used):
        if i == n:
            return 1
        if used in memo:
            return memo[used]
        acc = None
        sign = 1
        for j in range(n):
            if used >> j & 1:
                continue
            # sign of removing column j among the remaining ones
            rest = rec(i + 1, used | (1 << j))
            term = rows[i][j] * rest
            if sign < 0:
                term = -term
            acc = term if acc is None else acc + term
            sign = -sign
        memo[used] = acc
        return acc

    return rec(0, 0)


def leading_minors(M, upto=None):
    """[det of the top-left n x n block for n = 1..upto]."""
    n = len(M) if upto is None else upto
    return [_det([row[:k] for row in M[:k]]) for k in range(1, n + 1)]


def q_aux_poly(M, upto=None):
    """Coefficients [1, det_1, ..., det_upto] of Q_M(s)."""
    minors = leading_minors(M, upto)
    one = minors[0] * 0 + 1 if minors else 1
    return [one] + minors


def principal_minor_sums(M):
    """Coefficients of det(1 - M s): c_n = (-1)^n sum of n x n principal minors."""
    n = len(M)
    zero = M[0][0] * 0
    coeffs = [zero + 1] + [zero for _ in range(n)]
    for mask in range(1, 1 << n):
        idx = [i for i in range(n) if mask >> i & 1]
        minor = _det([[M[i][j] for j in idx] for i in idx])
        k = len(idx)
        coeffs[k] = coeffs[k] + (minor if k % 2 == 0 else -minor)
    return coeffs


# ---------------------------------------------------------------------------
# polygon-transform check
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TruncatedMatrix:
    """Square matrix over Q(zeta_p) with declared row bounds h_1, ..., h_size."""

    p: int
    entries: tuple
    h: tuple

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries) or len(self.h) != n:
            raise HypothesisError("entries must be square with one bound per row")

    @property
    def size(self):
        return len(self.entries)

    @property
    def t(self):
        """Number of rows with h_i < 1."""
        return sum(1 for x in self.h if x < 1)


@dataclass(frozen=True)
class TransformReport:
    hypotheses_hold: bool
    failed: tuple
    np_det: object
    np_q: object
    equal: bool


def row_valuations(M):
    return [min(valuation(x) for x in row) for row in M.entries]


def np_transform_check(M, delta):
    """Compare NP^{<1}(det(1 - M s)) with NP(Q_M) under the row-bound hypotheses."""
    h = [Fraction(x) for x in M.h]
    delta = Fraction(delta)
    t = M.t
    failed = []
    if t < 1 or any(x >= 1 for x in h[:t]) or h[t:] and h[t] < 1:
        failed.append("shape: need h_1 < ... < h_t < 1 <= h_{t+1}")
    for i in range(min(t, len(h) - 1)):
        if h[i + 1] - h[i] < delta:
            failed.append(f"gap h_{i + 2} - h_{i + 1} < delta")
    for i, v in enumerate(row_valuations(M)):
        if v < h[i]:
            failed.append(f"(1) row {i + 1}: valuation {v} < h = {h[i]}")
    minors = leading_minors(M.entries, t)
    vq = [Fraction(0)]
    for n, m in enumerate(minors, start=1):
        v = valuation(m)
        vq.append(v)
        if not v < sum(h[:n]) + delta / 2:
            failed.append(f"(2) n={n}: v(det) = {v} >= bound {sum(h[:n]) + delta / 2}")
    np_q = hull_from_values(list(enumerate(vq)))
    coeffs = principal_minor_sums(M.entries)
    np_det = truncate_lt_one(hull_from_values([(i, valuation(c)) for i, c in enumerate(coeffs)]))
    ok = not failed
    return TransformReport(ok, tuple(failed), np_det, np_q, ok and np_det == np_q)


def standard_bounds(p, t):
    """h_i = ceil((p-1)(i-1)/t)/(p-1) for i <= t and h_{t+1} = 1, with delta.

    The bounds are multiples of 1/(p-1), so rows can be realized exactly as
    pi^{(p-1) h_i} times integral entries.
    """
    if p - 1 < t:
        raise HypothesisError(f"need p-1 >= t for strictly increasing bounds (p={p}, t={t})")
    h = [Fraction(-((-(p - 1) * (i - 1)) // t), p - 1) for i in range(1, t + 1)] + [Fraction(1)]
    delta = min(b - a for a, b in zip(h, h[1:]))
    return tuple(h), delta


def _random_unit_poly(p, rng, spread=3):
    return CycNum(p, tuple(rng.randint(-spread, spread) for _ in range(p - 1)))


def random_transform_matrix(p, t, rng=None, violate=False, max_tries=1000):
    """(M, delta): a (t+1) x (t+1) matrix with rows pi^{(p-1)h_i} U_i.

    With ``violate=False`` the matrix is resampled until hypothesis (2)
    holds; with ``violate=True`` the first row is multiplied by pi^{(p-1)delta}
    so that (2) fails at n = 1.
    """
    rng = rng or random.Random(0)
    h, delta = standard_bounds(p, t)
    pi = CycNum.one(p) - CycNum.zeta_power(p, 1)
    size = t + 1
    for _ in range(max_tries):
        rows = []
        for i in range(size):
            scale = pi ** int(h[i] * (p - 1))
            if violate and i == 0:
                scale = scale * pi ** int(delta * (p - 1))
            rows.append(tuple(scale * _random_unit_poly(p, rng) for _ in range(size)))
        M = TruncatedMatrix(p, tuple(rows), h)
        if any(x.is_zero() for row in rows for x in row):
            continue
        if violate:
            return M, delta
        minors = leading_minors(M.entries, t)
        if all(valuation(m) < sum(h[:n]) + delta / 2 for n, m in enumerate(minors, start=1)):
            return M, delta
    raise ConsistencyError("could not generate a matrix satisfying the hypotheses")


__all__ = [
    "ArtinHasseSeries", "artin_hasse_coeffs", "GammaScaled", "GammaPoly", "g_n_leading",
    "check_leading_vs_k", "leading_minors", "q_aux_poly", "principal_minor_sums",
    "TruncatedMatrix", "TransformReport", "np_transform_check", "standard_bounds",
    "random_transform_matrix", "row_valuations",
]
