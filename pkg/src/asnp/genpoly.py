"""Global generic polynomials over Q in the coefficients A_1..A_d.

For each r in (Z/dZ)^* the factors A_d, H~_ij (1 <= i,j <= d-1) and f~_n
(1 <= n <= d-2) cut out the open set where x^d-polynomials are ordinary at
every large p = r mod d.  K~_ij is the local (p-dependent) companion of
H~_ij, congruent to v_i A_d^{c-d} H~_ij mod p.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial, gcd, prod

import numpy as np
import sympy

from . import fields as fq
from .errors import ConsistencyError, HypothesisError
from .gnp import minimizer_set, permutation_sign, residue_table, units_mod

# ---------------------------------------------------------------------------
# sparse multivariate polynomials
# ---------------------------------------------------------------------------


def _lex_key(m):
    # A_d is compared first
    return tuple(reversed(m))


class MultiPoly:
    """Sparse polynomial in A_1..A_d with Fraction coefficients.

    ``terms`` maps exponent tuples (m_1, ..., m_d) to nonzero coefficients.
    Instances are treated as immutable.
    """

    __slots__ = ("d", "terms")

    def __init__(self, d, terms=None):
        self.d = d
        clean = {}
        for m, c in (terms or {}).items():
            if len(m) != d:
                raise ValueError(f"exponent {m} has wrong length for d={d}")
            c = Fraction(c)
            if c:
                clean[tuple(m)] = c
        self.terms = clean

    @classmethod
    def variable(cls, d, k):
        """A_k (1-based)."""
        m = [0] * d
        m[k - 1] = 1
        return cls(d, {tuple(m): 1})

    @classmethod
    def constant(cls, d, c):
        return cls(d, {(0,) * d: c})

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.d == other.d and self.terms == other.terms

    def __hash__(self):
        return hash((self.d, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return MultiPoly(self.d, out)

    def __neg__(self):
        return MultiPoly(self.d, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiPoly(self.d, {m: c * other for m, c in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(self.d, out)

    __rmul__ = __mul__

    def support(self):
        return frozenset(self.terms)

    def degrees(self):
        return {sum(m) for m in self.terms}

    def is_homogeneous(self, degree=None):
        degs = self.degrees()
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def leading(self):
        """(exponent, coefficient) of the lex-largest monomial, A_d > ... > A_1."""
        m = max(self.terms, key=_lex_key)
        return m, self.terms[m]

    def evaluate(self, point):
        """Exact value at a rational point (a_1, ..., a_d)."""
        point = [Fraction(a) for a in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            total += c * prod(a ** e for a, e in zip(point, m))
        return total

    def reduce_mod(self, p):
        """Coefficients mod p; every denominator must be a p-unit."""
        out = {}
        for m, c in self.terms.items():
            if c.denominator % p == 0:
                raise ConsistencyError(f"coefficient {c} of {m} is not p-integral (p={p})")
            v = c.numerator * pow(c.denominator, -1, p) % p
            if v:
                out[m] = v
        return out

    def evaluate_fq(self, point):
        """Value at a point of F_q^d (coefficients reduced mod p)."""
        F = point[0].field
        total = F.zero()
        for m, c in self.reduce_mod(F.p).items():
            term = F.scalar(c)
            for a, e in zip(point, m):
                if e:
                    term = term * a ** e
            total = total + term
        return total

    def shifted(self, k, e):
        """Multiply by A_k^e."""
        return MultiPoly(self.d, {tuple(x + (e if i == k - 1 else 0) for i, x in enumerate(m)): c
                                  for m, c in self.terms.items()})

    def to_json(self):
        items = sorted(self.terms.items(), key=lambda t: _lex_key(t[0]), reverse=True)
        return {",".join(map(str, m)): f"{c.numerator}/{c.denominator}" for m, c in items}

    @classmethod
    def from_json(cls, d, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(d, {tuple(int(x) for x in k.split(",")): Fraction(v) for k, v in obj.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda t: _lex_key(t[0]), reverse=True):
            mono = "*".join(f"A{k}^{e}" if e > 1 else f"A{k}" for k, e in enumerate(m, 1) if e)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# H~, f~, sigma_0
# ---------------------------------------------------------------------------

def _check_params(d, r):
    if d < 3:
        raise HypothesisError(f"d must be >= 3, got {d}")
    if not 0 < r < d or gcd(r, d) != 1:
        raise HypothesisError(f"r={r} is not a unit mod {d}")


def _weighted(total, weights, count=None):
    """Nonnegative vectors x with sum w_k x_k = total (and sum x = count if given)."""
    out = []

    def rec(k, rest, acc):
        if k == len(weights):
            if rest == 0 and (count is None or sum(acc) == count):
                out.append(tuple(acc))
            return
        w = weights[k]
        for x in range(rest // w + 1):
            rec(k + 1, rest - w * x, acc + [x])

    rec(0, total, [])
    return out


def m_set(d, r, i, j):
    """M_ij = {m : sum_{k<d} (d-k) m_k = r_ij, sum m = d}."""
    rij = residue_table(d, r)[i - 1][j - 1]
    out = []
    for head in _weighted(rij, [d - k for k in range(1, d)]):
        s = sum(head)
        if s <= d:
            out.append(head + (d - s,))
    return out


def _delta(d, r, i, j, literal=False):
    """0 if ceil((pi-j)/d) = ceil((pi-1)/d) for p = r mod d, else 1.

    Taken literally, the rule "0 iff j < r'_i1 + 1" gives 1 for every j when
    r'_i1 = 0; but then pi - 1 is divisible by d and the ceiling never
    drops, so the residue 0 is read as d here.  ``literal=True`` keeps the
    unadjusted rule (used only to show the mod-p congruence breaks).
    """
    rp = (r * i - 1) % d
    if rp == 0 and not literal:
        rp = d
    return 0 if j < rp + 1 else 1


@lru_cache(maxsize=None)
def h_tilde(d, r, i, j, literal_delta=False):
    _check_params(d, r)
    if not (1 <= i <= d - 1 and 1 <= j <= d - 1):
        raise HypothesisError(f"(i, j) = ({i}, {j}) out of range for d={d}")
    ri1 = residue_table(d, r)[i - 1][0]
    base = Fraction(ri1 - 1, d)
    delta = _delta(d, r, i, j, literal_delta)
    terms = {}
    for m in m_set(d, r, i, j):
        top = sum(m[:-1]) + delta
        num = prod((base - ell for ell in range(top)), start=Fraction(1))
        den = prod(factorial(x) for x in m[:-1])
        h = num / den
        if h == 0:
            raise ConsistencyError(f"h coefficient vanishes at {m}")
        terms[m] = h
    H = MultiPoly(d, terms)
    if H.support() != frozenset(m_set(d, r, i, j)) or not H.is_homogeneous(d):
        raise ConsistencyError(f"H~_{i}{j} is not supported on M_ij in degree d")
    return H


@lru_cache(maxsize=None)
def f_tilde(d, r, n):
    _check_params(d, r)
    if not 1 <= n <= d - 1:
        raise HypothesisError(f"n={n} out of range for d={d}")
    total = MultiPoly(d)
    for sigma in sorted(minimizer_set(d, r, n)):
        term = MultiPoly.constant(d, permutation_sign(sigma))
        for i, j in enumerate(sigma, start=1):
            term = term * h_tilde(d, r, i, j + 1)
        total = total + term
    if total.is_zero() or not total.is_homogeneous(n * d):
        raise ConsistencyError(f"f~_{n} is zero or not homogeneous of degree {n * d}")
    return total


def sigma0_layers(d, r, n):
    """The greedy layers S_0, S_1, ... as lists of 1-based (i, j) pairs."""
    table = residue_table(d, r)
    used_rows, used_cols = set(), set()
    layers = []
    for k in range(d):
        layer = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)
                 if table[i - 1][j - 1] == k and i not in used_rows and j not in used_cols]
        if len({i for i, _ in layer}) != len(layer) or len({j for _, j in layer}) != len(layer):
            raise ConsistencyError(f"layer S_{k} is not a partial matching")
        used_rows.update(i for i, _ in layer)
        used_cols.update(j for _, j in layer)
        layers.append(layer)
    return layers


def xi_exponent(d, r, n):
    """Closed form of Xi = A_d^{(d-1)n + #S_0} prod_k A_{d-k}^{#S_k}."""
    layers = sigma0_layers(d, r, n)
    m = [0] * d
    m[d - 1] = (d - 1) * n + len(layers[0])
    for k in range(1, d):
        m[d - k - 1] += len(layers[k])
    return tuple(m)


@dataclass(frozen=True)
class Sigma0Certificate:
    sigma0: tuple          # 0-based permutation
    xi: tuple              # exponent vector of Xi
    unique: bool           # lex-max over S_n attained only at sigma0
    in_min: bool           # sigma0 in S_n^min
    f_leading: tuple       # leading exponent of the expanded f~_n
    det_leading: tuple     # lex-max monomial of det(H~) from the term analysis

    @property
    def ok(self):
        return self.unique and self.in_min and self.f_leading == self.xi == self.det_leading


def sigma0(d, r, n):
    """sigma_0 from the greedy layers, with the leading-monomial certificate.

    The lex-leading monomial of each product prod_i H~_{i,sigma(i)} is the
    sum of the entries' leading exponents, so the maximum over S_n can be
    found without expanding the determinant.
    """
    _check_params(d, r)
    layers = sigma0_layers(d, r, n)
    pairs = [pq for layer in layers for pq in layer]
    perm = [None] * n
    for i, j in pairs:
        perm[i - 1] = j - 1
    if None in perm or sorted(perm) != list(range(n)):
        raise ConsistencyError("greedy layers do not define a permutation")
    perm = tuple(perm)
    lead = [[h_tilde(d, r, i, j).leading()[0] for j in range(1, n + 1)] for i in range(1, n + 1)]
    best, winners = None, []
    for sigma in permutations(range(n)):
        e = tuple(sum(lead[i][sigma[i]][k] for i in range(n)) for k in range(d))
        key = _lex_key(e)
        if best is None or key > best[0]:
            best, winners = (key, e), [sigma]
        elif key == best[0]:
            winners.append(sigma)
    xi = xi_exponent(d, r, n)
    return Sigma0Certificate(
        sigma0=perm,
        xi=xi,
        unique=winners == [perm],
        in_min=perm in minimizer_set(d, r, n),
        f_leading=f_tilde(d, r, n).leading()[0],
        det_leading=best[1],
    )


@dataclass(frozen=True)
class FactorSet:
    r: int
    factors: tuple  # ((label, MultiPoly), ...)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def product(self):
        out = MultiPoly.constant(self.factors[0][1].d, 1)
        for _, P in self.factors:
            out = out * P
        return out


@lru_cache(maxsize=None)
def psi_factors(d, r):
    """Labeled factors A_d, H~_ij, f~_n of the global generic polynomial."""
    _check_params(d, r)
    out = [("A_d", MultiPoly.variable(d, d))]
    for i in range(1, d):
        for j in range(1, d):
            out.append((f"H[{i},{j}]", h_tilde(d, r, i, j)))
    for n in range(1, d - 1):
        out.append((f"f[{n}]", f_tilde(d, r, n)))
    return FactorSet(r, tuple(out))


# ---------------------------------------------------------------------------
# K~ and the mod-p congruence
# ---------------------------------------------------------------------------

def _ceil_div(a, b):
    return -((-a) // b)


def n_set(d, p, i, j):
    """N_ij = {m : sum k m_k = pi - j, sum m = ceil((pi-j)/d)}."""
    target = p * i - j
    count = _ceil_div(target, d)
    out = []

    def rec(k, rest, left, acc):
        # parts of size k, k-1, ..., 1 remain
        if k == 0:
            if rest == 0 and left == 0:
                out.append(tuple(reversed(acc)))
            return
        if rest < left or rest > k * left:
            return
        for x in range(min(left, rest // k), -1, -1):
            rec(k - 1, rest - k * x, left - x, acc + [x])

    rec(d, target, count, [])
    # acc was built from A_d down to A_1
    return out


def k_tilde(d, p, i, j):
    if gcd(p, d) != 1 or not sympy.isprime(p):
        raise HypothesisError(f"p={p} must be a prime coprime to d={d}")
    if not (1 <= i <= d - 1 and 1 <= j <= d - 1):
        raise HypothesisError(f"(i, j) = ({i}, {j}) out of range for d={d}")
    terms = {m: Fraction(1, prod(factorial(x) for x in m)) for m in n_set(d, p, i, j)}
    K = MultiPoly(d, terms)
    if not K.is_homogeneous(_ceil_div(p * i - j, d)):
        raise ConsistencyError("K~ is not homogeneous of the expected degree")
    return K


def key2_floor(d):
    return (d * d + 1) * (d - 1)


def check_key2(d, p, i, j):
    """K~_ij == v_i A_d^{c-d} H~_ij (mod p), c = ceil((pi-j)/d), v_i = 1/ceil((pi-1)/d)!."""
    if p < key2_floor(d):
        raise HypothesisError(f"p={p} below (d^2+1)(d-1) = {key2_floor(d)}")
    r = p % d
    _check_params(d, r)
    c = _ceil_div(p * i - j, d)
    K = k_tilde(d, p, i, j).reduce_mod(p)
    v = pow(factorial(_ceil_div(p * i - 1, d)) % p, -1, p)
    H = h_tilde(d, r, i, j).shifted(d, c - d).reduce_mod(p)
    rhs = {m: v * x % p for m, x in H.items()}
    rhs = {m: x for m, x in rhs.items() if x}
    return K == rhs


# ---------------------------------------------------------------------------
# membership in U, height bound, ordinary certificate
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MembershipReport:
    in_U: bool
    failing_factor: object  # (r, label) or None
    values: tuple           # ((r, label, Fraction), ...)


def membership_U(coeffs):
    """Evaluate every factor of every Psi~_r at a = (a_1, ..., a_d)."""
    a = [Fraction(x) for x in coeffs]
    d = len(a)
    values = []
    failing = None
    for r in units_mod(d):
        for label, P in psi_factors(d, r):
            v = P.evaluate(a)
            values.append((r, label, v))
            if v == 0 and failing is None:
                failing = (r, label)
    return MembershipReport(failing is None, failing, tuple(values))


TRIAL_LIMIT = 10 ** 7


@lru_cache(maxsize=1)
def _small_primes():
    sieve = np.ones(TRIAL_LIMIT + 1, dtype=bool)
    sieve[:2] = False
    for k in range(2, int(TRIAL_LIMIT ** 0.5) + 1):
        if sieve[k]:
            sieve[k * k::k] = False
    return np.nonzero(sieve)[0]


def factor_partial(n):
    """(primes, cofactor): trial division to 10^7, then a primality test.

    ``cofactor`` is 1 when the factorization is complete; otherwise it is a
    composite number with no prime factor below 10^7.
    """
    n = abs(int(n))
    found = []
    if n <= 1:
        return found, 1
    for q in _small_primes():
        q = int(q)
        if q * q > n:
            break
        if n % q == 0:
            found.append(q)
            while n % q == 0:
                n //= q
    if n > 1:
        if sympy.isprime(n):
            found.append(n)
            n = 1
    return sorted(set(found)), n


@dataclass(frozen=True)
class HeightReport:
    floor: int
    bad_primes: tuple
    bound: int
    complete: bool


def height_bound(coeffs):
    """An upper bound for the height of f (least N beyond which every p is good)."""
    a = [Fraction(x) for x in coeffs]
    d = len(a)
    report = membership_U(a)
    if not report.in_U:
        raise HypothesisError(f"f is not in U (factor {report.failing_factor} vanishes)")
    floor = key2_floor(d)
    bad = set()
    complete = True
    cap = 0
    for x in a:
        ps, cof = factor_partial(x.denominator)
        bad.update(ps)
        if cof > 1:
            complete, cap = False, max(cap, cof)
    for r, _, v in report.values:
        for part in (v.numerator, v.denominator):
            ps, cof = factor_partial(part)
            bad.update(q for q in ps if q % d == r)
            if cof > 1:
                complete, cap = False, max(cap, cof)
    bound = max([floor, cap] + sorted(bad))
    return HeightReport(floor, tuple(sorted(bad)), bound, complete)


def ordinary_certificate(d, p, abar):
    """Mod-p nonvanishing of every factor of Psi~_r at abar (r = p mod d).

    ``abar`` holds a_1..a_d as FqElems (or ints mod p).  True means every
    factor is a p-adic unit at the Teichmueller lift of abar.
    """
    if p < key2_floor(d):
        raise HypothesisError(f"p={p} below (d^2+1)(d-1) = {key2_floor(d)}")
    r = p % d
    _check_params(d, r)
    if len(abar) != d:
        raise HypothesisError(f"need {d} coefficients")
    if not isinstance(abar[0], fq.FqElem):
        F = fq.build_field(p, 1)
        abar = [F.scalar(x) for x in abar]
    if abar[-1].is_zero():
        return False
    for label, P in psi_factors(d, r):
        if P.evaluate_fq(abar).is_zero():
            return False
    return True


__all__ = [
    "MultiPoly", "m_set", "h_tilde", "f_tilde", "sigma0", "sigma0_layers", "xi_exponent",
    "Sigma0Certificate", "FactorSet", "psi_factors", "n_set", "k_tilde", "check_key2",
    "key2_floor", "MembershipReport", "membership_U", "factor_partial", "HeightReport",
    "height_bound", "ordinary_certificate",
]
