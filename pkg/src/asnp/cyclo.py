"""Exact arithmetic in Q(zeta_p) and the p-adic valuation with v_p(p) = 1.

A :class:`CycNum` stores coordinates in the power basis 1, z, ..., z^{p-2}
(reduced modulo Phi_p = 1 + z + ... + z^{p-1}).  Coordinates are Python ints
or :class:`fractions.Fraction`; integral elements keep int coordinates since
the power basis is an integral basis of Z[zeta_p].
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import gcd, lcm

from .errors import ConsistencyError, HypothesisError


@total_ordering
class _Infinity:
    """Valuation of zero; compares above every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("asnp-infinity")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("inf - inf")
        return self

    def __truediv__(self, other):
        return self

    def __repr__(self):
        return "INF"


INF = _Infinity()


def _norm_coord(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def vp_int(n, p):
    """p-adic valuation of a nonzero integer."""
    n = abs(n)
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_rational(x, p):
    x = Fraction(x)
    if x == 0:
        return INF
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


@dataclass(frozen=True)
class CycNum:
    p: int
    coords: tuple

    # -- constructors --------------------------------------------------------
    @classmethod
    def from_full(cls, p, full):
        """From a length-p vector over 1, z, ..., z^{p-1} (reduces z^{p-1})."""
        top = full[p - 1]
        return cls(p, tuple(_norm_coord(full[i] - top) for i in range(p - 1)))

    @classmethod
    def rational(cls, p, c):
        return cls(p, (_norm_coord(Fraction(c)),) + (0,) * (p - 2))

    @classmethod
    def zeta_power(cls, p, k):
        full = [0] * p
        full[k % p] = 1
        return cls.from_full(p, full)

    @classmethod
    def zero(cls, p):
        return cls(p, (0,) * (p - 1))

    @classmethod
    def one(cls, p):
        return cls.rational(p, 1)

    # -- ring operations -------------------------------------------------------
    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNum.rational(self.p, other)
        if not isinstance(other, CycNum):
            return NotImplemented
        if other.p != self.p:
            raise HypothesisError(f"mismatched primes {self.p} and {other.p}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CycNum(self.p, tuple(_norm_coord(a + b) for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.p, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CycNum(self.p, tuple(_norm_coord(a - b) for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNum(self.p, tuple(_norm_coord(a * other) for a in self.coords))
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.p
        full = [0] * p
        a, b = self.coords, other.coords
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        full[(i + j) % p] += ai * bj
        return CycNum.from_full(p, full)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = CycNum.one(self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def div_int(self, n):
        """Exact division by a nonzero integer (coordinates become rationals)."""
        return CycNum(self.p, tuple(_norm_coord(Fraction(a, n)) for a in self.coords))

    def is_zero(self):
        return not any(self.coords)

    def is_integral(self):
        return all(isinstance(c, int) for c in self.coords)

    def is_rational(self):
        return not any(self.coords[1:])

    def galois(self, k):
        """sigma_k: z -> z^k for k coprime to p."""
        p = self.p
        if k % p == 0:
            raise HypothesisError(f"k={k} is not a unit mod {p}")
        full = [0] * p
        for j, c in enumerate(self.coords):
            full[(j * k) % p] += c
        return CycNum.from_full(p, full)

    def conjugate(self):
        """Complex conjugation, i.e. sigma_{-1}."""
        return self.galois(-1)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        return f"CycNum(p={self.p}: " + (" + ".join(terms) if terms else "0") + ")"


def cyc_add(a, b):
    return a + b


def cyc_mul(a, b):
    return a * b


def zeta_power_combination(p, counts):
    """sum_t counts[t] * z^t for a length-p histogram."""
    if len(counts) != p:
        raise HypothesisError(f"need {p} counts, got {len(counts)}")
    return CycNum.from_full(p, [int(c) for c in counts])


# ---------------------------------------------------------------------------
# valuation
# ---------------------------------------------------------------------------

def _poly_rem_q(a, b):
    """Remainder of a by b over Q (lists low-first, b with nonzero top)."""
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(a) - 1 >= db and a:
        c = Fraction(a[-1]) / lead
        shift = len(a) - 1 - db
        if c:
            for i in range(db + 1):
                a[shift + i] -= c * b[i]
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def resultant_euclid(f, g):
    """res(f, g) over Q by the Euclidean algorithm (lists low-first).

    Slow on large inputs because of fraction growth; kept as a cross-check
    for :func:`resultant`.
    """
    f = [Fraction(c) for c in f]
    g = [Fraction(c) for c in g]
    while f and f[-1] == 0:
        f.pop()
    while g and g[-1] == 0:
        g.pop()
    if not f or not g:
        return Fraction(0)
    result = Fraction(1)
    while True:
        df, dg = len(f) - 1, len(g) - 1
        if dg == 0:
            return result * g[0] ** df
        r = _poly_rem_q(f, g)
        if not r:
            return Fraction(0)
        dr = len(r) - 1
        # res(f, g) = (-1)^{df*dg} lc(g)^{df - dr} res(g, r)
        if (df * dg) % 2:
            result = -result
        result *= g[-1] ** (df - dr)
        f, g = g, r


def _content(a):
    g = 0
    for c in a:
        g = gcd(g, c)
    return g


def _prem(a, b):
    """Pseudo-remainder of a by b over Z: lc(b)^{da-db+1} a mod b."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - 1 - db + 1
    while a and len(a) - 1 >= db:
        c = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for i in range(db + 1):
            a[shift + i] -= c * b[i]
        a.pop()
        e -= 1
        while a and a[-1] == 0:
            a.pop()
    if e > 0:
        f = lb ** e
        a = [x * f for x in a]
    return a


def resultant(f, g):
    """res(f, g) for integer polynomials by the subresultant PRS.

    Fraction-free: every division is exact in Z.  Lists are low-first.
    """
    A = [int(c) for c in f]
    B = [int(c) for c in g]
    while A and A[-1] == 0:
        A.pop()
    while B and B[-1] == 0:
        B.pop()
    if not A or not B:
        return 0
    s = 1
    if len(B) > len(A):
        if ((len(A) - 1) * (len(B) - 1)) % 2:
            s = -s
        A, B = B, A
    if len(B) == 1:
        return s * B[0] ** (len(A) - 1)
    a, b = _content(A), _content(B)
    A = [x // a for x in A]
    B = [x // b for x in B]
    t = a ** (len(B) - 1) * b ** (len(A) - 1)
    g = h = 1
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = _prem(A, B)
        if not R:
            return 0
        A = B
        div = g * h ** delta
        B = [x // div for x in R]
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g ** delta // h ** (delta - 1)
        if len(B) == 1:
            da = len(A) - 1
            if da == 0:
                hh = 1
            elif da == 1:
                hh = B[0]
            else:
                hh = B[0] ** da // h ** (da - 1)
            return s * t * hh


def norm(a):
    """N_{Q(zeta_p)/Q}(a) as the resultant with Phi_p."""
    p = a.p
    if p == 2:
        return Fraction(a.coords[0])
    if not a.is_integral():
        den = 1
        for c in a.coords:
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
        return Fraction(resultant([1] * p, [int(c * den) for c in a.coords]), den ** (p - 1))
    return Fraction(resultant([1] * p, list(a.coords)))


def _integral_primitive(a):
    """(k, b) with a = p^k * b / D form reduced: returns (shift, b) where
    b is integral, not divisible by p coordinatewise, and
    v_p(a) = shift + v_p(b)."""
    p = a.p
    den = 1
    for c in a.coords:
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    ints = [int(c * den) for c in a.coords]
    shift = -vp_int(den, p)
    g = 0
    for c in ints:
        g = gcd(g, c)
    e = vp_int(g, p)
    ints = [c // p ** e for c in ints]
    return shift + e, CycNum(p, tuple(ints))


def valuation(a):
    """v_p(a) normalized by v_p(p) = 1, as a Fraction (or INF for zero).

    Computed as v_p(|Norm a|) / (p - 1) after clearing denominators and
    stripping the p-part of the integer content.
    """
    if a.is_zero():
        return INF
    p = a.p
    shift, b = _integral_primitive(a)
    if p == 2:
        return Fraction(shift)
    nb = norm(b)
    if nb.denominator != 1:
        raise ConsistencyError("norm of an integral element is not an integer")
    return Fraction(shift) + Fraction(vp_int(nb.numerator, p), p - 1)


def _inverse_one_minus_zeta(p):
    # (1 - z)^{-1} = -(1/p) * sum_{k=1}^{p-1} k z^k
    full = [Fraction(-k, p) for k in range(p)]
    return CycNum.from_full(p, full)


def valuation_by_stripping(a):
    """Oracle: count exact divisions by pi = 1 - zeta; v_p = v_pi / (p - 1)."""
    if a.is_zero():
        return INF
    p = a.p
    shift, b = _integral_primitive(a)
    if p == 2:
        return Fraction(shift)
    inv = _inverse_one_minus_zeta(p)
    k = 0
    while True:
        q = b * inv
        if not q.is_integral():
            break
        b = q
        k += 1
    return Fraction(shift) + Fraction(k, p - 1)
