"""Finite fields F_{p^n} with deterministic defining polynomials.

Elements are dense coefficient vectors over F_p in the power basis
1, x, ..., x^{n-1} modulo the defining polynomial.  The defining polynomial
is the lexicographically least monic irreducible of degree n, coefficients
compared from the constant term upward.

Besides plain arithmetic this module provides the two accelerators the
exponential-sum code relies on: discrete logarithms with respect to a fixed
primitive element, and the table ``T[m] = Tr(g^m)`` of absolute traces of
all powers of that element.
"""

from collections import OrderedDict
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import isqrt

import numpy as np
import sympy

from .errors import FeasibilityError, HypothesisError

#: Largest field cardinality that may be enumerated element by element.
ENUMERATION_CAP = 2 ** 40

#: Largest field cardinality for which a full trace-of-powers table is built.
#: One byte per element (two when p > 255), so this bounds memory use.
TABLE_CAP = 3 * 10 ** 8

_TABLE_CACHE_SIZE = 2


# ---------------------------------------------------------------------------
# polynomials over F_p (lists of ints, low degree first)
# ---------------------------------------------------------------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, m, p):
    """a*b mod (monic m) over F_p."""
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return _poly_mod(prod, m, p)


def _poly_mod(a, m, p):
    a = [c % p for c in a]
    dm = len(m) - 1
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k]
        if c:
            shift = k - dm
            for i in range(dm + 1):
                a[shift + i] = (a[shift + i] - c * m[i]) % p
    return _trim(a[:dm] if len(a) > dm else a)


def _poly_powmod(base, e, m, p):
    result = [1]
    base = _poly_mod(list(base), m, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
           for i in range(n)]
    return _trim(out)


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        monic = [c * inv % p for c in b]
        a = _poly_mod(a, monic, p)
        a, b = b, a
    return a


def is_irreducible(poly, p):
    """Rabin's test for a monic polynomial over F_p (low degree first)."""
    n = len(poly) - 1
    if n == 1:
        return True
    x = [0, 1]
    # x^{p^n} == x (mod poly)
    if _poly_powmod(x, p ** n, poly, p) != _poly_mod(x, poly, p):
        return False
    for ell in sympy.primefactors(n):
        h = _poly_sub(_poly_powmod(x, p ** (n // ell), poly, p), x, p)
        g = _poly_gcd(poly, h, p)
        if len(g) != 1:
            return False
    return True


def _least_irreducible(p, n):
    # candidates x^n + c_{n-1}x^{n-1} + ... + c_0 in lex order of (c_0, c_1, ...)
    for k in range(p ** n):
        low = []
        for _ in range(n):
            k, c = divmod(k, p)
            low.append(c)
        poly = low + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# field descriptor and elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldDesc:
    """The field F_{p^n} = F_p[x]/(defpoly)."""

    p: int
    n: int
    defpoly: tuple

    @property
    def order(self):
        return self.p ** self.n

    def __repr__(self):
        return f"F_{self.p}^{self.n}"

    # -- construction of elements ------------------------------------------
    def elem(self, coeffs):
        coeffs = [int(c) % self.p for c in coeffs]
        if len(coeffs) > self.n:
            coeffs = _poly_mod(coeffs, list(self.defpoly), self.p)
        coeffs = coeffs + [0] * (self.n - len(coeffs))
        return FqElem(self, tuple(coeffs))

    def from_int(self, k):
        """Element whose coefficient vector is the base-p expansion of k."""
        coeffs = []
        for _ in range(self.n):
            k, c = divmod(k, self.p)
            coeffs.append(c)
        return FqElem(self, tuple(coeffs))

    def scalar(self, c):
        return self.elem([c])

    def zero(self):
        return self.scalar(0)

    def one(self):
        return self.scalar(1)

    def gen(self):
        """The class of x (for n = 1 this is the root of defpoly, i.e. 0)."""
        return self.elem([0, 1])

    # -- cached structure ----------------------------------------------------
    @cached_property
    def _reduction(self):
        # rows: x^{n+j} mod defpoly, j = 0..n-2
        p, n, m = self.p, self.n, list(self.defpoly)
        rows = []
        cur = [(-c) % p for c in m[:n]]  # x^n
        for _ in range(max(n - 1, 0)):
            rows.append(cur)
            nxt = [0] + cur[:-1]
            top = cur[-1]
            nxt = [(nxt[i] - top * m[i]) % p for i in range(n)]
            cur = nxt
        return rows

    @cached_property
    def trace_vector(self):
        """Tr(x^j) for j = 0..n-1; the absolute trace is linear in coordinates."""
        return tuple(_trace_by_frobenius(self.from_int(self.p ** j)) for j in range(self.n))

    @cached_property
    def primitive(self):
        """The first generator of F^* in enumeration order."""
        q1 = self.order - 1
        if q1 == 1:
            return self.one()
        exps = [q1 // ell for ell in sympy.primefactors(q1)]
        one = self.one()
        for k in range(1, self.order):
            g = self.from_int(k)
            if all(g ** e != one for e in exps):
                return g
        raise AssertionError("no primitive element")  # unreachable

    def mul_matrix(self, h):
        """Matrix (numpy int64, n x n) of y -> h*y on coordinate column vectors."""
        cols = []
        xj = self.one()
        x = self.gen() if self.n > 1 else self.one()
        for _ in range(self.n):
            cols.append((h * xj).coeffs)
            xj = xj * x
        return np.array(cols, dtype=np.int64).T

    def __iter__(self):
        return enumerate_field(self)


@dataclass(frozen=True)
class FqElem:
    """Element of a finite field as a coefficient vector over F_p."""

    field: FieldDesc
    coeffs: tuple

    def _coerce(self, other):
        if isinstance(other, FqElem):
            if other.field is not self.field and other.field != self.field:
                raise HypothesisError(f"field mismatch: {self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return self.field.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FqElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        p, n = F.p, F.n
        a, b = self.coeffs, other.coeffs
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        out = prod[:n]
        for j, row in enumerate(F._reduction):
            c = prod[n + j] % p
            if c:
                for i in range(n):
                    out[i] += c * row[i]
        return FqElem(F, tuple(c % p for c in out))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in finite field")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def in_prime_field(self):
        return not any(self.coeffs[1:])

    def frobenius(self, k=1):
        """x -> x^{p^k}."""
        return self ** (self.field.p ** k)

    def to_int(self):
        p = self.field.p
        v = 0
        for c in reversed(self.coeffs):
            v = v * p + c
        return v

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(f"{c}{mon}" if c != 1 or i == 0 else mon)
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def build_field(p, n):
    """Canonical F_{p^n}; repeated calls return the same object."""
    if not isinstance(p, int) or p < 2 or not sympy.isprime(p):
        raise HypothesisError(f"p={p} is not prime")
    if not isinstance(n, int) or n < 1:
        raise HypothesisError(f"extension degree must be >= 1, got {n}")
    return FieldDesc(p, n, _least_irreducible(p, n))


def _trace_by_frobenius(x):
    F = x.field
    acc = x
    y = x
    for _ in range(F.n - 1):
        y = y ** F.p
        acc = acc + y
    if not acc.in_prime_field():
        raise AssertionError("trace did not land in the prime field")
    return acc.coeffs[0]


def trace_abs(x):
    """Absolute trace Tr_{F_{p^n}/F_p}(x) as an integer in [0, p)."""
    lam = x.field.trace_vector
    return sum(c * t for c, t in zip(x.coeffs, lam)) % x.field.p


def trace_rel(x, m):
    """Relative trace to the subfield F_{p^m}: sum of x^{p^{m j}}, j < n/m."""
    F = x.field
    if F.n % m:
        raise HypothesisError(f"F_{F.p}^{m} is not a subfield of {F}")
    acc = x
    y = x
    for _ in range(F.n // m - 1):
        y = y ** (F.p ** m)
        acc = acc + y
    return acc


def _solve_mod_p(A, B, p):
    """Solve A X = B over F_p; A square (lists).  Raises on singular A."""
    n = len(A)
    M = [list(A[i]) + list(B[i]) for i in range(n)]
    w = len(M[0])
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] % p), None)
        if piv is None:
            raise HypothesisError("not a basis: trace Gram matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        inv = pow(M[col][col], -1, p)
        M[col] = [v * inv % p for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] % p:
                f = M[r][col]
                M[r] = [(a - f * b) % p for a, b in zip(M[r], M[col])]
    return [row[n:w] for row in M]


def dual_basis(basis):
    """Trace-dual basis: Tr(b_i * d_j) = delta_ij."""
    basis = list(basis)
    F = basis[0].field
    n = len(basis)
    if n != F.n:
        raise HypothesisError(f"not a basis: need {F.n} elements, got {n}")
    gram = [[trace_abs(bi * bj) for bj in basis] for bi in basis]
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    X = _solve_mod_p(gram, ident, F.p)  # gram * X = I, X[k][j] = coeff of b_k in d_j
    duals = []
    for j in range(n):
        d = F.zero()
        for k in range(n):
            if X[k][j]:
                d = d + basis[k] * X[k][j]
        duals.append(d)
    return duals


def check_enumerable(order, what="field"):
    if order > ENUMERATION_CAP:
        raise FeasibilityError(
            f"refusing to enumerate {what} of {order} elements "
            f"(cap 2^40 = {ENUMERATION_CAP})", cost=order)


def enumerate_field(F):
    """All elements of F, each once, in coefficient-vector odometer order."""
    check_enumerable(F.order, repr(F))
    p, n = F.p, F.n
    coeffs = [0] * n
    for _ in range(F.order):
        yield FqElem(F, tuple(coeffs))
        i = 0
        while i < n:
            coeffs[i] += 1
            if coeffs[i] < p:
                break
            coeffs[i] = 0
            i += 1


def poly_eval(coeffs, x):
    """Evaluate sum coeffs[i] x^i (coeffs are FqElems or ints) by Horner."""
    acc = x.field.zero()
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# embeddings F_{p^m} -> F_{p^n}, m | n
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _embedding_root(src, dst):
    """A root of src.defpoly in dst (the image of src.gen())."""
    if dst.n % src.n or dst.p != src.p:
        raise HypothesisError(f"{src} does not embed in {dst}")
    if src.n == 1:
        return dst.zero()
    # the roots lie in the subfield of order p^{src.n}
    poly = [dst.scalar(c) for c in src.defpoly]
    for y in subfield_elements(dst, src.n):
        if poly_eval(poly, y).is_zero():
            return y
    raise AssertionError("defining polynomial has no root in extension")


def embed(x, dst):
    """Image of x under a fixed embedding of its field into ``dst``.

    Any embedding may be used for trace computations: two embeddings differ
    by a Frobenius power, which preserves absolute traces.
    """
    src = x.field
    if src == dst:
        return x
    beta = _embedding_root(src, dst)
    acc = dst.zero()
    for c in reversed(x.coeffs):
        acc = acc * beta + c
    return acc


def subfield_elements(F, m):
    """Elements of the subfield F_{p^m} inside F, in enumeration order of F."""
    if F.n % m:
        raise HypothesisError(f"F_{F.p}^{m} is not a subfield of {F}")
    if m == F.n:
        return list(enumerate_field(F))
    step = (F.order - 1) // (F.p ** m - 1)
    h = F.primitive ** step
    elems = [F.zero()]
    y = F.one()
    for _ in range(F.p ** m - 1):
        elems.append(y)
        y = y * h
    return sorted(elems, key=FqElem.to_int)


# ---------------------------------------------------------------------------
# discrete logarithms and the trace-of-powers table
# ---------------------------------------------------------------------------

class PowerData:
    """Baby-step table and giant-step matrix for logarithms base ``F.primitive``."""

    def __init__(self, F):
        self.field = F
        N = F.order - 1
        self.N = N
        self.B = isqrt(N) + 1
        p, n = F.p, F.n
        g = F.primitive
        Mg = F.mul_matrix(g)
        V = np.empty((min(self.B, N), n), dtype=np.int64)
        v = np.zeros(n, dtype=np.int64)
        v[0] = 1
        for i in range(V.shape[0]):
            V[i] = v
            v = (Mg @ v) % p
        self.V = V
        self.weights = np.array([p ** j for j in range(n)], dtype=np.int64)
        keys = V @ self.weights
        self.baby = {int(k): i for i, k in enumerate(keys)}
        self.giant = F.mul_matrix((g ** self.B).inverse()) if N > 1 else None
        self.step_block = F.mul_matrix(g ** V.shape[0])

    def log(self, x):
        if x.is_zero():
            raise ValueError("log of zero")
        F = self.field
        p = F.p
        y = np.array(x.coeffs, dtype=np.int64)
        for j in range(self.N // self.B + 2):
            key = int(y @ self.weights)
            i = self.baby.get(key)
            if i is not None:
                return (j * self.B + i) % self.N
            y = (self.giant @ y) % p
        raise AssertionError("discrete log not found")


_POWER_CACHE = OrderedDict()
_TRACE_CACHE = OrderedDict()


def _lru_get(cache, key, build, size=_TABLE_CACHE_SIZE):
    if key in cache:
        cache.move_to_end(key)
        return cache[key]
    value = build()
    cache[key] = value
    while len(cache) > size:
        cache.popitem(last=False)
    return value


def power_data(F):
    return _lru_get(_POWER_CACHE, F, lambda: PowerData(F), size=8)


def discrete_log(x):
    """e with x = g^e for g = x.field.primitive, 0 <= e < q-1."""
    return power_data(x.field).log(x)


def log_of_embedded(x, dst):
    """Discrete log in ``dst`` of the embedded image of x (x != 0).

    Computed from the log in the small field: log_dst(x) = log_src(x) *
    log_dst(embed(g_src)), which avoids a large-field search per element.
    """
    src = x.field
    if src == dst:
        return discrete_log(x)
    e = discrete_log(x)
    base = _embedded_generator_log(src, dst)
    return (e * base) % (dst.order - 1)


@lru_cache(maxsize=None)
def _embedded_generator_log(src, dst):
    return discrete_log(embed(src.primitive, dst))


def trace_power_table(F):
    """numpy array T with T[m] = Tr(g^m) for 0 <= m < q-1, g = F.primitive."""
    if F.order > TABLE_CAP:
        raise FeasibilityError(
            f"trace table for {F} would hold {F.order} entries (cap {TABLE_CAP})",
            cost=F.order)
    return _lru_get(_TRACE_CACHE, F, lambda: _build_trace_table(F))


def _build_trace_table(F):
    pdata = power_data(F)
    p, N = F.p, pdata.N
    dtype = np.uint8 if p < 256 else np.uint16
    V = pdata.V
    B = V.shape[0]
    lam = np.array(F.trace_vector, dtype=np.int64)
    step = pdata.step_block
    T = np.empty(N, dtype=dtype)
    # T[s + i] = lam . (g^s * g^i) = (lam M_{g^s}) . v_i
    u = lam
    for start in range(0, N, B):
        stop = min(start + B, N)
        T[start:stop] = ((V[: stop - start] @ u) % p).astype(dtype)
        u = (u @ step) % p
    return T
