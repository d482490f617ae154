"""Exponential sums over finite fields and their L-functions.

For f in F_q[x] (q = p^b) and alpha in a subfield-compatible field,

    S_k = sum_{x in F_{q^k}} zeta_p^{Tr(alpha f(x))},
    L(s) = exp(sum_k S_k s^k / k) = 1 + c_1 s + ... + c_{d-1} s^{d-1}.

The sums are computed as trace histograms.  The fast path writes every
nonzero x as g^e and reads Tr(alpha a_i g^{ie}) from a table of Tr(g^m), so a
sum over F_{q^k} is a handful of vectorized gathers.  A naive element-by-element
enumeration is kept as an oracle.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from . import fields as fq
from .cyclo import CycNum, valuation, zeta_power_combination
from .errors import ConsistencyError, FeasibilityError, HypothesisError
from .polygon import hull_from_values

#: Default element budget for the optional degree-check sums S_d..S_{d+2}.
DEGREE_CHECK_BUDGET = 3 * 10 ** 8

_CHUNK = 1 << 22


@dataclass(frozen=True)
class PolyOverFq:
    """f = a_0 + a_1 x + ... + a_d x^d over F_q; ``coeffs`` holds a_1..a_d."""

    field: fq.FieldDesc
    coeffs: tuple
    const: object = None

    def __post_init__(self):
        F = self.field
        cs = tuple(c if isinstance(c, fq.FqElem) else F.scalar(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", cs)
        const = self.const
        if const is None:
            const = F.zero()
        elif not isinstance(const, fq.FqElem):
            const = F.scalar(const)
        object.__setattr__(self, "const", const)
        if any(c.field != F for c in cs) or const.field != F:
            raise HypothesisError("coefficients must lie in the base field")
        d = len(cs)
        if d < 3:
            raise HypothesisError(f"degree must be >= 3, got {d}")
        if cs[-1].is_zero():
            raise HypothesisError("leading coefficient a_d is zero")
        if gcd(d, F.p) != 1:
            raise HypothesisError(f"gcd(d={d}, p={F.p}) != 1")

    @classmethod
    def from_ints(cls, p, b, coeffs, const=0):
        """Coefficients a_1..a_d given as integers or rationals, reduced mod p."""
        F = fq.build_field(p, b)
        return cls(F, tuple(F.scalar(_reduce_rational(c, p)) for c in coeffs),
                   F.scalar(_reduce_rational(const, p)))

    @property
    def p(self):
        return self.field.p

    @property
    def b(self):
        return self.field.n

    @property
    def degree(self):
        return len(self.coeffs)

    def __call__(self, x):
        return fq.poly_eval((self.const,) + self.coeffs, x)

    def has_prime_field_coeffs(self):
        return self.const.in_prime_field() and all(c.in_prime_field() for c in self.coeffs)

    def with_const(self, c):
        return PolyOverFq(self.field, self.coeffs, c)

    def __repr__(self):
        terms = [f"({c})x^{i}" for i, c in enumerate(self.coeffs, start=1) if not c.is_zero()]
        return f"PolyOverFq[{self.field}: " + " + ".join(terms) + "]"


def _reduce_rational(c, p):
    c = Fraction(c)
    if c.denominator % p == 0:
        raise HypothesisError(f"coefficient {c} is not p-integral for p={p}")
    return c.numerator * pow(c.denominator, -1, p) % p


# ---------------------------------------------------------------------------
# exponential sums
# ---------------------------------------------------------------------------

def sum_field(f, k):
    return fq.build_field(f.p, f.b * k)


def _embedded_alpha(f, alpha):
    if alpha.field.p != f.p or f.b % alpha.field.n:
        raise HypothesisError(f"alpha in {alpha.field} does not lie in {f.field}")
    if alpha.is_zero():
        raise HypothesisError("alpha must be nonzero")
    return fq.embed(alpha, f.field)


def histogram_naive(f, k, alpha):
    """counts[t] = #{x in F_{q^k} : Tr(alpha f(x)) = t}, by enumeration."""
    E = sum_field(f, k)
    a = fq.embed(_embedded_alpha(f, alpha), E)
    cs = [fq.embed(c, E) for c in (f.const,) + f.coeffs]
    counts = np.zeros(f.p, dtype=np.int64)
    for x in fq.enumerate_field(E):
        counts[fq.trace_abs(a * fq.poly_eval(cs, x))] += 1
    return counts


def _fast_terms(f, k, alpha):
    """(E, offset, [(log(alpha a_i), i)]) for the table method."""
    E = sum_field(f, k)
    a = _embedded_alpha(f, alpha)
    terms = []
    for i, c in enumerate(f.coeffs, start=1):
        if not c.is_zero():
            terms.append((fq.log_of_embedded(a * c, E), i))
    offset = 0
    if not f.const.is_zero():
        offset = fq.trace_abs(fq.embed(a * f.const, E))
    return E, offset, terms


def _chunk_counts(T, N, p, terms, offset, start, stop):
    e = np.arange(start, stop, dtype=np.int64)
    acc = np.full(stop - start, offset, dtype=np.int64)
    for L, i in terms:
        acc += T[(L + i * e) % N]
    return np.bincount(acc % p, minlength=p)


def histogram_fast(f, k, alpha, threads=1, chunk=_CHUNK):
    """Histogram of Tr(alpha f(x)) over F_{q^k} via discrete logs.

    Work is split into disjoint exponent ranges; the integer histograms are
    summed, so the result does not depend on ``threads``.
    """
    E, offset, terms = _fast_terms(f, k, alpha)
    p = f.p
    T = fq.trace_power_table(E)
    N = E.order - 1
    ranges = [(s, min(s + chunk, N)) for s in range(0, N, chunk)]
    if threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda r: _chunk_counts(T, N, p, terms, offset, *r), ranges))
    else:
        parts = [_chunk_counts(T, N, p, terms, offset, *r) for r in ranges]
    counts = np.zeros(p, dtype=np.int64)
    for part in parts:
        counts += part
    counts[offset] += 1  # x = 0
    return counts


def exp_sum(f, k, alpha, method="fast", threads=1):
    """S_k(alpha f) as an element of Z[zeta_p]."""
    E = sum_field(f, k)
    fq.check_enumerable(E.order, repr(E))
    if method == "naive":
        counts = histogram_naive(f, k, alpha)
    elif method == "fast":
        counts = histogram_fast(f, k, alpha, threads=threads)
    else:
        raise ValueError(f"unknown method {method!r}")
    if int(counts.sum()) != E.order:
        raise ConsistencyError("histogram total differs from field size")
    return zeta_power_combination(f.p, [int(c) for c in counts])


def scaling_class(f, alpha):
    """(rep, c) with Tr(alpha f(x)) = c * Tr(rep f(y)) for a bijection x -> y.

    ``rep`` is the least element (by integer code) among c' * alpha, c' in
    F_p^*, together with its Frobenius conjugates when f has prime-field
    coefficients (then x -> x^p permutes the sum).
    """
    p = f.p
    a = _embedded_alpha(f, alpha)
    conj = [a]
    if f.has_prime_field_coeffs():
        y = a ** p
        while y != a:
            conj.append(y)
            y = y ** p
    best = None
    for y in conj:
        for c in range(1, p):
            cand = y * c
            key = cand.to_int()
            if best is None or key < best[0]:
                best = (key, cand, c)
    _, rep, c = best
    # alpha ~ rep / c, so Tr(alpha f) = c^{-1} Tr(rep f) up to the bijection
    return rep, pow(c, -1, p)


def exp_sum_galois(f, k, alpha, cache, threads=1):
    """S_k via the histogram of a canonical representative of alpha's class.

    Scaling alpha by c in F_p^* relabels the histogram t -> c t, which is the
    Galois action zeta -> zeta^c on the sum.
    """
    rep, c = scaling_class(f, alpha)
    key = (f, k, rep)
    if key not in cache:
        cache[key] = histogram_fast(f, k, rep, threads=threads)
    base = cache[key]
    p = f.p
    counts = np.zeros(p, dtype=np.int64)
    counts[(np.arange(p) * c) % p] = base
    return zeta_power_combination(p, [int(x) for x in counts])


# ---------------------------------------------------------------------------
# L-polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LPolynomial:
    """1 + c_1 s + ... + c_{d-1} s^{d-1} with c_i in Z[zeta_p]; q = p^b."""

    p: int
    b: int
    coeffs: tuple
    checks: dict = field(default_factory=dict, compare=False)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def q(self):
        return self.p ** self.b


def _recurrence_step(n, S, c):
    """c_n from n c_n = sum_{k=1}^n S_k c_{n-k}; exactness asserted."""
    acc = CycNum.zero(S[1].p)
    for k in range(1, n + 1):
        acc = acc + S[k] * c[n - k]
    out = acc.div_int(n)
    if not out.is_integral():
        raise ConsistencyError(f"c_{n} is not an algebraic integer: division by {n} inexact")
    return out


def coefficients_from_sums(S, top):
    """c_0..c_top from S[1..top] (S is 1-indexed; S[0] unused)."""
    p = S[1].p
    c = [CycNum.one(p)]
    for n in range(1, top + 1):
        c.append(_recurrence_step(n, S, c))
    return c


def functional_equation_holds(coeffs, q):
    """c_{D-i} = c_D * conj(c_i) / q^i for all i (D = degree)."""
    D = len(coeffs) - 1
    top = coeffs[D]
    for i in range(D + 1):
        lhs = coeffs[D - i] * q ** i
        rhs = top * coeffs[i].conjugate()
        if lhs != rhs:
            return False
    return True


def l_poly(f, alpha, degree_check=True, budget=DEGREE_CHECK_BUDGET, functional_check=True,
           method="fast", threads=1, galois_cache=None):
    """L_{alpha f}(chi_1, s) from S_1..S_{d-1}.

    With ``degree_check`` the recurrence is continued to n = d, d+1, d+2 and
    c_n = 0 is asserted for every n whose sum over F_{q^n} fits in ``budget``
    elements; the outcome of each n is recorded in ``checks["degree"]`` as
    "ok" or "skipped".  When ``galois_cache`` (a dict) is given, the
    degree-check sums are shared across the F_p^*-class of alpha.
    """
    d = f.degree
    q = f.field.order
    S = [None]
    for k in range(1, d):
        S.append(exp_sum(f, k, alpha, method=method, threads=threads))
    c = coefficients_from_sums(S, d - 1)
    checks = {}
    if functional_check:
        if not functional_equation_holds(c, q):
            raise ConsistencyError("functional equation failed for L-polynomial")
        checks["functional_equation"] = "ok"
    if degree_check:
        status = []
        ext = list(c)
        for n in range(d, d + 3):
            cost = q ** n
            if cost > budget:
                status.append((n, "skipped", cost))
                # every later sum is larger still
                for m in range(n + 1, d + 3):
                    status.append((m, "skipped", q ** m))
                break
            if galois_cache is not None and method == "fast":
                S.append(exp_sum_galois(f, n, alpha, galois_cache, threads=threads))
            else:
                S.append(exp_sum(f, n, alpha, method=method, threads=threads))
            cn = _recurrence_step(n, S, ext)
            if not cn.is_zero():
                raise ConsistencyError(f"degree check failed: c_{n} != 0")
            ext.append(cn)
            status.append((n, "ok", cost))
        checks["degree"] = status
    return LPolynomial(f.p, f.b, tuple(c), checks)


def np_of_l(L):
    """Normalized Newton polygon: hull of (i, v_p(c_i)/b)."""
    pts = [(i, valuation(ci) / L.b) for i, ci in enumerate(L.coeffs)]
    np_ = hull_from_values(pts)
    D = L.degree
    if np_.endpoint != (D, Fraction(D, 2)):
        raise ConsistencyError(f"endpoint {np_.endpoint} != ({D}, {Fraction(D, 2)})")
    return np_


def l_poly_rank_ell(f, ell, ns, basis=None, check_dual=False, **kw):
    """L_f(chi_ell, s) for chi_ell(c_i^*) = zeta^{n_i}; returns (L, alpha).

    The character is realized as zeta^{Tr(alpha .)} with alpha = sum n_i c_i.
    With ``check_dual`` the sums S_1..S_{d-1} are also evaluated from the
    dual-basis product form and compared.
    """
    p = f.p
    if f.b % ell:
        raise HypothesisError(f"ell={ell} does not divide b={f.b}")
    if len(ns) != ell:
        raise HypothesisError(f"need {ell} character exponents")
    if all(n % p == 0 for n in ns):
        raise HypothesisError("trivial character")
    K = fq.build_field(p, ell)
    if basis is None:
        basis = [K.elem([0] * i + [1]) for i in range(ell)]
    alpha = K.zero()
    for n, c in zip(ns, basis):
        alpha = alpha + c * n
    L = l_poly(f, alpha, **kw)
    if check_dual:
        for k in range(1, f.degree):
            if dual_form_sum(f, k, ell, ns, basis) != exp_sum(f, k, alpha):
                raise ConsistencyError(f"dual-form S_{k} differs from the alpha form")
        L.checks["dual_form"] = "ok"
    return L, alpha


def _subfield_trace(w, ell):
    """Tr_{F_{p^ell}/F_p}(w) for w in the copy of F_{p^ell} inside w.field."""
    acc, y = w, w
    for _ in range(ell - 1):
        y = y ** w.field.p
        acc = acc + y
    if not acc.in_prime_field():
        raise ConsistencyError("element is not in the expected subfield")
    return acc.coeffs[0]


def dual_form_sum(f, k, ell, ns, basis):
    """S_f(k, chi_ell) = sum_x prod_i chi(c_i^*)^{Tr(c_i z)}, z = Tr_{q^k/p^ell} f(x).

    Each z is reconstructed as sum_i Tr(c_i z) c_i^* (asserted).
    """
    p = f.p
    E = sum_field(f, k)
    duals = fq.dual_basis(basis)
    cs = [fq.embed(c, E) for c in (f.const,) + f.coeffs]
    bE = [fq.embed(c, E) for c in basis]
    dE = [fq.embed(c, E) for c in duals]
    counts = [0] * p
    for x in fq.enumerate_field(E):
        z = fq.trace_rel(fq.poly_eval(cs, x), ell)
        t = [_subfield_trace(ci * z, ell) for ci in bE]
        back = E.zero()
        for ti, di in zip(t, dE):
            back = back + di * ti
        if back != z:
            raise ConsistencyError("dual basis failed to reconstruct z")
        counts[sum(n * ti for n, ti in zip(ns, t)) % p] += 1
    return zeta_power_combination(p, counts)


__all__ = [
    "PolyOverFq", "LPolynomial", "exp_sum", "exp_sum_galois", "histogram_fast",
    "histogram_naive", "l_poly", "l_poly_rank_ell", "np_of_l", "dual_form_sum",
    "coefficients_from_sums", "functional_equation_holds", "scaling_class",
    "DEGREE_CHECK_BUDGET", "FeasibilityError",
]
