"""The twisted polynomial ring R{tau} with commutation rule tau*r = r^q*tau.

Coefficients live in a finite field or in dual numbers over one; those are
the only coefficient rings the rest of the package evaluates on.  A skew
polynomial sum(x_i tau^i) acts on any extension field as the F_q-linear
("additive") polynomial sum(x_i X^(q^i)); kernels of that action are
computed by plain linear algebra over the prime field.

Division conventions: ``right_divide(f, g)`` writes f = quotient*g +
remainder (divisor on the right), ``left_divide(f, g)`` writes f =
g*quotient + remainder.  Left division needs q-th roots of units; over dual
numbers a unit with nonzero eps part has none, and a ValueError is raised
when that case is actually hit.
"""

from __future__ import annotations

import itertools

from . import linalg
from .dual import DualElement, DualNumbers
from .fields import FieldElement, FiniteField, embed


def _ring_of_value(x):
    if isinstance(x, FieldElement):
        return x.field
    if isinstance(x, DualElement):
        return x.ring
    raise TypeError(f"not a coefficient value: {x!r}")


def coerce_value(c, target):
    """Move a coefficient into a compatible larger ring (field or dual)."""
    if isinstance(target, DualNumbers):
        if isinstance(c, DualElement):
            if c.ring == target:
                return c
            return DualElement(
                target, embed(c.a, target.field), embed(c.b, target.field)
            )
        return DualElement(target, embed(c, target.field), target.field.zero)
    if isinstance(c, DualElement):
        raise TypeError("cannot project a dual number into a field")
    return embed(c, target)


class SkewPolynomial:
    """Element of R{tau}; coefficient of tau^i is coeffs[i], trailing zeros
    trimmed so equality is coefficient-list equality."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        while coeffs and coeffs[-1].is_zero():
            coeffs = coeffs[:-1]
        self.ring = ring
        self.coeffs = tuple(coeffs)

    # -- basics -------------------------------------------------------------

    @property
    def degree(self):
        """tau-degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero

    @property
    def lead(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return (
            isinstance(other, SkewPolynomial)
            and self.ring == other.ring
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.coeffs, id(type(self.ring)), getattr(self.ring, "q", 0)))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append(f"{c}*t")
            else:
                parts.append(f"{c}*t^{i}")
        return " + ".join(parts)

    # -- ring operations ------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, SkewPolynomial):
            raise TypeError(f"expected skew polynomial, got {other!r}")
        if other.ring != self.ring:
            raise ValueError("mismatched coefficient rings")
        return other

    def __add__(self, other):
        o = self._check(other)
        z = self.ring.zero
        out = [
            a + b
            for a, b in itertools.zip_longest(self.coeffs, o.coeffs, fillvalue=z)
        ]
        return SkewPolynomial(self.ring, out)

    def __neg__(self):
        return SkewPolynomial(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        o = self._check(other)
        if self.is_zero() or o.is_zero():
            return SkewPolynomial(self.ring, [])
        z = self.ring.zero
        out = [z] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * b.frobenius(i)
        return SkewPolynomial(self.ring, out)

    def scale(self, c):
        """Left multiplication by the degree-zero coefficient c."""
        return SkewPolynomial(self.ring, [c * x for x in self.coeffs])


def skew(ring, coeffs) -> SkewPolynomial:
    """Build a skew polynomial, coercing ints and field values."""
    out = []
    for c in coeffs:
        if isinstance(c, (FieldElement, DualElement)):
            out.append(coerce_value(c, ring) if _ring_of_value(c) != ring else c)
        else:
            out.append(ring.element(c))
    return SkewPolynomial(ring, out)


def zero(ring) -> SkewPolynomial:
    return SkewPolynomial(ring, [])


def one(ring) -> SkewPolynomial:
    return SkewPolynomial(ring, [ring.one])


def tau_power(ring, i, coeff=None) -> SkewPolynomial:
    c = ring.one if coeff is None else coeff
    return SkewPolynomial(ring, [ring.zero] * i + [c])


def skew_mul(f: SkewPolynomial, g: SkewPolynomial) -> SkewPolynomial:
    return f * g


# ---------------------------------------------------------------------------
# Division


def right_divide(f: SkewPolynomial, g: SkewPolynomial):
    """f = quotient * g + remainder with deg(remainder) < deg(g)."""
    if g.is_zero():
        raise ZeroDivisionError("skew division by zero")
    if not g.lead.is_unit():
        raise ValueError("divisor needs a unit leading coefficient")
    ring = f.ring
    inv_lead = g.lead.inverse()
    quot = zero(ring)
    rem = f
    while not rem.is_zero() and rem.degree >= g.degree:
        d = rem.degree - g.degree
        c = rem.lead * inv_lead.frobenius(d)
        term = tau_power(ring, d, c)
        quot = quot + term
        rem = rem - term * g
    return quot, rem


def left_divide(f: SkewPolynomial, g: SkewPolynomial):
    """f = g * quotient + remainder with deg(remainder) < deg(g)."""
    if g.is_zero():
        raise ZeroDivisionError("skew division by zero")
    if not g.lead.is_unit():
        raise ValueError("divisor needs a unit leading coefficient")
    ring = f.ring
    inv_lead = g.lead.inverse()
    m = g.degree
    quot = zero(ring)
    rem = f
    while not rem.is_zero() and rem.degree >= m:
        d = rem.degree - m
        c = (rem.lead * inv_lead).qth_root(m)
        term = tau_power(ring, d, c)
        quot = quot + term
        rem = rem - g * term
    return quot, rem


# ---------------------------------------------------------------------------
# Rank, height, derivative (the three operators of a finite morphism)


def rank_index(f: SkewPolynomial):
    """Largest index carrying a unit coefficient, or None if no coefficient
    is a unit (the morphism is not finite)."""
    n = None
    for i, c in enumerate(f.coeffs):
        if c.is_unit():
            n = i
    return n


def rank(f: SkewPolynomial):
    """q^n for the rank index n; None when undefined (not finite)."""
    n = rank_index(f)
    if n is None:
        return None
    return f.ring.q**n


def height(f: SkewPolynomial) -> int:
    for i, c in enumerate(f.coeffs):
        if not c.is_nilpotent():
            return i
    raise ValueError("height undefined: every coefficient is nilpotent")


def derivative0(f: SkewPolynomial):
    return f[0]


# ---------------------------------------------------------------------------
# Normalization: conjugate away the nilpotent tail above the rank index


def invert_unit(f: SkewPolynomial) -> SkewPolynomial:
    """Inverse of a unit: unit constant term, nilpotent higher coefficients.

    The inverse is the truncated geometric series; over the supported rings
    the nilpotent tail squares to zero, so it closes after one step.
    """
    if f.is_zero() or not f[0].is_unit():
        raise ValueError("not a unit: constant term must be invertible")
    for c in f.coeffs[1:]:
        if not c.is_nilpotent():
            raise ValueError("not a unit: higher coefficients must be nilpotent")
    ring = f.ring
    a = skew(ring, [f[0].inverse()])
    tail = f - skew(ring, [f[0]])
    g = a - a * tail * a
    if not ((f * g) == one(ring) and (g * f) == one(ring)):
        raise AssertionError("unit inversion failed")  # pragma: no cover
    return g


def standardize(xi: SkewPolynomial):
    """Return (sigma, xi') with sigma = 1 + nilpotent tail, sigma^-1 xi sigma
    = xi' and xi' cut off at the rank index.  Over a coefficient field this
    is the identity transformation."""
    n = rank_index(xi)
    if n is None:
        raise ValueError("cannot standardize: polynomial is not finite")
    ring = xi.ring
    sigma = one(ring)
    cur = xi
    while cur.degree > n:
        m = cur.degree
        c = cur.lead * (cur[n].frobenius(m - n)).inverse()
        step = tau_power(ring, m - n, c) + one(ring)
        step_inv = one(ring) - tau_power(ring, m - n, c)
        cur = step_inv * (cur * step)
        sigma = sigma * step
    return sigma, cur


# ---------------------------------------------------------------------------
# Additive-polynomial viewpoint


def to_additive(f: SkewPolynomial):
    """List of (exponent, coefficient) pairs of sum(x_i X^(q^i))."""
    q = f.ring.q
    return [(q**i, c) for i, c in enumerate(f.coeffs) if not c.is_zero()]


def format_additive(f: SkewPolynomial) -> str:
    terms = []
    for e, c in to_additive(f):
        base = "X" if e == 1 else f"X^{e}"
        terms.append(base if c == 1 else f"{c}*{base}")
    return " + ".join(terms) if terms else "0"


def lift(f: SkewPolynomial, L: FiniteField) -> SkewPolynomial:
    """Re-coefficient a field-coefficient skew polynomial over an extension."""
    return SkewPolynomial(L, [embed(c, L) for c in f.coeffs])


def eval_additive(f: SkewPolynomial, x):
    """Evaluate the additive polynomial of f at x (field or dual element in
    any ring the coefficients embed into)."""
    target = _ring_of_value(x)
    acc = target.zero
    power = x
    for i, c in enumerate(f.coeffs):
        if i > 0:
            power = power.frobenius(1)
        if not c.is_zero():
            acc = acc + coerce_value(c, target) * power
    return acc


# ---------------------------------------------------------------------------
# Kernels over extension fields, by F_p-linear algebra

_MAP_COLS_CACHE: dict = {}


def additive_map_cols(f: SkewPolynomial, K: FiniteField):
    """Basis-image columns (element codes) of x -> f(x) on K."""
    key = (f.coeffs, K.p, K.e, K.modulus)
    cols = _MAP_COLS_CACHE.get(key)
    if cols is None:
        cols = [eval_additive(f, K.from_code(K.p**j)).code for j in range(K.n)]
        _MAP_COLS_CACHE[key] = cols
    return cols


def apply_additive(f: SkewPolynomial, K: FiniteField, x: FieldElement):
    return K.from_code(K._apply_cols(additive_map_cols(f, K), x.code))


def _cols_to_matrix(cols, K):
    return [[K._decode(cols[j])[i] for j in range(K.n)] for i in range(K.n)]


def kernel_dimension(f: SkewPolynomial, K: FiniteField) -> int:
    """dim over F_q of {x in K : f(x) = 0}."""
    cols = additive_map_cols(f, K)
    mat = _cols_to_matrix(cols, K)
    fp_dim = K.n - linalg.rank(mat, K.p)
    if fp_dim % K.e:
        raise AssertionError("kernel is not an F_q-subspace")  # pragma: no cover
    return fp_dim // K.e


def kernel_points(f: SkewPolynomial, K: FiniteField, limit=65536):
    """All kernel points of f in K, sorted in coefficient-lex order."""
    cols = additive_map_cols(f, K)
    mat = _cols_to_matrix(cols, K)
    basis = linalg.kernel_basis(mat, K.p)
    if K.p ** len(basis) > limit:
        raise ValueError(
            f"kernel of size {K.p ** len(basis)} exceeds point budget {limit}"
        )
    pts = []
    for combo in itertools.product(range(K.p), repeat=len(basis)):
        v = [0] * K.n
        for c, vec in zip(combo, basis):
            if c:
                for i in range(K.n):
                    v[i] += c * vec[i]
        pts.append(K.element(v))
    return sorted(set(pts), key=lambda x: x.code)


def kernel_basis(f: SkewPolynomial, K: FiniteField):
    """An F_q-basis of the kernel of f acting on K."""
    cols = additive_map_cols(f, K)
    mat = _cols_to_matrix(cols, K)
    fp_basis = linalg.kernel_basis(mat, K.p)
    if not fp_basis:
        return []
    if K.e == 1:
        return [K.element(v) for v in fp_basis]
    # greedy F_q-independent subset: absorb all F_q-multiples into the span
    scalars = [embed(K.base.from_code(K.base.p**j), K) for j in range(K.e)]
    span_rows: list = []
    pivots: list = []
    basis = []
    for v in fp_basis:
        if linalg.span_contains(span_rows, pivots, v, K.p):
            continue
        x = K.element(v)
        basis.append(x)
        for s in scalars:
            linalg.span_append(span_rows, pivots, list((s * x).coeffs), K.p)
    return basis
