"""The coefficient ring A = F_q[T]: elements, ideals, factoring, residues.

A is a PID here, so ideals are identified with their monic generators and
the chinese remainder theorem is available through explicit idempotents.
Factorization is deterministic trial division; all the experiments stay at
degree <= 4 where that is instant.
"""

from __future__ import annotations

import itertools

from . import linalg
from .dual import DualElement, DualNumbers
from .fields import FieldElement, FiniteField, embed


class BasePoly:
    """Polynomial in T over the base field F_q, constant term first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs):
        cs = [field.element(c) if not isinstance(c, FieldElement) else c for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def __add__(self, other):
        z = self.field.zero
        return BasePoly(
            self.field,
            [a + b for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=z)],
        )

    def __neg__(self):
        return BasePoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return BasePoly(self.field, [c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return BasePoly(self.field, [])
        z = self.field.zero
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return BasePoly(self.field, out)

    def __pow__(self, k):
        result = BasePoly.one_poly(self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        inv = other.coeffs[-1].inverse()
        q = [self.field.zero] * max(self.degree - other.degree + 1, 0)
        r = list(self.coeffs)
        while len(r) >= len(other.coeffs) and r:
            f = r[-1] * inv
            shift = len(r) - len(other.coeffs)
            q[shift] = f
            for j, b in enumerate(other.coeffs):
                r[shift + j] = r[shift + j] - f * b
            while r and r[-1].is_zero():
                r.pop()
        return BasePoly(self.field, q), BasePoly(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero():
            return self
        inv = self.coeffs[-1].inverse()
        return BasePoly(self.field, [c * inv for c in self.coeffs])

    def evaluate(self, x):
        """Horner evaluation at a field or dual element; base coefficients
        are embedded along the declared tower."""
        if isinstance(x, DualElement):
            target = x.ring
            lift = lambda c: DualElement(target, embed(c, target.field), target.field.zero)
            acc = target.zero
        else:
            target = x.field
            lift = lambda c: embed(c, target)
            acc = target.zero
        for c in reversed(self.coeffs):
            acc = acc * x + lift(c)
        return acc

    def code_key(self):
        return (self.degree, tuple(c.code for c in self.coeffs))

    def __eq__(self, other):
        return (
            isinstance(other, BasePoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((tuple(c.code for c in self.coeffs), self.field.q))

    def __repr__(self):
        return format_base_poly(self)

    @staticmethod
    def zero_poly(field):
        return BasePoly(field, [])

    @staticmethod
    def one_poly(field):
        return BasePoly(field, [field.one])

    @staticmethod
    def t(field):
        return BasePoly(field, [field.zero, field.one])

    @staticmethod
    def from_codes(field, codes):
        return BasePoly(field, [field.from_code(c) for c in codes])


def monic_polys(field, degree):
    """All monic polynomials of the given degree, constant term varying
    fastest (the same code order fields enumerate in)."""
    card = field.cardinality
    for code in range(card**degree):
        coeffs = []
        c = code
        for _ in range(degree):
            c, digit = divmod(c, card)
            coeffs.append(field.from_code(digit))
        yield BasePoly(field, coeffs + [field.one])


def poly_gcd(a: BasePoly, b: BasePoly) -> BasePoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_ext_gcd(a: BasePoly, b: BasePoly):
    """(g, s, t) with s*a + t*b = g = gcd(a, b), g monic."""
    f = a.field
    r0, r1 = a, b
    s0, s1 = BasePoly.one_poly(f), BasePoly.zero_poly(f)
    t0, t1 = BasePoly.zero_poly(f), BasePoly.one_poly(f)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lead_inv = r0.coeffs[-1].inverse()
    return r0 * lead_inv, s0 * lead_inv, t0 * lead_inv


def is_irreducible_poly(a: BasePoly) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    d = a.degree
    if d <= 0:
        return False
    if d == 1:
        return True
    if a.coeffs[0].is_zero():
        return False
    for j in range(1, d // 2 + 1):
        for cand in monic_polys(a.field, j):
            if (a % cand).is_zero():
                return False
    return True


class BaseIdeal:
    """Nonzero ideal of A = F_q[T], stored by its monic generator."""

    __slots__ = ("gen",)

    def __init__(self, gen: BasePoly):
        if gen.is_zero():
            raise ValueError("the zero ideal is not supported here")
        self.gen = gen.monic()

    @property
    def field(self):
        return self.gen.field

    @property
    def degree(self):
        return self.gen.degree

    def is_unit_ideal(self):
        return self.gen.degree == 0

    def is_prime(self):
        return is_irreducible_poly(self.gen)

    def contains(self, a: BasePoly):
        return (a % self.gen).is_zero()

    def __mul__(self, other):
        return BaseIdeal(self.gen * other.gen)

    def __pow__(self, k):
        return BaseIdeal(self.gen**k)

    def residues(self):
        """All residue representatives mod this ideal (degree < deg), in
        code order."""
        d = self.degree
        f = self.field
        for combo in itertools.product(range(f.cardinality), repeat=d):
            yield BasePoly(f, [f.from_code(c) for c in combo])

    def __eq__(self, other):
        return isinstance(other, BaseIdeal) and self.gen == other.gen

    def __hash__(self):
        return hash(("ideal", self.gen))

    def __repr__(self):
        return f"({format_base_poly(self.gen)})"


def factor(n: BaseIdeal):
    """Complete prime factorization, sorted by (degree, coefficient codes)."""
    remaining = n.gen
    field = n.field
    out = []
    d = 1
    while remaining.degree > 0:
        if d > remaining.degree:
            raise AssertionError("factorization ran past the degree")  # pragma: no cover
        for cand in monic_polys(field, d):
            mult = 0
            while (remaining % cand).is_zero():
                remaining = remaining // cand
                mult += 1
            if mult:
                out.append((BaseIdeal(cand), mult))
        d += 1
    out.sort(key=lambda pm: pm[0].gen.code_key())
    return out


def is_admissible(n: BaseIdeal) -> bool:
    """At least two distinct prime factors."""
    return len(factor(n)) >= 2


class ResidueField:
    """kappa(p) = A/p together with the reduction map A -> kappa(p)."""

    def __init__(self, prime: BaseIdeal):
        if not prime.is_prime():
            raise ValueError(f"{prime} is not prime")
        self.prime = prime
        base = prime.field
        m = prime.degree
        self.field = base if m == 1 else base.extension(m)
        self.t_image = self._find_root(prime.gen, self.field)

    @staticmethod
    def _find_root(gen: BasePoly, L: FiniteField):
        for x in L.elements(budget=1 << 14):
            if gen.evaluate(x).is_zero():
                return x
        raise AssertionError("irreducible polynomial has no root in its residue field")

    def reduce(self, a: BasePoly) -> FieldElement:
        return (a % self.prime.gen).evaluate(self.t_image)

    def __repr__(self):
        return f"kappa({self.prime}) = {self.field}"


def residue_field(p: BaseIdeal) -> ResidueField:
    return ResidueField(p)


class CRTDecomposition:
    """A/n as a product of prime-power quotients, with both directions."""

    def __init__(self, n: BaseIdeal):
        self.ideal = n
        self.factors = [q**e for q, e in factor(n)]
        self._idempotents = []
        for f in self.factors:
            rest = n.gen // f.gen
            g, s, _ = poly_ext_gcd(rest, f.gen)
            if not g.is_one():
                raise AssertionError("prime-power factors are not coprime")  # pragma: no cover
            # s*rest == 1 mod f.gen and == 0 mod the other factors
            self._idempotents.append((s * rest) % n.gen)

    def to_components(self, a: BasePoly):
        return [a % f.gen for f in self.factors]

    def from_components(self, parts):
        if len(parts) != len(self.factors):
            raise ValueError("wrong number of residue components")
        acc = BasePoly.zero_poly(self.ideal.field)
        for part, idem in zip(parts, self._idempotents):
            acc = acc + part * idem
        return acc % self.ideal.gen


def module_crt(n: BaseIdeal) -> CRTDecomposition:
    return CRTDecomposition(n)


class AField:
    """An A-field: a finite field K with the F_q-algebra map T -> t_image.

    Over a finite K the structure map always has a nonzero kernel, so the
    characteristic is the prime ideal generated by the minimal polynomial
    of t_image over F_q.
    """

    __slots__ = ("field", "t_image", "_char")

    def __init__(self, field: FiniteField, t_image: FieldElement):
        if t_image.field != field:
            t_image = embed(t_image, field)
        self.field = field
        self.t_image = t_image
        self._char = None

    @property
    def base(self) -> FiniteField:
        return self.field.base

    def map(self, a: BasePoly) -> FieldElement:
        """gamma(a) = a(t_image)."""
        return a.evaluate(embed(self.t_image, self.field))

    @property
    def characteristic(self) -> BaseIdeal:
        if self._char is None:
            self._char = BaseIdeal(min_poly_over_base(self.t_image, self.field))
        return self._char

    def base_change(self, L: FiniteField) -> "AField":
        return AField(L, embed(self.t_image, L))

    def __eq__(self, other):
        return (
            isinstance(other, AField)
            and self.field == other.field
            and self.t_image == other.t_image
        )

    def __hash__(self):
        return hash((self.field, self.t_image))

    def __repr__(self):
        return f"AField({self.field}, T -> {self.t_image})"


def min_poly_over_base(x: FieldElement, K: FiniteField) -> BasePoly:
    """Monic minimal polynomial of x over the base field F_q of K."""
    base = K.base
    p, e, n = K.p, K.e, K.n
    scalars = [embed(base.from_code(base.p**j), K) for j in range(e)]
    powers = [K.one]
    for _ in range(K.k):
        powers.append(powers[-1] * x)
    for d in range(1, K.k + 1):
        # solve x^d = sum_{i<d} c_i x^i with c_i in F_q, as an F_p system
        cols = []
        for i in range(d):
            for s in scalars:
                cols.append(list((s * powers[i]).coeffs))
        mat = [[cols[j][i] for j in range(len(cols))] for i in range(n)]
        target = list(powers[d].coeffs)
        sol = linalg.solve(mat, target, p)
        if sol is None:
            continue
        coeffs = []
        for i in range(d):
            c = base.zero
            for j in range(e):
                c = c + base.from_code(base.p**j) * base.element(sol[i * e + j])
            coeffs.append(-c)
        return BasePoly(base, coeffs + [base.one])
    raise AssertionError("element has no minimal polynomial")  # pragma: no cover


# ---------------------------------------------------------------------------
# Text format: polynomials in T like 'T^2+T+1', coefficients int or [list]


def parse_base_poly(text: str, field: FiniteField) -> BasePoly:
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty polynomial")
    coeffs: dict[int, FieldElement] = {}
    for term in text.split("+"):
        if not term:
            raise ValueError(f"empty term in {text!r}")
        if "T" in term:
            head, _, tail = term.partition("T")
            if head.endswith("*"):
                head = head[:-1]
            if head:
                c = (
                    field.element(parse_int_list(head))
                    if head.startswith("[")
                    else field.element(int(head))
                )
            else:
                c = field.one
            if tail.startswith("^"):
                k = int(tail[1:])
            elif tail == "":
                k = 1
            else:
                raise ValueError(f"bad term {term!r}")
        else:
            k = 0
            c = (
                field.element(parse_int_list(term))
                if term.startswith("[")
                else field.element(int(term))
            )
        existing = coeffs.get(k, field.zero)
        coeffs[k] = existing + c
    top = max(coeffs)
    return BasePoly(field, [coeffs.get(i, field.zero) for i in range(top + 1)])


def parse_int_list(text: str):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"expected [c0,c1,...], got {text!r}")
    inner = text[1:-1]
    return [int(t) for t in inner.split(",")] if inner else []


def format_base_poly(a: BasePoly) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for i in range(a.degree, -1, -1):
        c = a[i]
        if c.is_zero():
            continue
        if c == a.field.one:
            cs = "" if i > 0 else "1"
        elif a.field.n == 1:
            cs = str(c.coeffs[0])
        else:
            cs = "[" + ",".join(str(v) for v in c.coeffs) + "]"
        if i == 0:
            parts.append(cs)
        elif i == 1:
            parts.append(f"{cs}T" if cs else "T")
        else:
            parts.append(f"{cs}T^{i}" if cs else f"T^{i}")
    return "+".join(parts)
