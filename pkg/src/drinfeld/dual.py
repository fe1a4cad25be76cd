"""Dual numbers F[eps] with eps^2 = 0 over a finite field.

This is the second coefficient ring the skew-polynomial layer supports; it
carries exactly the nilpotents needed for first-order deformation checks.
Because q >= 2, the q-power Frobenius kills the eps part:
(a + b*eps)^q = a^q.
"""

from __future__ import annotations

from .fields import FieldElement, FiniteField


class DualNumbers:
    """The ring F[eps], eps^2 = 0, over a finite field F."""

    def __init__(self, field: FiniteField):
        self.field = field
        self.zero = DualElement(self, field.zero, field.zero)
        self.one = DualElement(self, field.one, field.zero)
        self.eps = DualElement(self, field.zero, field.one)

    @property
    def p(self):
        return self.field.p

    @property
    def q(self):
        return self.field.q

    @property
    def cardinality(self):
        return self.field.cardinality ** 2

    def element(self, a, b=0) -> "DualElement":
        return DualElement(self, self.field.element(a), self.field.element(b))

    def from_field(self, x: FieldElement) -> "DualElement":
        return DualElement(self, x, self.field.zero)

    def elements(self, budget=None):
        if budget is not None and self.cardinality > budget:
            raise ValueError("enumeration budget exceeded")
        for a in self.field.elements():
            for b in self.field.elements():
                yield DualElement(self, a, b)

    def __eq__(self, other):
        return isinstance(other, DualNumbers) and self.field == other.field

    def __hash__(self):
        return hash(("dual", self.field))

    def __repr__(self):
        return f"{self.field}[eps]"


class DualElement:
    """a + b*eps with a, b in the underlying field."""

    __slots__ = ("ring", "a", "b")

    def __init__(self, ring, a, b):
        self.ring = ring
        self.a = a
        self.b = b

    def _match(self, other):
        if isinstance(other, DualElement):
            if other.ring == self.ring:
                return other
            raise TypeError("mixed dual-number rings")
        if isinstance(other, int):
            return self.ring.element(other)
        if isinstance(other, FieldElement):
            return self.ring.from_field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._match(other)
        if o is NotImplemented:
            return NotImplemented
        return DualElement(self.ring, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return DualElement(self.ring, -self.a, -self.b)

    def __sub__(self, other):
        o = self._match(other)
        if o is NotImplemented:
            return NotImplemented
        return DualElement(self.ring, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._match(other)
        if o is NotImplemented:
            return NotImplemented
        # (a + b eps)(c + d eps) = ac + (ad + bc) eps
        return DualElement(self.ring, self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self):
        if not self.a.is_unit():
            raise ZeroDivisionError("dual number with nilpotent field part has no inverse")
        ai = self.a.inverse()
        return DualElement(self.ring, ai, -(ai * ai * self.b))

    def __truediv__(self, other):
        o = self._match(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def frobenius(self, iterations=1):
        """(a + b eps)^(q^i); for i >= 1 the eps part dies since q >= 2."""
        if iterations == 0:
            return self
        return DualElement(
            self.ring, self.a.frobenius(iterations), self.ring.field.zero
        )

    def qth_root(self, iterations=1):
        if iterations == 0:
            return self
        if not self.b.is_zero():
            raise ValueError(
                "dual number with nonzero eps part is not a q-th power"
            )
        return DualElement(self.ring, self.a.qth_root(iterations), self.ring.field.zero)

    def is_unit(self):
        return self.a.is_unit()

    def is_nilpotent(self):
        return self.a.is_zero()

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    @property
    def eps_part(self):
        return self.b

    @property
    def field_part(self):
        return self.a

    def __eq__(self, other):
        if isinstance(other, int):
            return self.b.is_zero() and self.a == other
        if isinstance(other, FieldElement):
            return self.b.is_zero() and self.a == other
        return (
            isinstance(other, DualElement)
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((self.a, self.b, "eps"))

    def __repr__(self):
        return f"({self.a}|{self.b})"
