"""Kernel polynomials, quotient modules and isogenies.

A finite A-submodule is given extensionally: its etale points over a named
splitting field plus a local multiplicity q^e concentrated at 0.  The
monic additive polynomial with that kernel divisor is tau^e times the
expanded product over the etale points; the quotient module is recovered
by one right division, whose zero remainder doubles as a correctness
assertion.
"""

from __future__ import annotations

from . import skew
from .base_ring import BaseIdeal
from .drinfeld_modules import DrinfeldModule, base_change, frobenius_twist
from .fields import FieldElement, FiniteField, embed


class TorsionSubmodule:
    """A finite flat A-submodule H of some E, over a splitting field L.

    points: all etale points (always contains 0); local_exponent e encodes a
    connected part of rank q^e supported at 0.
    """

    def __init__(self, E: DrinfeldModule, L: FiniteField, points, local_exponent=0, check=True):
        pts = frozenset(embed(x, L) for x in points)
        self.module = E
        self.field = L
        self.points = pts
        self.local_exponent = local_exponent
        if check:
            self._validate()

    @property
    def order(self) -> int:
        return len(self.points) * self.module.q**self.local_exponent

    def _validate(self):
        E, L, pts = self.module, self.field, self.points
        q = E.q
        if self.local_exponent < 0:
            raise ValueError("local exponent must be >= 0")
        if L.zero not in pts:
            raise ValueError("a submodule contains 0")
        size = len(pts)
        while size % q == 0:
            size //= q
        if size != 1:
            raise ValueError(f"point count {len(pts)} is not a power of q={q}")
        for x in pts:
            if any(x + y not in pts for y in pts):
                raise ValueError("point set is not closed under addition")
            for c in range(1, q):
                # F_q-scaling: scalars act through the base field inside L
                s = embed(E.base.from_code(c), L)
                if s * x not in pts:
                    raise ValueError("point set is not F_q-stable")
        ptL = _lift_skew(E.phi_t, L)
        for x in pts:
            if skew.apply_additive(ptL, L, x) not in pts:
                raise ValueError("point set is not stable under the A-action")

    def __repr__(self):
        return (
            f"TorsionSubmodule({len(self.points)} etale points, "
            f"local q^{self.local_exponent})"
        )


def _lift_skew(f: skew.SkewPolynomial, L: FiniteField) -> skew.SkewPolynomial:
    return skew.SkewPolynomial(L, [embed(c, L) for c in f.coeffs])


def kernel_polynomial(H: TorsionSubmodule) -> skew.SkewPolynomial:
    """The monic additive polynomial whose kernel divisor is H: each etale
    point with multiplicity q^e, realized as tau^e * prod(X - x)."""
    L = H.field
    # expand prod_{x in H}(X - x) as an ordinary polynomial over L
    poly = [L.one]
    for x in sorted(H.points, key=lambda v: v.code):
        poly = [L.zero] + poly
        for i in range(len(poly) - 1):
            poly[i] = poly[i] - x * poly[i + 1]
    q = H.module.q
    skew_coeffs = {}
    for exp, c in enumerate(poly):
        if c.is_zero():
            continue
        i = 0
        while q**i < exp:
            i += 1
        if q**i != exp:
            raise ValueError("kernel product is not additive: H is not F_q-linear")
        skew_coeffs[i] = c
    d = max(skew_coeffs) if skew_coeffs else 0
    etale = skew.SkewPolynomial(L, [skew_coeffs.get(i, L.zero) for i in range(d + 1)])
    return skew.tau_power(L, H.local_exponent) * etale


class Isogeny:
    """xi: E -> F with xi phi_a = psi_a xi; checked on T since T generates A."""

    __slots__ = ("source", "target", "xi")

    def __init__(self, source: DrinfeldModule, target: DrinfeldModule, xi: skew.SkewPolynomial):
        self.source = source
        self.target = target
        self.xi = xi

    @property
    def field(self) -> FiniteField:
        return self.source.field

    def degree_rank(self):
        return skew.rank(self.xi)

    def apply(self, x: FieldElement) -> FieldElement:
        return skew.apply_additive(self.xi, self.field, x)

    def __repr__(self):
        return f"Isogeny(xi={self.xi})"


def identity_isogeny(E: DrinfeldModule) -> Isogeny:
    return Isogeny(E, E, skew.one(E.field))


def quotient_by(E: DrinfeldModule, H: TorsionSubmodule):
    """The quotient module E/H with its connecting isogeny.

    Exists iff gamma(T)^(q^h) = gamma(T) for h the height of H's kernel
    polynomial; psi_T is the exact right quotient of xi*phi_T by xi.
    """
    L = H.field
    xi = kernel_polynomial(H)
    EL = base_change(E, L)
    h = skew.height(xi)
    t = EL.afield.t_image
    if t.frobenius(h) != t:
        raise ValueError(
            "no quotient module: structure map violates the height condition "
            f"gamma(T)^(q^{h}) = gamma(T)"
        )
    psi_t, rem = skew.right_divide(xi * EL.phi_t, xi)
    if not rem.is_zero():
        raise AssertionError(
            "nonzero remainder dividing xi*phi_T by xi: kernel is not A-stable"
        )
    if psi_t.degree != EL.rank:
        raise AssertionError("quotient lost rank")  # pragma: no cover
    if psi_t[0] != t:
        raise AssertionError("quotient changed the structure map")  # pragma: no cover
    F = DrinfeldModule(EL.afield, psi_t.coeffs[1:])
    return F, Isogeny(EL, F, xi)


def compose(g: Isogeny, f: Isogeny) -> Isogeny:
    if f.target != g.source:
        raise ValueError("isogenies do not compose: target(f) != source(g)")
    return Isogeny(f.source, g.target, g.xi * f.xi)


def verify_isogeny(iso: Isogeny) -> bool:
    """Commutation with the T-action plus the finiteness and rank checks."""
    if iso.xi.is_zero():
        return False
    if iso.source.field != iso.target.field:
        return False
    if iso.source.afield != iso.target.afield:
        return False
    if iso.source.rank != iso.target.rank:
        return False
    if skew.rank(iso.xi) is None:
        return False
    return iso.xi * iso.source.phi_t == iso.target.phi_t * iso.xi


def frobenius_isogeny(E: DrinfeldModule) -> Isogeny:
    """tau^m : E -> E^(q^m) for m the degree of the characteristic; its
    kernel is the connected part q^m [0] of E[p]."""
    p = E.characteristic
    m = p.degree
    target = frobenius_twist(E, m)
    xi = skew.tau_power(E.field, m)
    iso = Isogeny(E, target, xi)
    if not verify_isogeny(iso):
        raise AssertionError("frobenius isogeny failed verification")  # pragma: no cover
    return iso


def full_torsion_submodule(E: DrinfeldModule, n: BaseIdeal, L: FiniteField) -> TorsionSubmodule:
    """E[n] as a TorsionSubmodule over L: all rational etale points plus the
    connected multiplicity q^hgt(phi_n)."""
    f = E.phi(n.gen)
    fL = _lift_skew(f, L)
    hgt = skew.height(fL)
    pts = skew.kernel_points(fL, L)
    expected = E.q ** (f.degree - hgt)
    if len(pts) != expected:
        raise ValueError(
            f"L does not split E[{n}]: found {len(pts)} points, need {expected}"
        )
    return TorsionSubmodule(E, L, pts, local_exponent=hgt)
