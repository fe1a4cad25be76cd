"""Level structures on rank-2 modules over splitting fields.

Gamma0(n): a cyclic A/n-submodule of E[n], stored as its etale point set
plus a local multiplicity q^e at 0.  Gamma1(n): a point of exact order n
(or the zero map at the characteristic).  Gamma(n): an ordered basis.

Away from the characteristic everything is enumerated from the rational
point set of E[n]; at the characteristic only prime level is supported
(ordinary modules carry the reduced and the connected structure, and
supersingular ones only the connected one).  Composite ideals go through
the prime-power CRT decomposition and are reassembled as products.
"""

from __future__ import annotations

import itertools

from . import skew
from .base_ring import BaseIdeal, BasePoly, factor, poly_gcd
from .drinfeld_modules import (
    DrinfeldModule,
    base_change,
    height_at_characteristic,
    separable_dimension,
)
from .fields import FiniteField, embed
from .isogeny import Isogeny


class Gamma0Structure:
    """Cyclic A/n-submodule datum: etale points over L + local rank q^e."""

    def __init__(self, E: DrinfeldModule, n: BaseIdeal, L: FiniteField, etale_points, local_exponent=0):
        self.module = E
        self.ideal = n
        self.field = L
        self.etale_points = frozenset(etale_points)
        self.local_exponent = local_exponent

    @property
    def order(self):
        return len(self.etale_points) * self.module.q**self.local_exponent

    def sort_key(self):
        return (self.local_exponent, tuple(sorted(x.code for x in self.etale_points)))

    def generator(self):
        """Lex-least point whose A-orbit is the whole etale part."""
        target = self.etale_points
        mats = _action_cols(self.module, self.ideal, self.field)
        for x in sorted(target, key=lambda v: v.code):
            orbit = {self.field.from_code(self.field._apply_cols(cols, x.code)) for cols in mats.values()}
            if orbit == target:
                return x
        raise AssertionError("gamma0 structure has no cyclic generator")  # pragma: no cover

    def to_json(self):
        return {
            "n": str(self.ideal.gen),
            "etale_generator": list(self.generator().coeffs),
            "local_mult": self.local_exponent,
        }

    def __eq__(self, other):
        return (
            isinstance(other, Gamma0Structure)
            and self.ideal == other.ideal
            and self.etale_points == other.etale_points
            and self.local_exponent == other.local_exponent
        )

    def __hash__(self):
        return hash((self.ideal, self.etale_points, self.local_exponent))

    def __repr__(self):
        return (
            f"Gamma0({self.ideal}; {len(self.etale_points)} etale pts"
            + (f", local q^{self.local_exponent}" if self.local_exponent else "")
            + ")"
        )


class Gamma1Structure:
    """Point of exact order n (zero for the purely local map at the char)."""

    def __init__(self, E, n, L, generator):
        self.module = E
        self.ideal = n
        self.field = L
        self.generator = generator

    def induced_gamma0(self):
        pts = _orbit(self.module, self.ideal, self.field, self.generator)
        e = 0
        if self.generator.is_zero():
            # the zero morphism generates the connected structure at the char
            e = self.ideal.degree
        return Gamma0Structure(self.module, self.ideal, self.field, pts, e)

    def __eq__(self, other):
        return (
            isinstance(other, Gamma1Structure)
            and self.ideal == other.ideal
            and self.generator == other.generator
        )

    def __hash__(self):
        return hash((self.ideal, self.generator, 1))

    def __repr__(self):
        return f"Gamma1({self.ideal}; gen {self.generator})"


class GammaFullStructure:
    """Images of the two standard generators of (A/n)^2."""

    def __init__(self, E, n, L, pair):
        self.module = E
        self.ideal = n
        self.field = L
        self.pair = tuple(pair)

    def __eq__(self, other):
        return (
            isinstance(other, GammaFullStructure)
            and self.ideal == other.ideal
            and self.pair == other.pair
        )

    def __hash__(self):
        return hash((self.ideal, self.pair))

    def __repr__(self):
        return f"Gamma({self.ideal}; basis {self.pair})"


# ---------------------------------------------------------------------------
# Point machinery


def _action_cols(E: DrinfeldModule, n: BaseIdeal, L: FiniteField):
    """residue poly -> basis-image columns of its additive action on L."""
    out = {}
    for a in n.residues():
        out[a] = skew.additive_map_cols(skew.lift(E.phi(a), L), L)
    return out


def _orbit(E, n, L, x):
    mats = _action_cols(E, n, L)
    return frozenset(L.from_code(L._apply_cols(cols, x.code)) for cols in mats.values())


def torsion_points(E: DrinfeldModule, n: BaseIdeal, L: FiniteField):
    """All L-rational points of E[n]; raises if L does not split them."""
    f = skew.lift(E.phi(n.gen), L)
    pts = skew.kernel_points(f, L)
    expected = E.q ** separable_dimension(E, n)
    if len(pts) != expected:
        raise ValueError(
            f"L too small for E[{n}]: {len(pts)} rational points, need {expected}"
        )
    return pts


# ---------------------------------------------------------------------------
# Enumeration


def _gamma0_prime_power(E, prime: BaseIdeal, s: int, L):
    """[(etale point frozenset, local exponent)] for level prime^s."""
    p_char = E.characteristic
    n = prime**s
    if prime == p_char:
        if s > 1:
            raise ValueError(
                "level structures at higher powers of the characteristic are not supported"
            )
        m = prime.degree
        if height_at_characteristic(E) == 0:
            return [(frozenset([L.zero]), m)]
        etale = frozenset(torsion_points(E, prime, L))
        return [(frozenset([L.zero]), m), (etale, 0)]
    pts = torsion_points(E, n, L)
    mats = _action_cols(E, n, L)
    full_order = E.q**n.degree
    seen = set()
    for x in pts:
        orbit = frozenset(L.from_code(L._apply_cols(cols, x.code)) for cols in mats.values())
        if len(orbit) == full_order:
            seen.add(orbit)
    return [(orb, 0) for orb in sorted(seen, key=lambda o: tuple(sorted(v.code for v in o)))]


def _combine_parts(parts_lists, L):
    """Product of per-prime-power structures: pointwise sums, exponents add."""
    out = []
    for combo in itertools.product(*parts_lists):
        pts = frozenset([L.zero])
        e = 0
        for part_pts, part_e in combo:
            pts = frozenset(a + b for a in pts for b in part_pts)
            e += part_e
        out.append((pts, e))
    return out


def enumerate_gamma0(E: DrinfeldModule, n: BaseIdeal, L: FiniteField):
    """All Gamma0(n)-structures on E over L (CRT product over prime powers)."""
    if E.rank != 2:
        raise ValueError("level structures are implemented for rank 2")
    parts = [_gamma0_prime_power(E, prime, s, L) for prime, s in factor(n)]
    combined = _combine_parts(parts, L) if parts else [(frozenset([L.zero]), 0)]
    structures = [Gamma0Structure(E, n, L, pts, e) for pts, e in combined]
    structures.sort(key=Gamma0Structure.sort_key)
    return structures


def _gamma1_prime_power(E, prime, s, L):
    p_char = E.characteristic
    n = prime**s
    if prime == p_char:
        if s > 1:
            raise ValueError(
                "level structures at higher powers of the characteristic are not supported"
            )
        if height_at_characteristic(E) == 0:
            return [L.zero]
        etale = torsion_points(E, prime, L)
        return sorted(
            (x for x in etale), key=lambda v: v.code
        )  # nonzero = isomorphisms, zero = the zero morphism
    pts = torsion_points(E, n, L)
    mats = _action_cols(E, n, L)
    full_order = E.q**n.degree
    gens = []
    for x in pts:
        orbit = {L.from_code(L._apply_cols(cols, x.code)) for cols in mats.values()}
        if len(orbit) == full_order:
            gens.append(x)
    return sorted(gens, key=lambda v: v.code)


def enumerate_gamma1(E: DrinfeldModule, n: BaseIdeal, L: FiniteField):
    if E.rank != 2:
        raise ValueError("level structures are implemented for rank 2")
    parts = [_gamma1_prime_power(E, prime, s, L) for prime, s in factor(n)]
    gens = []
    for combo in itertools.product(*parts) if parts else [()]:
        g = L.zero
        for x in combo:
            g = g + x
        gens.append(g)
    gens.sort(key=lambda v: v.code)
    return [Gamma1Structure(E, n, L, g) for g in gens]


def _gamma_full_prime_power(E, prime, s, L):
    p_char = E.characteristic
    n = prime**s
    if prime == p_char:
        if s > 1:
            raise ValueError(
                "level structures at higher powers of the characteristic are not supported"
            )
        if height_at_characteristic(E) == 0:
            return [(L.zero, L.zero)]
        etale = torsion_points(E, prime, L)
        return [
            (x, y)
            for x in sorted(etale, key=lambda v: v.code)
            for y in sorted(etale, key=lambda v: v.code)
            if not (x.is_zero() and y.is_zero())
        ]
    pts = torsion_points(E, n, L)
    mats = _action_cols(E, n, L)
    total = E.q ** (2 * n.degree)
    pairs = []
    for x in pts:
        for y in pts:
            span = {
                L.from_code(L._apply_cols(ca, x.code)) + L.from_code(L._apply_cols(cb, y.code))
                for ca in mats.values()
                for cb in mats.values()
            }
            if len(span) == total:
                pairs.append((x, y))
    return pairs


def enumerate_gamma_full(E: DrinfeldModule, n: BaseIdeal, L: FiniteField):
    if E.rank != 2:
        raise ValueError("level structures are implemented for rank 2")
    parts = [_gamma_full_prime_power(E, prime, s, L) for prime, s in factor(n)]
    out = []
    for combo in itertools.product(*parts) if parts else [()]:
        x = L.zero
        y = L.zero
        for (cx, cy) in combo:
            x = x + cx
            y = y + cy
        out.append(GammaFullStructure(E, n, L, (x, y)))
    out.sort(key=lambda a: (a.pair[0].code, a.pair[1].code))
    return out


# ---------------------------------------------------------------------------
# GL(2, A/n) action and induced structures on quotients


def gl2_act(mat, alpha: GammaFullStructure) -> GammaFullStructure:
    """(E, alpha) -> (E, alpha o m) for an invertible 2x2 matrix over A/n."""
    n = alpha.ideal
    E, L = alpha.module, alpha.field
    rows = [[c if isinstance(c, BasePoly) else BasePoly(n.field, [c]) for c in row] for row in mat]
    det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if poly_gcd(det % n.gen, n.gen).degree != 0:
        raise ValueError("matrix is singular mod n")
    x, y = alpha.pair

    def act(a: BasePoly, v):
        return skew.apply_additive(skew.lift(E.phi(a % n.gen), L), L, v)

    new_x = act(rows[0][0], x) + act(rows[1][0], y)
    new_y = act(rows[0][1], x) + act(rows[1][1], y)
    return GammaFullStructure(E, n, L, (new_x, new_y))


def is_gamma0_structure(E: DrinfeldModule, n: BaseIdeal, L: FiniteField, points, local_exponent) -> bool:
    """Extensional validity check: n-torsion, A-stable, cyclic, right size."""
    pts = frozenset(points)
    if len(pts) * E.q**local_exponent != E.q**n.degree:
        return False
    f = skew.lift(E.phi(n.gen), L)
    if any(not skew.apply_additive(f, L, x).is_zero() for x in pts):
        return False
    mats = _action_cols(E, n, L)
    orbits = {
        x: frozenset(L.from_code(L._apply_cols(cols, x.code)) for cols in mats.values())
        for x in pts
    }
    if any(not orbit <= pts for orbit in orbits.values()):
        return False
    return any(orbit == pts for orbit in orbits.values())


def induced_structure_on_quotient(G: Gamma0Structure, quotient: Isogeny) -> Gamma0Structure:
    """Push a Gamma0(n)-structure through E -> E/H for n coprime to the
    kernel support; the image point set is the induced structure."""
    F = quotient.target
    L = F.field
    image = frozenset(quotient.apply(embed(x, L)) for x in G.etale_points)
    out = Gamma0Structure(F, G.ideal, L, image, G.local_exponent)
    if len(image) != len(G.etale_points) or not is_gamma0_structure(
        F, G.ideal, L, image, G.local_exponent
    ):
        raise ValueError("image of the structure is not cyclic of the right order")
    return out
