"""Geometric points of Y_0(n) over reductions, the two degeneracy maps,
and the point-count report behind the lower bound (q^m - 1)(g - 1).

Everything is computed over one explicit "closure approximation" W: a
common splitting field for all the modules in play.  Isomorphism of pairs
(E, H) is decided without root extraction: a connecting scalar u must send
a chosen nonzero point of H to a point of H', so the candidates are the
finitely many point ratios (for purely local H, pair isomorphism reduces
to equality of j-invariants).

Rationality over F_{q^(mk)} of a pair class means invariance under the
q^(mk)-power twist, checked with the same pair-isomorphism routine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from .base_ring import AField, BaseIdeal, poly_gcd, residue_field
from .drinfeld_modules import (
    DrinfeldModule,
    base_change,
    conjugate_by_scalar,
    frobenius_twist,
    height_at_characteristic,
    j_invariant,
    module_from_j,
    splitting_field,
)
from .fields import FiniteField, embed
from .isogeny import TorsionSubmodule, quotient_by
from .level import Gamma0Structure, enumerate_gamma0, enumerate_gamma1, induced_structure_on_quotient

_W_DEGREE_BUDGET = 72


class Y0Point:
    """Isomorphism class of a pair (rank-2 module, Gamma0(n)-structure),
    carried by an explicit representative over its defining field."""

    def __init__(self, E: DrinfeldModule, G: Gamma0Structure):
        self.module = E
        self.structure = G

    @property
    def field(self):
        return self.module.field

    @property
    def j(self):
        return j_invariant(self.module)

    def sort_key(self):
        return (self.j.code, self.structure.sort_key())

    def __eq__(self, other):
        if not isinstance(other, Y0Point):
            return NotImplemented
        return pair_classes_equal(
            self.module, self.structure, other.module, other.structure
        )

    def __hash__(self):
        # classes with different j or different shape never collide
        return hash((self.j, len(self.structure.etale_points), self.structure.local_exponent))

    def __repr__(self):
        return f"Y0Point(j={self.j}, {self.structure})"


def twist_point(pt: Y0Point, k: int) -> Y0Point:
    """Apply the q^k-power Frobenius to the whole pair."""
    Et = frobenius_twist(pt.module, k)
    if Et.afield != pt.module.afield:
        raise ValueError("twist does not preserve the structure map")
    G = pt.structure
    Gt = Gamma0Structure(
        Et,
        G.ideal,
        G.field,
        frozenset(x.frobenius(k) for x in G.etale_points),
        G.local_exponent,
    )
    return Y0Point(Et, Gt)


def pair_classes_equal(E1, G1, E2, G2) -> bool:
    """Closure-isomorphism test for pairs over a common field.

    Any isomorphism must be a scalar u sending a fixed nonzero etale point
    of G1 into G2's point set, so u = x'/x for one of finitely many x'.
    When both structures are purely local, equality of j decides.
    """
    if E1.afield != E2.afield or G1.ideal != G2.ideal:
        return False
    if G1.local_exponent != G2.local_exponent:
        return False
    if len(G1.etale_points) != len(G2.etale_points):
        return False
    if E1.coeffs == E2.coeffs and G1.etale_points == G2.etale_points:
        return True
    if len(G1.etale_points) == 1:
        return j_invariant(E1) == j_invariant(E2)
    x = min((v for v in G1.etale_points if not v.is_zero()), key=lambda v: v.code)
    for xp in G2.etale_points:
        if xp.is_zero():
            continue
        u = xp / x
        if conjugate_by_scalar(E1, u).coeffs != E2.coeffs:
            continue
        if frozenset(u * v for v in G1.etale_points) == G2.etale_points:
            return True
    return False


# ---------------------------------------------------------------------------
# Closure approximations


def _reduction_afield(p: BaseIdeal, k: int):
    """The A-field of the reduction mod p, extended so that F_{q^(mk)} is
    inside: (kappa(p).extension(k), T -> image of T)."""
    rf = residue_field(p)
    J = rf.field.extension(k) if k > 1 else rf.field
    return AField(J, embed(rf.t_image, J)), rf


def _common_splitting_field(modules, ideal: BaseIdeal, oversize: int = 1):
    """One extension of the modules' shared field splitting E[ideal] for
    every listed module."""
    K = modules[0].field
    degs = []
    for E in modules:
        if E.field != K:
            raise ValueError("modules must share their field")
        L = splitting_field(E, ideal, cap=_W_DEGREE_BUDGET)
        degs.append(L.k // K.k)
    total = math.lcm(*degs) * oversize if degs else oversize
    if K.n * total > _W_DEGREE_BUDGET:
        raise ValueError(
            f"closure approximation degree {K.n * total} exceeds budget {_W_DEGREE_BUDGET}"
        )
    return K.extension(total)


def _check_coprime(n: BaseIdeal, p: BaseIdeal):
    if poly_gcd(n.gen, p.gen).degree != 0:
        raise ValueError("n must be coprime to the reduction prime p")


# ---------------------------------------------------------------------------
# Enumeration of rational points


def enumerate_y0(n: BaseIdeal, p: BaseIdeal, k: int = 2, oversize: int = 1):
    """Iso classes of pairs over the closure approximation fixed by the
    q^(mk)-power twist: the affine F_{q^(mk)}-points of Y_0(n) x kappa(p).

    The j-invariant of a stable class lies in F_{q^(mk)}, so representatives
    are drawn one per j from that subfield and their structures enumerated
    over a common splitting field.
    """
    _check_coprime(n, p)
    af, _ = _reduction_afield(p, k)
    J = af.field
    m = p.degree
    modules = [module_from_j(af, j) for j in J.elements()]
    W = _common_splitting_field(modules, n, oversize=oversize)
    out = []
    for E in modules:
        EW = base_change(E, W)
        kept = []
        for G in enumerate_gamma0(EW, n, W):
            pt = Y0Point(EW, G)
            tw = twist_point(pt, m * k)
            if not pair_classes_equal(pt.module, pt.structure, tw.module, tw.structure):
                continue
            if any(pair_classes_equal(pt.module, pt.structure, o.module, o.structure) for o in kept):
                continue
            kept.append(pt)
        out.extend(kept)
    out.sort(key=Y0Point.sort_key)
    return out


def enumerate_y0_oracle(n: BaseIdeal, p: BaseIdeal, k: int = 2, scale: int = 1):
    """Independent route: enumerate every coefficient pair (a_1, a_2) over
    F_{q^(mk*scale)} with no j-invariant shortcut, then deduplicate classes.
    Counts must agree with ``enumerate_y0`` for any adequate scale."""
    _check_coprime(n, p)
    af, _ = _reduction_afield(p, k * scale)
    L0 = af.field
    m = p.degree
    modules = []
    for a1 in L0.elements():
        for a2 in L0.elements():
            if a2.is_zero():
                continue
            modules.append(DrinfeldModule(af, [a1, a2]))
    W = _common_splitting_field(modules, n)
    classes: list[Y0Point] = []
    for E in modules:
        EW = base_change(E, W)
        for G in enumerate_gamma0(EW, n, W):
            pt = Y0Point(EW, G)
            tw = twist_point(pt, m * k)
            if not pair_classes_equal(pt.module, pt.structure, tw.module, tw.structure):
                continue
            if any(
                pair_classes_equal(pt.module, pt.structure, o.module, o.structure)
                for o in classes
            ):
                continue
            classes.append(pt)
    classes.sort(key=Y0Point.sort_key)
    return classes


# ---------------------------------------------------------------------------
# The two maps to Y_0(n) and the union-of-graphs verification


def f1(E: DrinfeldModule, G: Gamma0Structure, H: Gamma0Structure) -> Y0Point:
    """Forget the Gamma0(p)-structure."""
    return Y0Point(E, G)


def f2(E: DrinfeldModule, G: Gamma0Structure, H: Gamma0Structure) -> Y0Point:
    """Quotient by H and push G through the connecting isogeny."""
    sub = TorsionSubmodule(
        E, H.field, H.etale_points, local_exponent=H.local_exponent
    )
    F, quot = quotient_by(E, sub)
    G_im = induced_structure_on_quotient(G, quot)
    return Y0Point(F, G_im)


def verify_reduction_is_union_of_graphs(n: BaseIdeal, p: BaseIdeal, k: int = 2):
    """Check pointwise that (f1, f2) lands on the graph of the q^m-power
    Frobenius or its transpose, with the branch decided by whether the
    Gamma0(p)-structure is local or etale.  Any triple off both graphs is a
    hard error."""
    _check_coprime(n, p)
    af, _ = _reduction_afield(p, k)
    m = p.degree
    modules = [module_from_j(af, j) for j in af.field.elements()]
    np_ideal = BaseIdeal(n.gen * p.gen)
    W = _common_splitting_field(modules, np_ideal)
    triples = []
    for E in modules:
        EW = base_change(E, W)
        ss = height_at_characteristic(EW) == 0
        for G in enumerate_gamma0(EW, n, W):
            for H in enumerate_gamma0(EW, p, W):
                pt1 = f1(EW, G, H)
                pt2 = f2(EW, G, H)
                tw1 = twist_point(pt1, m)
                tw2 = twist_point(pt2, m)
                on_graph = pair_classes_equal(
                    pt2.module, pt2.structure, tw1.module, tw1.structure
                )
                on_transpose = pair_classes_equal(
                    pt1.module, pt1.structure, tw2.module, tw2.structure
                )
                local = H.local_exponent > 0
                expected_ok = on_graph if local else on_transpose
                record = {
                    "j": str(list(pt1.j.coeffs)),
                    "H": "local" if local else "etale",
                    "on_graph": on_graph,
                    "on_transpose": on_transpose,
                    "branch": "graph" if local else "transpose",
                    "supersingular": ss,
                    "special_candidate": on_graph and on_transpose,
                }
                triples.append(record)
                if not expected_ok:
                    raise ValueError(
                        f"triple off its expected branch: {record}"
                    )
    return {
        "n": str(n.gen),
        "p": str(p.gen),
        "triples": triples,
        "count": len(triples),
        "all_on_union": True,
    }


def special_points(n: BaseIdeal, p: BaseIdeal, k: int = 2, points=None):
    """The F_{q^(mk)}-classes lying on both graphs: the pairs whose module
    is supersingular at p."""
    pts = enumerate_y0(n, p, k=k) if points is None else points
    return [pt for pt in pts if height_at_characteristic(pt.module) == 0]


# ---------------------------------------------------------------------------
# The point-count report


@dataclass
class IharaReport:
    q: int
    p: str
    m: int
    n: str
    N2: int
    S: int
    genus: int | None = None
    bound: int | None = None
    passed: bool | None = None
    hurwitz_g0_lower: int | None = None
    euler_g0_minus_1: int | None = None
    points: list = dc_field(default_factory=list)

    def to_json(self, verbose=False):
        out = {
            "q": self.q,
            "p": self.p,
            "m": self.m,
            "n": self.n,
            "N2": self.N2,
            "S": self.S,
            "bound": self.bound,
            "pass": self.passed,
        }
        if self.genus is not None:
            out["genus"] = self.genus
            out["hurwitz_g0_lower"] = self.hurwitz_g0_lower
            out["euler_g0_minus_1"] = self.euler_g0_minus_1
        if verbose:
            out["points"] = [
                {
                    "j": list(pt.j.coeffs),
                    "structure": pt.structure.to_json(),
                    "special": height_at_characteristic(pt.module) == 0,
                }
                for pt in self.points
            ]
        return out


def ihara_report(n: BaseIdeal, p: BaseIdeal, genus=None, k: int = 2) -> IharaReport:
    """Count N2 (affine F_{q^(2m)}-classes) and S (special classes); when a
    genus is supplied, evaluate S >= (q^m - 1)(g - 1) and the supporting
    identities.  Without a genus the bound is not asserted."""
    pts = enumerate_y0(n, p, k=k)
    spec = special_points(n, p, k=k, points=pts)
    q = p.field.q
    m = p.degree
    report = IharaReport(
        q=q,
        p=str(p.gen),
        m=m,
        n=str(n.gen),
        N2=len(pts),
        S=len(spec),
        genus=genus,
        points=pts,
    )
    if report.S > report.N2:
        raise AssertionError("special points exceed rational points")  # pragma: no cover
    if genus is not None:
        report.bound = (q**m - 1) * (genus - 1)
        report.passed = report.N2 >= report.S >= report.bound
        report.hurwitz_g0_lower = (q**m + 1) * (genus - 1)
        report.euler_g0_minus_1 = 2 * (genus - 1) + report.S
    return report


# ---------------------------------------------------------------------------
# The Gamma1 counterexample flag


def demonstrate_gamma1_failure(n: BaseIdeal, p: BaseIdeal, k: int = 2):
    """Exhibit one triple where the transpose-branch identification of
    Gamma0-pairs does not extend to marked Gamma1-generators: no allowed
    scalar matches the induced generator with the twisted one.

    Returns a report dict; ``found`` stays False when the unit group of
    A/n is too small to produce an ambiguity."""
    _check_coprime(n, p)
    af, _ = _reduction_afield(p, k)
    m = p.degree
    modules = [module_from_j(af, j) for j in af.field.elements()]
    np_ideal = BaseIdeal(n.gen * p.gen)
    W = _common_splitting_field(modules, np_ideal)
    for E in modules:
        EW = base_change(E, W)
        if height_at_characteristic(EW) == 0:
            continue
        for alpha in enumerate_gamma1(EW, n, W):
            G = alpha.induced_gamma0()
            for H in enumerate_gamma0(EW, p, W):
                if H.local_exponent:
                    continue  # need the etale branch
                sub = TorsionSubmodule(EW, W, H.etale_points, H.local_exponent)
                F, quot = quotient_by(EW, sub)
                G_im = induced_structure_on_quotient(G, quot)
                gen_im = quot.apply(alpha.generator)
                twisted_F = frobenius_twist(F, m)
                twisted_gen = gen_im.frobenius(m)
                twisted_pts = frozenset(x.frobenius(m) for x in G_im.etale_points)
                # Gamma0-pairs match on the transpose branch:
                if not pair_classes_equal(
                    EW,
                    G,
                    twisted_F,
                    Gamma0Structure(twisted_F, n, W, twisted_pts, G_im.local_exponent),
                ):
                    continue
                # a Gamma1 match forces the unique scalar sending the
                # twisted marked generator to the original one
                if alpha.generator.is_zero() or twisted_gen.is_zero():
                    continue
                u = alpha.generator / twisted_gen
                matched = (
                    conjugate_by_scalar(twisted_F, u).coeffs == EW.coeffs
                    and frozenset(u * v for v in twisted_pts) == G.etale_points
                )
                if not matched:
                    return {
                        "found": True,
                        "j": list(j_invariant(EW).coeffs),
                        "gamma1_generator": list(alpha.generator.coeffs),
                        "note": "gamma0 pairs agree on the transpose branch "
                        "but no scalar matches the marked generators",
                    }
    return {"found": False, "note": "no ambiguity at this level (unit group too small)"}
