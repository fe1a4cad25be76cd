"""First-order deformations over dual numbers k[eps].

A lift of a module (gamma, E) fixes gamma-bar(T) = gamma(T) + eps*c and
perturbs each coefficient a_i to a_i + eps*b_i; every such choice is a
module over k[eps] because A is free on T.  Two standard-form lifts are
isomorphic exactly when they differ by the translation b -> b + c*(a_1,
..., a_r): conjugating by 1 + eps*c*tau^d with d >= 1 raises the degree of
the perturbation by d + r with a nonzero top coefficient (a_r is a unit),
so after renormalizing only the degree-zero conjugations survive.  That
makes the class set an explicit quotient of k^r by a line, which the tests
re-verify by brute-force orbit enumeration.

Level-structure lifts are decided by the conditions the base objects
satisfy, moved to k[eps]: torsion membership for marked points, divisor
equality for full level, and exact divisibility of monic additive lifts
for Gamma0.  ``check_char_lifts`` tabulates the exhaustive counts and
compares them with the expected case analysis; the comparison is reported,
not silently assumed.
"""

from __future__ import annotations

import itertools

from . import skew
from .base_ring import BaseIdeal, BasePoly
from .drinfeld_modules import DrinfeldModule, height_at_characteristic
from .dual import DualElement, DualNumbers
from .fields import FieldElement, embed
from .level import (
    Gamma0Structure,
    Gamma1Structure,
    GammaFullStructure,
    enumerate_gamma0,
    enumerate_gamma1,
    enumerate_gamma_full,
)


class DualLift:
    """A lift of (gamma, E) over k[eps]: gamma_eps is the eps-part of
    gamma-bar(T), coeff_eps the eps-parts of the coefficients."""

    __slots__ = ("base", "ring", "gamma_eps", "coeff_eps")

    def __init__(self, base: DrinfeldModule, gamma_eps, coeff_eps):
        k = base.field
        self.base = base
        self.ring = DualNumbers(k)
        self.gamma_eps = k.element(gamma_eps) if not isinstance(gamma_eps, FieldElement) else gamma_eps
        ce = tuple(
            k.element(b) if not isinstance(b, FieldElement) else b for b in coeff_eps
        )
        if len(ce) != base.rank:
            raise ValueError("one eps-part per coefficient")
        self.coeff_eps = ce

    def is_trivial(self):
        return self.gamma_eps.is_zero() and all(b.is_zero() for b in self.coeff_eps)

    @property
    def phi_bar_t(self) -> skew.SkewPolynomial:
        D = self.ring
        coeffs = [DualElement(D, self.base.afield.t_image, self.gamma_eps)]
        for a, b in zip(self.base.coeffs, self.coeff_eps):
            coeffs.append(DualElement(D, a, b))
        return skew.SkewPolynomial(D, coeffs)

    def phi_bar(self, a: BasePoly) -> skew.SkewPolynomial:
        D = self.ring
        pt = self.phi_bar_t
        acc = skew.zero(D)
        for c in reversed(a.coeffs):
            acc = acc * pt + skew.SkewPolynomial(
                D, [DualElement(D, embed(c, self.base.field), self.base.field.zero)]
            )
        return acc

    def reduce(self) -> DrinfeldModule:
        return self.base

    def key(self):
        return (self.gamma_eps.code,) + tuple(b.code for b in self.coeff_eps)

    def __eq__(self, other):
        return (
            isinstance(other, DualLift)
            and self.base == other.base
            and self.gamma_eps == other.gamma_eps
            and self.coeff_eps == other.coeff_eps
        )

    def __hash__(self):
        return hash((self.base, self.gamma_eps, self.coeff_eps))

    def __repr__(self):
        return f"DualLift(c={self.gamma_eps}, b={list(self.coeff_eps)})"


def lift_class_representative(E: DrinfeldModule, coeff_eps):
    """Canonical representative of the isomorphism class of a lift with the
    given eps-parts: translate along the line k*(a_1, ..., a_r) until the
    top eps-part vanishes."""
    c = coeff_eps[-1] / E.coeffs[-1]
    return tuple(b - c * a for b, a in zip(coeff_eps, E.coeffs))


def enumerate_module_lifts(E: DrinfeldModule, gamma_eps=0):
    """All standard-form lifts of E over a fixed gamma-bar, grouped into
    isomorphism classes; the class count is |k| for rank 2."""
    k = E.field
    gamma_eps = k.element(gamma_eps) if not isinstance(gamma_eps, FieldElement) else gamma_eps
    classes: dict = {}
    for codes in itertools.product(range(k.cardinality), repeat=E.rank):
        b = tuple(k.from_code(c) for c in codes)
        rep = lift_class_representative(E, b)
        key = tuple(x.code for x in rep)
        classes.setdefault(key, []).append(DualLift(E, gamma_eps, b))
    return [classes[key] for key in sorted(classes)]


# ---------------------------------------------------------------------------
# Ordinary polynomial arithmetic over k[eps] (for divisor conditions)


def skew_to_poly(f: skew.SkewPolynomial):
    """Dense coefficient list of the additive polynomial of f over k[eps]."""
    D = f.ring
    q = D.q
    if f.is_zero():
        return []
    out = [D.zero] * (q**f.degree + 1)
    for i, c in enumerate(f.coeffs):
        if not c.is_zero():
            out[q**i] = c
    return out


def poly_trim(c):
    c = list(c)
    while c and c[-1].is_zero():
        c.pop()
    return c


def poly_mul(a, b, D: DualNumbers):
    if not a or not b:
        return []
    out = [D.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return poly_trim(out)


def poly_divmod(a, b, D: DualNumbers):
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not b[-1].is_unit():
        raise ValueError("division needs a unit leading coefficient")
    inv = b[-1].inverse()
    r = poly_trim(a)
    q = [D.zero] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b) and r:
        f = r[-1] * inv
        shift = len(r) - len(b)
        q[shift] = f
        for j in range(len(b)):
            r[shift + j] = r[shift + j] - f * b[j]
        r = poly_trim(r)
    return q, r


def poly_divides(a, b, D: DualNumbers) -> bool:
    """Does a divide b exactly?"""
    _, r = poly_divmod(b, a, D)
    return not r


def poly_monic(a, D: DualNumbers):
    a = poly_trim(a)
    if not a:
        return a
    inv = a[-1].inverse()
    return [c * inv for c in a]


def poly_compose(outer, inner, D: DualNumbers):
    acc = []
    for c in reversed(outer):
        acc = poly_mul(acc, inner, D)
        if not c.is_zero():
            if not acc:
                acc = [c]
            else:
                acc[0] = acc[0] + c
    return poly_trim(acc)


def is_additive_poly(a, D: DualNumbers) -> bool:
    q = D.q
    for e, c in enumerate(a):
        if c.is_zero() or e == 0:
            continue
        i = 0
        while q**i < e:
            i += 1
        if q**i != e:
            return False
    return True


# ---------------------------------------------------------------------------
# Unique lifts of structures away from the characteristic


def lift_torsion_point(lift: DualLift, n: BaseIdeal, u: FieldElement) -> DualElement:
    """The unique point of the lifted module over the lifted structure map
    reducing to the torsion point u; needs n coprime to the characteristic
    (the torsion polynomial then has a unit linear coefficient)."""
    E = lift.base
    gamma_a = E.gamma(n.gen)
    if gamma_a.is_zero():
        raise ValueError("n meets the characteristic: no Newton step available")
    D = lift.ring
    f_bar = lift.phi_bar(n.gen)
    w = skew.eval_additive(f_bar, DualElement(D, embed(u, E.field), E.field.zero))
    if not w.field_part.is_zero():
        raise ValueError("u is not an n-torsion point of the base module")
    v = -(w.eps_part / gamma_a)
    lifted = DualElement(D, embed(u, E.field), v)
    if not skew.eval_additive(f_bar, lifted).is_zero():
        raise AssertionError("Newton lift failed")  # pragma: no cover
    return lifted


def lift_level_structure_good(structure, lift: DualLift):
    """Lift a Gamma0/Gamma1/Gamma structure at good level pointwise; the
    lift is unique, so the result is plain data."""
    n = structure.ideal
    if isinstance(structure, Gamma0Structure):
        return {
            "etale_points": {
                u: lift_torsion_point(lift, n, u) for u in structure.etale_points
            },
            "local_mult": structure.local_exponent,
        }
    if isinstance(structure, Gamma1Structure):
        return {"generator": lift_torsion_point(lift, n, structure.generator)}
    if isinstance(structure, GammaFullStructure):
        return {
            "pair": tuple(lift_torsion_point(lift, n, u) for u in structure.pair)
        }
    raise TypeError(f"not a level structure: {structure!r}")


# ---------------------------------------------------------------------------
# Exhaustive lift tables at the characteristic


def _gamma_full_lift_count(lift: DualLift, alpha: GammaFullStructure, p: BaseIdeal) -> int:
    """Number of pairs (v1, v2) lifting alpha to the lifted module: torsion
    membership plus equality of the lifted divisor with the lifted torsion
    divisor."""
    E = lift.base
    k = E.field
    D = lift.ring
    f_bar = lift.phi_bar(p.gen)
    f_poly = poly_monic(skew_to_poly(f_bar), D)
    residues = list(p.residues())
    phi_res = {a: lift.phi_bar(a) for a in residues}
    u1, u2 = alpha.pair
    count = 0
    for v1c in range(k.cardinality):
        for v2c in range(k.cardinality):
            ub1 = DualElement(D, u1, k.from_code(v1c))
            ub2 = DualElement(D, u2, k.from_code(v2c))
            if not skew.eval_additive(f_bar, ub1).is_zero():
                continue
            if not skew.eval_additive(f_bar, ub2).is_zero():
                continue
            prod = [D.one]
            ok = True
            for a in residues:
                for b in residues:
                    pt = skew.eval_additive(phi_res[a], ub1) + skew.eval_additive(
                        phi_res[b], ub2
                    )
                    prod = poly_mul(prod, [-pt, D.one], D)
            if poly_trim(prod) != poly_trim(f_poly):
                ok = False
            if ok:
                count += 1
    return count


def _gamma1_lift_count(lift: DualLift, alpha: Gamma1Structure, p: BaseIdeal) -> int:
    """Lifts of a Gamma1(p)-structure: marked-point torsion membership
    (the operational condition; the linear coefficient vanishes at the
    characteristic, so the count is 0 or |k|)."""
    E = lift.base
    k = E.field
    D = lift.ring
    f_bar = lift.phi_bar(p.gen)
    u = alpha.generator
    count = 0
    for vc in range(k.cardinality):
        ub = DualElement(D, u, k.from_code(vc))
        if skew.eval_additive(f_bar, ub).is_zero():
            count += 1
    return count


def _gamma0_lift_count(lift: DualLift, H: Gamma0Structure, p: BaseIdeal) -> int:
    """Distinct monic additive lifts of H's kernel polynomial dividing the
    lifted torsion polynomial and stable under the lifted T-action."""
    E = lift.base
    k = E.field
    D = lift.ring
    f_bar = lift.phi_bar(p.gen)
    f_poly = poly_monic(skew_to_poly(f_bar), D)
    phi_t_poly = skew_to_poly(lift.phi_bar_t)
    # base kernel polynomial of H as an ordinary polynomial over k[eps]
    base_poly = [D.one]
    for x in sorted(H.etale_points, key=lambda v: v.code):
        base_poly = poly_mul(base_poly, [DualElement(D, -x, k.zero), D.one], D)
    for _ in range(H.local_exponent):
        # local part of rank q: the divisor polynomial is the q-th power
        q = D.q
        lifted = [D.zero] * ((len(base_poly) - 1) * q + 1)
        for e, c in enumerate(base_poly):
            lifted[e * q] = c.frobenius(1)
        base_poly = lifted
    deg = len(base_poly) - 1
    # additive eps-perturbations of degree < deg
    q = D.q
    eps_slots = []
    e = 1
    while e < deg:
        eps_slots.append(e)
        e *= q
    count = 0
    for combo in itertools.product(range(k.cardinality), repeat=len(eps_slots)):
        h_bar = list(base_poly)
        for slot, code in zip(eps_slots, combo):
            h_bar[slot] = h_bar[slot] + DualElement(D, k.zero, k.from_code(code))
        if not is_additive_poly(h_bar, D):
            continue
        if not poly_divides(h_bar, f_poly, D):
            continue
        composed = poly_compose(h_bar, phi_t_poly, D)
        if not poly_divides(h_bar, composed, D):
            continue
        count += 1
    return count


def check_char_lifts(kind: str, E: DrinfeldModule, strict: bool = False):
    """Exhaustive lift table for a level structure at the characteristic.

    kind is 'gamma_full', 'gamma1' or 'gamma0'; the characteristic must
    have degree 1 and the relevant torsion must be rational over E's field.
    Returns a report with observed counts per (gamma-lift, module-lift
    class, base structure), the expected table from the case analysis, and
    whether they match; with strict=True a mismatch raises.
    """
    p = E.characteristic
    if p.degree != 1:
        raise ValueError("characteristic lift tables are implemented for degree-1 primes")
    k = E.field
    ss = height_at_characteristic(E) == 0
    if kind == "gamma_full":
        bases = enumerate_gamma_full(E, p, k)
        counter = _gamma_full_lift_count
    elif kind == "gamma1":
        bases = enumerate_gamma1(E, p, k)
        counter = _gamma1_lift_count
    elif kind == "gamma0":
        bases = enumerate_gamma0(E, p, k)
        counter = _gamma0_lift_count
    else:
        raise ValueError(f"unknown kind {kind!r}")

    trivial_rep = tuple(
        x.code for x in lift_class_representative(E, (k.zero,) * E.rank)
    )
    observed = []
    for alpha in bases:
        per_class: dict = {}
        for c_code in range(k.cardinality):
            c = k.from_code(c_code)
            seen: dict = {}
            for codes in itertools.product(range(k.cardinality), repeat=E.rank):
                b = tuple(k.from_code(x) for x in codes)
                rep = tuple(x.code for x in lift_class_representative(E, b))
                lift = DualLift(E, c, b)
                cnt = counter(lift, alpha, p)
                if rep in seen and seen[rep] != cnt:
                    raise AssertionError(
                        "lift count differs inside an isomorphism class"
                    )
                seen[rep] = cnt
            per_class[c_code] = dict(sorted(seen.items()))
        observed.append(per_class)

    observed_summary = [_summarize(tbl, trivial_rep) for tbl in observed]
    expected_summary = [
        _expected_summary(kind, E, base, trivial_rep) for base in bases
    ]
    matches = observed_summary == expected_summary
    report = {
        "kind": kind,
        "supersingular": ss,
        "field_size": k.cardinality,
        "bases": len(bases),
        "base_kinds": [_base_kind(kind, b) for b in bases],
        "observed": observed,
        "observed_summary": observed_summary,
        "expected_summary": expected_summary,
        "matches": matches,
    }
    if strict and not matches:
        raise ValueError(
            f"lift table deviates from the expected case analysis ({kind})"
        )
    return report


def _base_kind(kind, base):
    if kind == "gamma1":
        return "local" if base.generator.is_zero() else "etale"
    if kind == "gamma0":
        return "local" if base.local_exponent else "etale"
    return "surjection" if any(not u.is_zero() for u in base.pair) else "zero"


def _summarize(table, trivial_rep):
    """Per gamma-lift: the sorted class counts, plus the count sitting on
    the trivial module-lift class (the case analyses pin that class)."""
    out = {}
    for c_code, row in table.items():
        out[c_code] = {
            "counts": tuple(sorted(row.values())),
            "trivial_class": row[trivial_rep],
        }
    return out


def _expected_summary(kind: str, E: DrinfeldModule, base, trivial_rep):
    """What the case analysis predicts, in the shape of _summarize."""
    k = E.field
    size = k.cardinality
    n_classes = size ** (E.rank - 1)
    ss = height_at_characteristic(E) == 0
    zeros = (0,) * n_classes

    def row(counts, trivial_count):
        return {"counts": counts, "trivial_class": trivial_count}

    out = {}
    for c_code in range(size):
        if kind == "gamma_full":
            # only the trivial lift admits alpha-lifts, and then |k|^2 many
            if c_code == 0:
                out[c_code] = row(zeros[:-1] + (size**2,), size**2)
            else:
                out[c_code] = row(zeros, 0)
        elif kind == "gamma1":
            if base.generator.is_zero():
                # local: every (gamma, E)-lift carries a one-dimensional space
                out[c_code] = row((size,) * n_classes, size)
            else:
                # etale image: per gamma-lift a unique module class, then |k|
                trivial_count = size if c_code == 0 else 0
                out[c_code] = row(zeros[:-1] + (size,), trivial_count)
        elif kind == "gamma0":
            if ss:
                cnt = size if c_code == 0 else 0
                out[c_code] = row((cnt,) * n_classes, cnt)
            elif base.local_exponent:
                # connected part: unique compatible lift everywhere
                out[c_code] = row((1,) * n_classes, 1)
            else:
                trivial_count = size if c_code == 0 else 0
                out[c_code] = row(zeros[:-1] + (size,), trivial_count)
    return out
