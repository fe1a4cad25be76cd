"""Drinfeld modules of rank r over an A-field (K, T -> t).

A module is stored in standard form: phi_T = gamma(T) + a_1 tau + ... +
a_r tau^r with a_r != 0.  Everything else (phi on all of A, torsion,
heights, twists) is derived from that single skew polynomial.

Torsion comes in two flavours: ``torsion_structure`` works over an explicit
splitting field and returns points, basis and structure constants, while
``torsion_invariants`` counts over the algebraic closure using the identity
|ker f| = q^(deg f - hgt f) for additive f, so it needs no field extension
at all.  The two routes cross-check each other in the tests.
"""

from __future__ import annotations

from . import linalg, skew
from .base_ring import AField, BaseIdeal, BasePoly, factor
from .fields import FieldElement, FiniteField, embed

DEFAULT_EXTENSION_CAP = 24


class DrinfeldModule:
    __slots__ = ("afield", "coeffs")

    def __init__(self, afield: AField, coeffs):
        K = afield.field
        cs = tuple(
            c if isinstance(c, FieldElement) and c.field == K else K.element(c)
            for c in coeffs
        )
        if not cs:
            raise ValueError("rank must be at least 1")
        if cs[-1].is_zero():
            raise ValueError("top coefficient a_r must be nonzero (standard form)")
        self.afield = afield
        self.coeffs = cs

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    @property
    def field(self) -> FiniteField:
        return self.afield.field

    @property
    def base(self) -> FiniteField:
        return self.afield.base

    @property
    def q(self) -> int:
        return self.afield.base.q

    @property
    def phi_t(self) -> skew.SkewPolynomial:
        return skew.SkewPolynomial(
            self.field, (self.afield.t_image,) + self.coeffs
        )

    def phi(self, a: BasePoly) -> skew.SkewPolynomial:
        """The image of a under the module map, by Horner in phi_T."""
        pt = self.phi_t
        K = self.field
        acc = skew.zero(K)
        for c in reversed(a.coeffs):
            acc = acc * pt + skew.SkewPolynomial(K, [embed(c, K)])
        return acc

    def gamma(self, a: BasePoly) -> FieldElement:
        return self.afield.map(a)

    @property
    def characteristic(self) -> BaseIdeal:
        return self.afield.characteristic

    def __eq__(self, other):
        return (
            isinstance(other, DrinfeldModule)
            and self.afield == other.afield
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.afield, self.coeffs))

    def __repr__(self):
        return f"DrinfeldModule(T -> {self.afield.t_image}, a={list(self.coeffs)})"


def phi(E: DrinfeldModule, a: BasePoly) -> skew.SkewPolynomial:
    return E.phi(a)


def torsion_polynomial(E: DrinfeldModule, n: BaseIdeal) -> skew.SkewPolynomial:
    return E.phi(n.gen)


def base_change(E: DrinfeldModule, L: FiniteField) -> DrinfeldModule:
    return DrinfeldModule(E.afield.base_change(L), [embed(c, L) for c in E.coeffs])


def frobenius_twist(E: DrinfeldModule, k: int) -> DrinfeldModule:
    """Raise the structure map and every coefficient to the q^k power."""
    af = AField(E.field, E.afield.t_image.frobenius(k))
    return DrinfeldModule(af, [c.frobenius(k) for c in E.coeffs])


def conjugate_by_scalar(E: DrinfeldModule, u: FieldElement) -> DrinfeldModule:
    """The isomorphic module u phi u^-1; coefficients a_i u^(1-q^i)."""
    L = u.field
    if not u.is_unit():
        raise ValueError("conjugating scalar must be a unit")
    EL = E if E.field == L else base_change(E, L)
    uinv = u.inverse()
    new = [c * u * uinv.frobenius(i + 1) for i, c in enumerate(EL.coeffs)]
    return DrinfeldModule(EL.afield, new)


def separable_dimension(E: DrinfeldModule, n: BaseIdeal) -> int:
    """dim over F_q of E[n] over the algebraic closure."""
    f = E.phi(n.gen)
    if f.degree <= 0:
        return 0
    return f.degree - skew.height(f)


def splitting_field(E: DrinfeldModule, n: BaseIdeal, cap: int = DEFAULT_EXTENSION_CAP):
    """Smallest extension of the module's field (within the cap on the
    total degree over F_q) where E[n] is fully rational."""
    target = separable_dimension(E, n)
    f = E.phi(n.gen)
    K = E.field
    j = 1
    while K.k * j <= cap:
        L = K.extension(j)
        fL = skew.SkewPolynomial(L, [embed(c, L) for c in f.coeffs])
        if skew.kernel_dimension(fL, L) == target:
            return L
        j += 1
    raise ValueError(
        f"torsion of {n} does not split within extension cap {cap} over F_q"
    )


class TorsionModule:
    """E[n](L) with its A/n-module structure.

    basis: an F_q-basis of the rational points; t_action: matrix of the
    T-action in that basis (entries in the base field); invariant_factors:
    the divisor chain of the module, small factor first.
    """

    def __init__(self, E, n, L, basis, t_action, invariant_factors):
        self.module = E
        self.ideal = n
        self.field = L
        self.basis = basis
        self.t_action = t_action
        self.invariant_factors = invariant_factors

    @property
    def dimension(self):
        return len(self.basis)

    def point_count(self):
        return self.module.q**self.dimension

    def points(self, limit=65536):
        f = self.module.phi(self.ideal.gen)
        fL = skew.SkewPolynomial(self.field, [embed(c, self.field) for c in f.coeffs])
        return skew.kernel_points(fL, self.field, limit=limit)

    def __repr__(self):
        inv = " x ".join(f"A/{i}" for i in self.invariant_factors) or "0"
        return f"TorsionModule({self.ideal}, dim {self.dimension}, {inv})"


def _coords_over_base(vectors, basis, L: FiniteField):
    """Coordinates of each vector in the F_q-basis, as base-field elements."""
    base = L.base
    e = L.e
    scalars = [embed(base.from_code(base.p**j), L) for j in range(e)]
    cols = []
    for b in basis:
        for s in scalars:
            cols.append(list((s * b).coeffs))
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(L.n)]
    out = []
    for v in vectors:
        sol = linalg.solve(mat, list(v.coeffs), L.p)
        if sol is None:
            raise AssertionError("vector outside span of basis")  # pragma: no cover
        row = []
        for i in range(len(basis)):
            c = base.zero
            for j in range(e):
                c = c + base.from_code(base.p**j) * base.element(sol[i * e + j])
            row.append(c)
        out.append(row)
    return out


def torsion_structure(E: DrinfeldModule, n: BaseIdeal, L: FiniteField) -> TorsionModule:
    """The A/n-module of L-rational n-torsion points.

    L must split the torsion (grow it with ``splitting_field`` first); a
    too-small L raises with the dimension shortfall.
    """
    f = E.phi(n.gen)
    fL = skew.SkewPolynomial(L, [embed(c, L) for c in f.coeffs])
    target = separable_dimension(E, n)
    basis = skew.kernel_basis(fL, L)
    if len(basis) < target:
        raise ValueError(
            f"torsion not rational over {L}: kernel dimension {len(basis)}, "
            f"need {target} (short by {target - len(basis)})"
        )
    pt = E.phi_t
    ptL = skew.SkewPolynomial(L, [embed(c, L) for c in pt.coeffs])
    images = [skew.apply_additive(ptL, L, b) for b in basis]
    t_action = _coords_over_base(images, basis, L) if basis else []
    invariants = _invariant_factors(E, n, lambda g: _rational_kernel_dim(E, g, L))
    return TorsionModule(E, n, L, basis, t_action, invariants)


def _rational_kernel_dim(E, g: BasePoly, L) -> int:
    f = E.phi(g)
    fL = skew.SkewPolynomial(L, [embed(c, L) for c in f.coeffs])
    return skew.kernel_dimension(fL, L)


def _closure_kernel_dim(E, g: BasePoly) -> int:
    f = E.phi(g)
    if f.degree <= 0:
        return 0
    return f.degree - skew.height(f)


def _invariant_factors(E, n: BaseIdeal, dim_of):
    """Invariant factors from kernel dimensions of prime-power divisors.

    For each prime q | n, (d_j - d_{j-1}) / deg(q) counts the cyclic factors
    of exponent >= j; the chain is then assembled largest exponents last.
    """
    per_prime = []
    for prime, s in factor(n):
        m = prime.degree
        dims = [0]
        for j in range(1, s + 1):
            dims.append(dim_of(prime.gen**j))
        counts_ge = [(dims[j] - dims[j - 1]) // m for j in range(1, s + 1)]
        exps = []
        for j in range(1, s + 1):
            ge_j = counts_ge[j - 1]
            ge_next = counts_ge[j] if j < s else 0
            exps.extend([j] * (ge_j - ge_next))
        per_prime.append((prime, sorted(exps, reverse=True)))
    width = max((len(e) for _, e in per_prime), default=0)
    chain = []
    for i in range(width):
        g = BasePoly.one_poly(n.field)
        for prime, exps in per_prime:
            if i < len(exps):
                g = g * prime.gen ** exps[i]
        chain.append(BaseIdeal(g))
    chain.reverse()  # small factor first, each divides the next
    return chain


def torsion_invariants(E: DrinfeldModule, n: BaseIdeal):
    """Invariant factors of E[n] over the algebraic closure, computed from
    degrees and heights alone (no splitting field needed)."""
    return _invariant_factors(E, n, lambda g: _closure_kernel_dim(E, g))


def height_at_characteristic(E: DrinfeldModule) -> int:
    """h with E[p^j] of rank h at the characteristic p: r - hgt(phi_pi)/deg(p)."""
    p = E.characteristic
    m = p.degree
    f = E.phi(p.gen)
    hgt = skew.height(f)
    if hgt % m:
        raise AssertionError("height not divisible by residue degree")  # pragma: no cover
    h = E.rank - hgt // m
    if not 0 <= h <= E.rank - 1:
        raise AssertionError("height out of range")  # pragma: no cover
    return h


def is_supersingular(E: DrinfeldModule) -> bool:
    return height_at_characteristic(E) == 0


def is_ordinary(E: DrinfeldModule) -> bool:
    return height_at_characteristic(E) == 1


def j_invariant(E: DrinfeldModule) -> FieldElement:
    """a_1^(q+1) / a_2, the isomorphism invariant of rank-2 modules."""
    if E.rank != 2:
        raise ValueError("j-invariant is defined for rank 2 only")
    a1, a2 = E.coeffs
    return a1 ** (E.q + 1) * a2.inverse()


def module_from_j(afield: AField, j: FieldElement) -> DrinfeldModule:
    """A rank-2 module over the given A-field with the prescribed j."""
    K = afield.field
    j = embed(j, K) if j.field != K else j
    if j.is_zero():
        return DrinfeldModule(afield, [K.zero, K.one])
    return DrinfeldModule(afield, [K.one, j.inverse()])


def are_isomorphic(E: DrinfeldModule, F: DrinfeldModule, L: FiniteField, budget=1 << 16):
    """Search for a scalar u in L* with u phi_E u^-1 = phi_F; returns u or
    None.  Exhaustive over L*, so L is expected to be desk-scale."""
    if E.rank != F.rank:
        return None
    if embed(E.afield.t_image, L) != embed(F.afield.t_image, L):
        return None
    EL = base_change(E, L)
    FL = base_change(F, L)
    if L.cardinality > budget:
        raise ValueError("scalar search budget exceeded")
    for code in range(1, L.cardinality):
        u = L.from_code(code)
        if conjugate_by_scalar(EL, u).coeffs == FL.coeffs:
            return u
    return None
