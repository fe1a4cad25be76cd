"""Exact arithmetic for Drinfeld modules over A = F_q[T].

Layers, bottom up: finite field towers (``fields``), dual numbers
(``dual``), the twisted polynomial ring (``skew``), the coefficient ring
A and A-fields (``base_ring``), Drinfeld modules and torsion
(``drinfeld_modules``), isogenies and quotients (``isogeny``), level
structures (``level``), points of the modular curve Y_0(n) over reductions
(``moduli``), and dual-number deformations (``deform``).
"""

from .base_ring import (
    AField,
    BaseIdeal,
    BasePoly,
    factor,
    is_admissible,
    module_crt,
    parse_base_poly,
    residue_field,
)
from .drinfeld_modules import (
    DrinfeldModule,
    TorsionModule,
    are_isomorphic,
    base_change,
    conjugate_by_scalar,
    frobenius_twist,
    height_at_characteristic,
    is_ordinary,
    is_supersingular,
    j_invariant,
    module_from_j,
    splitting_field,
    torsion_invariants,
    torsion_polynomial,
    torsion_structure,
)
from .dual import DualElement, DualNumbers
from .fields import (
    FieldElement,
    FiniteField,
    embed,
    enumerate_elements,
    frobenius,
    make_field,
    parse_field,
)
from .isogeny import (
    Isogeny,
    TorsionSubmodule,
    compose,
    frobenius_isogeny,
    full_torsion_submodule,
    kernel_polynomial,
    quotient_by,
    verify_isogeny,
)
from .level import (
    Gamma0Structure,
    Gamma1Structure,
    GammaFullStructure,
    enumerate_gamma0,
    enumerate_gamma1,
    enumerate_gamma_full,
    gl2_act,
    induced_structure_on_quotient,
)
from .moduli import (
    IharaReport,
    Y0Point,
    enumerate_y0,
    enumerate_y0_oracle,
    f1,
    f2,
    ihara_report,
    special_points,
    verify_reduction_is_union_of_graphs,
)
from .deform import (
    DualLift,
    check_char_lifts,
    enumerate_module_lifts,
    lift_level_structure_good,
    lift_torsion_point,
)
from .skew import (
    SkewPolynomial,
    eval_additive,
    height,
    kernel_basis,
    kernel_points,
    left_divide,
    rank,
    right_divide,
    skew,
    standardize,
    to_additive,
)

__version__ = "0.1.0"
