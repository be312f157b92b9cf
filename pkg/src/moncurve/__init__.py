"""Invariants of projective monomial curves computed with integer sumsets."""

from .family import FamilyParams, family_curve, predict, verify_family
from .ideals import (
    BoundedVerdict,
    MonomialIdeal,
    colon,
    ideal_equal,
    ideal_member,
    intersect,
    is_primary,
    make_ideal,
    saturate,
)
from .invariants import (
    InvariantReport,
    Macaulayfication,
    buchsbaum_level,
    check_level_hypothesis,
    check_strict_k_criterion,
    classify,
    macaulayfication_colon,
    macaulayfication_sections,
    rao_module,
    reduction_number,
    regularity,
)
from .semigroup import (
    CurveSpec,
    Monomial,
    graded_piece,
    is_in_ring,
    make_curve,
    parse_curve,
    ring_witness,
    semigroup_member,
    sumset_level,
)

__version__ = "0.1.0"

__all__ = [
    "BoundedVerdict", "CurveSpec", "FamilyParams", "InvariantReport", "Macaulayfication",
    "Monomial", "MonomialIdeal", "buchsbaum_level", "check_level_hypothesis",
    "check_strict_k_criterion", "classify", "colon", "family_curve", "graded_piece",
    "ideal_equal", "ideal_member", "intersect", "is_in_ring", "is_primary", "macaulayfication_colon",
    "macaulayfication_sections", "make_curve", "make_ideal", "parse_curve", "predict", "rao_module",
    "reduction_number", "regularity", "ring_witness", "saturate", "semigroup_member", "sumset_level",
    "verify_family",
]
