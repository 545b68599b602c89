"""Rational curves and surfaces on flag varieties G/P and their complete intersections."""

from .ci_analyzer import CIProblem, Mode, Overall, Status, Verdict, induced_invariants, relative_invariants, verdict
from .descendants import DescendantRecord, hilbert_leading_terms, s_for_projective_product
from .flagvariety import FlagVariety, build_flag, fiber_flag, normal_degree, parse_flag, poincare_polynomial
from .moricone import ClassKind, MoriSemigroup, classify, ruling_contraction
from .rootsystem import CartanType, RootSystem, build_root_system, weyl_group_order

__version__ = "0.1.0"

__all__ = [
    "CIProblem",
    "CartanType",
    "ClassKind",
    "DescendantRecord",
    "FlagVariety",
    "Mode",
    "MoriSemigroup",
    "Overall",
    "RootSystem",
    "Status",
    "Verdict",
    "build_flag",
    "build_root_system",
    "classify",
    "fiber_flag",
    "hilbert_leading_terms",
    "induced_invariants",
    "normal_degree",
    "parse_flag",
    "poincare_polynomial",
    "relative_invariants",
    "ruling_contraction",
    "s_for_projective_product",
    "verdict",
    "weyl_group_order",
]
