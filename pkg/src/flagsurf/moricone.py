"""Mori-cone arithmetic on G/P: the free semigroup on the Schubert curves.

Generators are labelled by their simple root ``i`` in Delta_P throughout.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .flagvariety import CurveClass, FlagVariety, fiber_flag, normal_degree, poincare_polynomial

__all__ = [
    "POINT",
    "ClassKind",
    "MoriSemigroup",
    "Point",
    "classify",
    "contraction_target",
    "is_decomposable",
    "is_integrally_fiber_type",
    "is_simplicially_fano",
    "omega_minimal",
    "ruling_contraction",
]


class ClassKind(enum.Enum):
    RULING = "ruling"
    TWO_FREE = "two-free"
    EXCEPTIONAL = "exceptional"


@dataclass(frozen=True)
class Point:
    """The one-point space: what G/P contracts to when every class is contracted."""

    dimension: int = 0
    picard_rank: int = 0
    delta_p: tuple = ()

    def __str__(self) -> str:
        return "point"


POINT = Point()


@dataclass(frozen=True)
class MoriSemigroup:
    flag: FlagVariety

    @property
    def generators(self) -> tuple[int, ...]:
        return self.flag.delta_p

    @property
    def rank(self) -> int:
        return self.flag.picard_rank

    def generator_class(self, i: int) -> CurveClass:
        return CurveClass.generator(self.flag, i)

    def contains(self, c: CurveClass) -> bool:
        return len(c.coefficients) == self.rank and c.is_effective


def _as_semigroup(m: MoriSemigroup | FlagVariety) -> MoriSemigroup:
    return m if isinstance(m, MoriSemigroup) else MoriSemigroup(m)


def is_decomposable(c: CurveClass | Sequence[int]) -> bool:
    """In a free semigroup the indecomposables are exactly the generators."""
    coeffs = c.coefficients if isinstance(c, CurveClass) else tuple(c)
    if any(x < 0 for x in coeffs):
        raise ValueError(f"class {coeffs} is not effective")
    total = sum(coeffs)
    if total == 0:
        raise ValueError("the zero class is neither decomposable nor indecomposable")
    return total >= 2


def omega_minimal(m: MoriSemigroup | FlagVariety, weights: Sequence) -> frozenset[int]:
    """Generators of least degree against the Kaehler class with these coefficients."""
    m = _as_semigroup(m)
    w = [Fraction(x) for x in weights]
    if len(w) != m.rank:
        raise ValueError(f"expected {m.rank} Kaehler weights, got {len(w)}")
    if any(x <= 0 for x in w):
        raise ValueError(f"weights {[str(x) for x in w]} are not a Kaehler class (need all > 0)")
    least = min(w)
    return frozenset(g for g, x in zip(m.generators, w) if x == least)


def classify(m: MoriSemigroup | FlagVariety) -> dict[int, ClassKind]:
    flag = _as_semigroup(m).flag
    if flag.dimension == 1:
        # only the projective line (times points) has dimension 1
        return {i: ClassKind.EXCEPTIONAL for i in flag.delta_p}
    return {
        i: ClassKind.RULING if normal_degree(flag, i) == 0 else ClassKind.TWO_FREE
        for i in flag.delta_p
    }


def contraction_target(m: MoriSemigroup | FlagVariety, contracted: Iterable[int]) -> FlagVariety | Point:
    """``G/P -> G/Q`` where Q's Levi is S together with the contracted roots."""
    flag = _as_semigroup(m).flag
    contracted = frozenset(contracted)
    bad = contracted - set(flag.delta_p)
    if bad:
        raise KeyError(f"indices {sorted(bad)} are not in Delta_P = {set(flag.delta_p)}")
    levi = flag.levi_subset | contracted
    if len(levi) == flag.root_system.rank:
        return POINT
    return FlagVariety(flag.root_system, levi)


def ruling_contraction(m: MoriSemigroup | FlagVariety) -> tuple[FlagVariety | Point, frozenset[int]]:
    kinds = classify(m)
    kernel = frozenset(i for i, k in kinds.items() if k is ClassKind.RULING)
    return contraction_target(m, kernel), kernel


def is_integrally_fiber_type(flag: FlagVariety, fiber_index: Mapping[int, int] | None = None) -> bool:
    """Every generator is free and the fiber of its contraction has Fano index equal
    to the pseudo-index.  On G/P the generators are free by homogeneity, so only
    the index condition is checked; ``fiber_index`` overrides the computed fiber
    indices (for testing the predicate itself).
    """
    for i in flag.delta_p:
        if fiber_index is not None and i in fiber_index:
            idx = fiber_index[i]
        else:
            fib = fiber_flag(flag, i)
            idx = normal_degree(fib, fib.delta_p[0]) + 2
        if idx != normal_degree(flag, i) + 2:
            return False
    return True


def is_simplicially_fano(flag: FlagVariety, fiber_index: Mapping[int, int] | None = None) -> bool:
    """Integrally fiber type, and the free generators number exactly b_2."""
    betti = poincare_polynomial(flag)
    b2 = betti[1] if len(betti) > 1 else 0
    return is_integrally_fiber_type(flag, fiber_index) and MoriSemigroup(flag).rank == b2
