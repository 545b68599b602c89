"""Generalized flag varieties G/P described by a Levi subset of simple roots."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .rootsystem import (
    CartanType,
    CartanTypeError,
    RootSystem,
    build_root_system,
    identify_subdiagram,
    weyl_group_degrees,
)

__all__ = [
    "CurveClass",
    "DivisorClass",
    "FlagSpecError",
    "FlagVariety",
    "build_flag",
    "fiber_flag",
    "normal_degree",
    "parse_flag",
    "poincare_polynomial",
    "pseudo_index",
]

_FLAG_RE = re.compile(r"\s*([^/]+?)\s*/\s*P\s*\{([^}]*)\}\s*", re.IGNORECASE)


class FlagSpecError(ValueError):
    """Unparseable flag-variety spec, or a parabolic that is not proper."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class FlagVariety:
    root_system: RootSystem
    levi_subset: frozenset[int]

    def __post_init__(self) -> None:
        levi = frozenset(int(i) for i in self.levi_subset)
        for i in levi:
            if not 1 <= i <= self.root_system.rank:
                raise FlagSpecError(f"simple-root index {i} out of range 1..{self.root_system.rank}")
        if len(levi) == self.root_system.rank:
            raise FlagSpecError("parabolic must be proper: the Levi subset is all of the simple roots")
        object.__setattr__(self, "levi_subset", levi)

    @property
    def cartan_type(self) -> CartanType:
        return self.root_system.cartan_type

    @property
    def delta_p(self) -> tuple[int, ...]:
        return tuple(i for i in self.root_system.indices if i not in self.levi_subset)

    @property
    def picard_rank(self) -> int:
        return len(self.delta_p)

    @cached_property
    def levi_roots(self) -> tuple[tuple[int, ...], ...]:
        return self.root_system.roots_supported_on(self.levi_subset)

    @cached_property
    def dimension(self) -> int:
        return len(self.root_system.positive_roots) - len(self.levi_roots)

    @cached_property
    def anticanonical_weight(self) -> tuple[int, ...]:
        """Sum of the positive roots outside the Levi, in the simple-root basis."""
        levi = set(self.levi_roots)
        rest = [r for r in self.root_system.positive_roots if r not in levi]
        return tuple(sum(col) for col in zip(*rest))

    def position(self, i: int) -> int:
        """Zero-based coordinate of generator ``i`` in curve/divisor vectors."""
        try:
            return self.delta_p.index(i)
        except ValueError:
            raise KeyError(f"index {i} is not in Delta_P = {set(self.delta_p)}") from None

    @property
    def spec(self) -> str:
        return f"{self.cartan_type}/P{{{','.join(str(i) for i in self.delta_p)}}}"

    def __str__(self) -> str:
        return self.spec

    def __repr__(self) -> str:
        return f"FlagVariety({self.spec!r})"


@dataclass(frozen=True)
class CurveClass:
    """Integer combination of the Schubert curves ``beta_i``, ordered by Delta_P."""

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))

    @property
    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.coefficients)

    @classmethod
    def generator(cls, flag: FlagVariety, i: int) -> "CurveClass":
        k = flag.position(i)
        return cls(tuple(1 if j == k else 0 for j in range(flag.picard_rank)))


@dataclass(frozen=True)
class DivisorClass:
    """Rational combination of the Schubert divisors ``D_i`` dual to the ``beta_i``."""

    coefficients: tuple = field()

    @property
    def is_nef(self) -> bool:
        return all(c >= 0 for c in self.coefficients)

    @property
    def is_ample(self) -> bool:
        return all(c > 0 for c in self.coefficients)

    def pair(self, curve: CurveClass):
        if len(curve.coefficients) != len(self.coefficients):
            raise ValueError("divisor and curve live on different Picard lattices")
        return sum(a * b for a, b in zip(self.coefficients, curve.coefficients))


def build_flag(rs: RootSystem, s: Iterable[int]) -> FlagVariety:
    return FlagVariety(rs, frozenset(s))


def parse_flag(text: str) -> FlagVariety:
    """Parse ``"A3/P{2}"``: the braces list Delta_P, the Levi subset is the rest."""
    m = _FLAG_RE.fullmatch(text)
    if m is None:
        slash = text.find("/")
        pos = len(text) if slash < 0 else slash
        raise FlagSpecError(f"expected TYPE/P{{i,j,...}}, got {text!r}", pos)
    try:
        t = CartanType.parse(m.group(1))
    except CartanTypeError as exc:
        raise FlagSpecError(str(exc), m.start(1)) from None
    body = m.group(2).strip()
    delta_p = set()
    if body:
        for tok in body.split(","):
            tok = tok.strip()
            if not tok.isdigit():
                raise FlagSpecError(f"bad simple-root index {tok!r}", m.start(2) + m.group(2).find(tok))
            delta_p.add(int(tok))
    if not delta_p:
        raise FlagSpecError("parabolic must be proper: Delta_P is empty", m.start(2))
    for i in delta_p:
        if not 1 <= i <= t.rank:
            raise FlagSpecError(f"simple-root index {i} out of range 1..{t.rank}", m.start(2))
    rs = build_root_system(t)
    return FlagVariety(rs, frozenset(rs.indices) - delta_p)


def normal_degree(f: FlagVariety, i: int) -> int:
    """Anticanonical degree of ``beta_i`` minus 2."""
    f.position(i)
    return f.root_system.coroot_pairing(f.anticanonical_weight, i) - 2


def pseudo_index(f: FlagVariety, i: int) -> int:
    return normal_degree(f, i) + 2


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c, r = divmod(num[k + len(den) - 1], den[-1])
        if r:
            raise ArithmeticError("inexact polynomial division")
        q[k] = c
        for j, d in enumerate(den):
            num[k + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return q


def _weyl_poincare(degrees: Iterable[int]) -> list[int]:
    out = [1]
    for d in degrees:
        out = _poly_mul(out, [1] * d)
    return out


def levi_type(f: FlagVariety) -> list[tuple[CartanType, tuple[int, ...]]]:
    """Connected components of the Levi subdiagram, with their Bourbaki labellings."""
    return identify_subdiagram(f.root_system, f.levi_subset)


def poincare_polynomial(f: FlagVariety) -> tuple[int, ...]:
    """Betti numbers ``b_0, b_2, ..., b_{2 dim}`` as polynomial coefficients in ``t``."""
    full = _weyl_poincare(weyl_group_degrees(f.cartan_type))
    levi_degrees = [d for t, _ in levi_type(f) for d in weyl_group_degrees(t)]
    return tuple(_poly_divexact(full, _weyl_poincare(levi_degrees)))


def fiber_flag(f: FlagVariety, i: int) -> FlagVariety:
    """Fiber of the extremal contraction of ``beta_i``: a Picard-rank-1 flag variety.

    It lives on the connected subdiagram of ``S + {i}`` through ``i``; its
    unique generator is the image of ``i``.
    """
    f.position(i)
    ((t, labels),) = [
        comp for comp in identify_subdiagram(f.root_system, f.levi_subset | {i}) if i in comp[1]
    ]
    rs = build_root_system(t)
    new_levi = frozenset(k + 1 for k, orig in enumerate(labels) if orig != i)
    return FlagVariety(rs, new_levi)
