"""Complete intersections pulled back from the ruling contraction of G/P.

Given an ambient flag variety Y with ruling contraction Y -> Y', and
hypersurface classes on Y pulled back from positive classes on Y', decide
whether the complete intersection X is covered by rational surfaces.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .descendants import DescendantRecord, DescendantTableError, builtin_descendant_table, records_from_table
from .flagvariety import DivisorClass, FlagVariety, normal_degree
from .moricone import ClassKind, classify, omega_minimal, ruling_contraction

__all__ = [
    "CIProblem",
    "FreeConeResult",
    "FreeConeError",
    "GeneratorOutcome",
    "Mode",
    "Overall",
    "RelativeInvariants",
    "SetupError",
    "Status",
    "Verdict",
    "free_cone_iso",
    "induced_invariants",
    "relative_invariants",
    "validate",
    "verdict",
]


class Mode(enum.Enum):
    EQUIVALENCE = "equivalence"
    DEFORMATION = "deformation"


class Status(enum.Enum):
    RULING = "ruling"
    SATISFIED = "two-free-satisfied"
    FAILS = "fails"
    UNKNOWN = "unknown"


class Overall(enum.Enum):
    COVERED = "covered"
    NOT_DETERMINED = "not-determined-by-criterion"
    INVALID_SETUP = "invalid-setup"


class SetupError(ValueError):
    """The problem is outside the hypotheses of the criterion."""


class FreeConeError(ValueError):
    pass


@dataclass(frozen=True)
class CIProblem:
    ambient: FlagVariety
    hypersurfaces: tuple[DivisorClass, ...] = ()
    descendant_table: Mapping[int, DescendantRecord] = field(default_factory=dict)
    mode: Mode = Mode.DEFORMATION
    kahler_weights: tuple[Fraction, ...] | None = None

    @classmethod
    def build(
        cls,
        ambient: FlagVariety,
        hypersurfaces: Iterable[Sequence[int] | DivisorClass] = (),
        *,
        mode: Mode | str = Mode.DEFORMATION,
        weights: Sequence | None = None,
        table: Mapping[int, tuple[int, int | None]] | None = None,
    ) -> "CIProblem":
        """Assemble a problem; built-in descendant records are merged under ``table``."""
        hyps = tuple(h if isinstance(h, DivisorClass) else DivisorClass(tuple(h)) for h in hypersurfaces)
        records = dict(builtin_descendant_table(ambient))
        if table:
            user = records_from_table(ambient, table)
            kinds = classify(ambient)
            for i, rec in user.items():
                if kinds[i] is ClassKind.RULING and rec.f != 1:
                    raise DescendantTableError(f"generator {i} is ruling, so f must be 1 (got {rec.f})")
            records.update(user)
        w = None if weights is None else tuple(Fraction(x) for x in weights)
        return cls(ambient, hyps, records, Mode(mode), w)

    @property
    def codimension(self) -> int:
        return len(self.hypersurfaces)

    def degrees(self, i: int) -> tuple[int, ...]:
        """``<[Y_j], beta_i>`` for every hypersurface ``j``."""
        k = self.ambient.position(i)
        return tuple(h.coefficients[k] for h in self.hypersurfaces)


@dataclass(frozen=True)
class RelativeInvariants:
    m_rel: int
    f_rel: int
    q_rel: Fraction
    s_rel: Fraction | None  # needs f(Y)


@dataclass(frozen=True)
class FreeConeResult:
    isomorphic: bool
    margins: dict[int, int]

    def __bool__(self) -> bool:
        return self.isomorphic


@dataclass(frozen=True)
class GeneratorOutcome:
    generator: int
    kind: ClassKind
    status: Status
    reason: str
    m_ambient: int
    ambient: DescendantRecord | None
    relative: RelativeInvariants
    induced: DescendantRecord | None

    @property
    def in_case(self) -> str | None:
        return {Status.RULING: "i", Status.SATISFIED: "ii"}.get(self.status)


@dataclass(frozen=True)
class Verdict:
    overall: Overall
    outcomes: tuple[GeneratorOutcome, ...] = ()
    mode: Mode = Mode.DEFORMATION
    reason: str = ""
    relevant: frozenset[int] = frozenset()
    weights: tuple[Fraction, ...] | None = None
    weights_defaulted: bool = False

    @property
    def has_unknown(self) -> bool:
        return any(o.status is Status.UNKNOWN for o in self.outcomes if o.generator in self.relevant)

    @property
    def exit_code(self) -> int:
        """0 covered, 2 not determined, 3 not determined pending descendant data, 4 invalid."""
        if self.overall is Overall.COVERED:
            return 0
        if self.overall is Overall.INVALID_SETUP:
            return 4
        rel = [o for o in self.outcomes if o.generator in self.relevant]
        blocked_by_data = any(o.status is Status.UNKNOWN for o in rel)
        if self.mode is Mode.DEFORMATION and any(o.status is Status.FAILS for o in rel):
            blocked_by_data = False
        return 3 if blocked_by_data else 2

    def outcome(self, i: int) -> GeneratorOutcome:
        for o in self.outcomes:
            if o.generator == i:
                return o
        raise KeyError(i)


def _relative(degrees: Sequence[int], f_ambient: int | None) -> RelativeInvariants:
    if any(d < 0 for d in degrees):
        raise SetupError(f"hypersurface degrees {tuple(degrees)} include a negative pairing (not nef)")
    m_rel = sum(degrees)
    f_rel = math.prod(math.factorial(d) for d in degrees)
    q_rel = sum((Fraction(d * (d + 1), 2) for d in degrees), Fraction(0))
    s_rel = None if f_ambient is None else q_rel * f_ambient
    return RelativeInvariants(m_rel, f_rel, q_rel, s_rel)


def relative_invariants(p: CIProblem) -> dict[int, RelativeInvariants]:
    out = {}
    for i in p.ambient.delta_p:
        rec = p.descendant_table.get(i)
        out[i] = _relative(p.degrees(i), None if rec is None else rec.f)
    return out


def free_cone_iso(p: CIProblem) -> FreeConeResult:
    rel = relative_invariants(p)
    margins = {i: normal_degree(p.ambient, i) - rel[i].m_rel for i in p.ambient.delta_p}
    return FreeConeResult(all(v >= 0 for v in margins.values()), margins)


def _induced(m_y: int, rec_y: DescendantRecord | None, rel: RelativeInvariants) -> DescendantRecord | None:
    if rec_y is None or rel.m_rel > m_y:
        return None
    m_x = m_y - rel.m_rel
    f_x = rec_y.f * rel.f_rel
    if m_x == 0 or rec_y.s is None:
        return DescendantRecord(m_x, f_x)
    s_x = rel.f_rel * (rec_y.s - rel.s_rel)
    return DescendantRecord(m_x, f_x, int(s_x))


def induced_invariants(p: CIProblem) -> dict[int, DescendantRecord | None]:
    """Invariants of X per generator; None where the ambient record is missing.

    ``s`` and ``q`` of X are filled in whenever ``m(X) > 0`` and ``s(Y)`` is
    known; the criterion vouches for them only in its second case.
    """
    iso = free_cone_iso(p)
    if not iso:
        bad = sorted(i for i, v in iso.margins.items() if v < 0)
        raise FreeConeError(
            f"free cone of X is not isomorphic to that of Y: m_rel > m(Y) for generators {bad}"
        )
    rel = relative_invariants(p)
    return {
        i: _induced(normal_degree(p.ambient, i), p.descendant_table.get(i), rel[i])
        for i in p.ambient.delta_p
    }


def validate(p: CIProblem) -> None:
    """Raise SetupError unless the problem meets the criterion's hypotheses."""
    flag = p.ambient
    kinds = classify(flag)
    if any(k is ClassKind.EXCEPTIONAL for k in kinds.values()):
        raise SetupError(f"ambient {flag.spec} is the projective line, excluded by the criterion")
    target, kernel = ruling_contraction(flag)
    for j, h in enumerate(p.hypersurfaces, start=1):
        if len(h.coefficients) != flag.picard_rank:
            raise SetupError(
                f"hypersurface {j} has {len(h.coefficients)} coefficients; Picard rank is {flag.picard_rank}"
            )
        for i, c in zip(flag.delta_p, h.coefficients):
            if Fraction(c).denominator != 1:
                raise SetupError(f"hypersurface {j}: coefficient {c} on D_{i} is not an integer")
            if c < 0:
                raise SetupError(f"hypersurface {j} is not nef: coefficient {c} on D_{i}")
            if i in kernel and c != 0:
                raise SetupError(
                    f"hypersurface {j} is not pulled back from Y': nonzero coefficient on ruling class {i}"
                )
            if i not in kernel and c == 0:
                raise SetupError(f"hypersurface {j} is not positive on Y': zero coefficient on D_{i}")
    dim_x = target.dimension - p.codimension
    if dim_x < 3:
        raise SetupError(f"dim_C(X') >= 3 violated: dim(Y') = {target.dimension}, codimension {p.codimension}")
    if p.mode is Mode.EQUIVALENCE and p.kahler_weights is not None:
        try:
            omega_minimal(flag, p.kahler_weights)
        except ValueError as exc:
            raise SetupError(str(exc)) from None


def _outcome(i: int, kind: ClassKind, m_y: int, rec_y: DescendantRecord | None, rel: RelativeInvariants) -> GeneratorOutcome:
    induced = _induced(m_y, rec_y, rel)

    def make(status: Status, reason: str) -> GeneratorOutcome:
        return GeneratorOutcome(i, kind, status, reason, m_y, rec_y, rel, induced)

    if kind is ClassKind.RULING:
        return make(Status.RULING, "case (i): symplectically ruling")
    if kind is not ClassKind.TWO_FREE:
        return make(Status.FAILS, f"class kind {kind.value} is neither ruling nor 2-free")
    if rel.m_rel >= m_y:
        reason = f"m_rel = {rel.m_rel} is not < m(Y) = {m_y}"
        if rel.m_rel == m_y:
            reason += "; induced m(X) = 0 so case (ii) is unreachable"
            if induced is not None and induced.f != 1:
                reason += f", and f(X) = {induced.f} != 1 so not ruling"
        else:
            reason += "; free cone of X differs from that of Y"
        return make(Status.FAILS, reason)
    if rec_y is None or rec_y.s is None:
        return make(Status.UNKNOWN, f"no second descendant s(Y) recorded for generator {i}")
    if rel.s_rel >= rec_y.s:
        return make(Status.FAILS, f"s_rel = {rel.s_rel} is not < s(Y) = {rec_y.s}")
    return make(Status.SATISFIED, f"case (ii): {rel.m_rel} < {m_y} and {rel.s_rel} < {rec_y.s}")


def generator_outcomes(p: CIProblem) -> tuple[GeneratorOutcome, ...]:
    """Per-generator evaluation without the global setup checks."""
    kinds = classify(p.ambient)
    rel = relative_invariants(p)
    return tuple(
        _outcome(i, kinds[i], normal_degree(p.ambient, i), p.descendant_table.get(i), rel[i])
        for i in p.ambient.delta_p
    )


def verdict(p: CIProblem) -> Verdict:
    try:
        validate(p)
    except SetupError as exc:
        return Verdict(Overall.INVALID_SETUP, mode=p.mode, reason=str(exc), weights=p.kahler_weights)

    outcomes = generator_outcomes(p)
    good = {o.generator for o in outcomes if o.status in (Status.RULING, Status.SATISFIED)}
    weights, defaulted = p.kahler_weights, False
    if p.mode is Mode.EQUIVALENCE:
        if weights is None:
            weights, defaulted = tuple(Fraction(1) for _ in p.ambient.delta_p), True
        relevant = omega_minimal(p.ambient, weights)
        covered = bool(relevant & good)
        what = "some omega-minimal generator"
    else:
        relevant = frozenset(p.ambient.delta_p)
        covered = relevant <= good
        what = "every indecomposable generator"
    if covered:
        overall, reason = Overall.COVERED, f"{what} satisfies case (i) or (ii)"
    else:
        overall, reason = Overall.NOT_DETERMINED, f"criterion needs {what} in case (i) or (ii)"
    return Verdict(overall, outcomes, p.mode, reason, relevant, weights, defaulted)
