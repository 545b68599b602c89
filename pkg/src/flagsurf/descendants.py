"""Genus-0 gravitational descendants of extremal curve classes, kept symbolic.

No Gromov-Witten invariant is computed from moduli.  A descendant is a
coefficient times a one-point bracket ``<tau_k(pt), D_0 ... D_r>_beta``; the
divisor insertions are stripped by the Gysin identity for ``psi`` and the
bare bracket ``<tau_k(pt)>_beta`` is nonzero only for ``k = m_beta``, where it
equals ``f_beta``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, NamedTuple, Sequence

from .flagvariety import CurveClass, DivisorClass, FlagVariety, normal_degree
from .moricone import ClassKind, classify

__all__ = [
    "ChernData",
    "DescendantExpr",
    "DescendantRecord",
    "DescendantTableError",
    "HilbertLeading",
    "builtin_descendant_table",
    "evaluate",
    "hilbert_leading_terms",
    "load_descendant_table",
    "parse_descendant_table",
    "projective_factor_dimension",
    "records_from_table",
    "reduce",
    "s_for_projective_product",
    "second_descendant",
    "virtual_dimension",
]


@dataclass(frozen=True)
class DescendantRecord:
    """``(m, f, s, q)`` for one class; ``s`` and ``q`` only exist when ``m > 0``."""

    m: int
    f: int
    s: int | None = None
    q: Fraction | None = None

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError(f"normal degree must be >= 0, got {self.m}")
        if self.f < 1:
            raise ValueError(f"first descendant must be >= 1, got {self.f}")
        if self.m == 0 and (self.s is not None or self.q is not None):
            raise ValueError("s and q are undefined when m = 0")
        if self.s is not None:
            q = Fraction(self.s, self.f)
            if self.q is not None and Fraction(self.q) != q:
                raise ValueError(f"q = {self.q} does not equal s/f = {q}")
            object.__setattr__(self, "q", q)
        elif self.q is not None:
            s = Fraction(self.q) * self.f
            if s.denominator != 1:
                raise ValueError(f"q * f = {s} is not an integer")
            object.__setattr__(self, "s", int(s))
            object.__setattr__(self, "q", Fraction(self.q))

    @property
    def has_second(self) -> bool:
        return self.s is not None


@dataclass(frozen=True)
class DescendantExpr:
    coefficient: Fraction
    tau_power: int
    divisor_factors: tuple[DivisorClass, ...]
    curve: CurveClass

    @property
    def is_reduced(self) -> bool:
        return not self.divisor_factors


def reduce(e: DescendantExpr) -> DescendantExpr:
    """Push a cup product of ``r + 1`` divisors down to ``c_1(psi)^r``.

    ``<tau_s(pt), D_0...D_r> = <D_0,b>...<D_r,b> <tau_{s+r}(pt)>``: the whole
    product of ``k`` factors is one block, so the psi power rises by ``k - 1``.
    """
    if not e.divisor_factors:
        return e
    coeff = Fraction(e.coefficient)
    for d in e.divisor_factors:
        coeff *= d.pair(e.curve)
    return DescendantExpr(coeff, e.tau_power + len(e.divisor_factors) - 1, (), e.curve)


def evaluate(e: DescendantExpr, record: DescendantRecord) -> Fraction:
    """Numerical value of an expression, given ``m`` and ``f`` of its class."""
    e = reduce(e)
    if e.coefficient == 0 or e.tau_power != record.m:
        return Fraction(0)
    return e.coefficient * record.f


@dataclass(frozen=True)
class ChernData:
    """``c_1`` and ``ch_2`` in the divisor basis; ``ch2[j][k]`` multiplies ``D_j D_k``."""

    c1: tuple[Fraction, ...]
    ch2: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    @classmethod
    def projective_product(cls, dims: Sequence[int]) -> "ChernData":
        n = len(dims)
        c1 = tuple(Fraction(d + 1) for d in dims)
        ch2 = tuple(
            tuple(Fraction(dims[j] + 1, 2) if j == k else Fraction(0) for k in range(n))
            for j in range(n)
        )
        return cls(c1, ch2)


def _unit_divisor(n: int, j: int) -> DivisorClass:
    return DivisorClass(tuple(1 if k == j else 0 for k in range(n)))


def second_descendant(chern: ChernData, curve: CurveClass, m: int, f: int) -> Fraction:
    """``<tau_{m-1}(pt), ch_2 + m/(2(m+2)^2) c_1^2>_beta`` expanded over ``D_j D_k``."""
    if m <= 0:
        raise ValueError("the second descendant needs m > 0")
    n = len(chern.c1)
    lam = Fraction(m, 2 * (m + 2) ** 2)
    record = DescendantRecord(m, f)
    total = Fraction(0)
    for j in range(n):
        for k in range(n):
            coeff = chern.ch2[j][k] + lam * chern.c1[j] * chern.c1[k]
            if coeff:
                expr = DescendantExpr(coeff, m - 1, (_unit_divisor(n, j), _unit_divisor(n, k)), curve)
                total += evaluate(expr, record)
    return total


def s_for_projective_product(dims: Sequence[int], factor: int) -> DescendantRecord:
    """Record of the line class in factor ``factor`` (1-based) of a product of P^n's."""
    dims = [int(d) for d in dims]
    if not 1 <= factor <= len(dims):
        raise IndexError(f"factor {factor} out of range 1..{len(dims)}")
    if any(d < 1 for d in dims):
        raise ValueError(f"projective dimensions must be >= 1, got {dims}")
    n_i = dims[factor - 1]
    if n_i < 2:
        raise ValueError(f"factor {factor} is a projective line: a ruling class has no s")
    m = n_i - 1
    f = 1
    curve = CurveClass(tuple(1 if k == factor - 1 else 0 for k in range(len(dims))))
    s = second_descendant(ChernData.projective_product(dims), curve, m, f)
    if s.denominator != 1:
        raise ArithmeticError(f"non-integral second descendant {s}")
    return DescendantRecord(m, f, int(s))


class HilbertLeading(NamedTuple):
    c_top: Fraction
    c_next: Fraction | None
    relative_correction: Fraction | None  # chi = c_top d^m (1 + relative_correction / d + ...)


def hilbert_leading_terms(r: DescendantRecord) -> HilbertLeading:
    """Leading two coefficients of ``chi(F, psi^d)`` on the fiber of curves through a point."""
    if r.m == 0:
        return HilbertLeading(Fraction(r.f), None, None)
    if r.s is None:
        raise ValueError("record has no second descendant")
    c_top = Fraction(r.f, math.factorial(r.m))
    c_next = Fraction(r.s, 2 * math.factorial(r.m - 1))
    return HilbertLeading(c_top, c_next, r.m * r.q / 2)


def virtual_dimension(g: int, n: int, c1_degree: int, dim: int) -> int:
    if g < 0 or n < 0:
        raise ValueError("genus and number of marks must be >= 0")
    return c1_degree + (dim - 3) * (1 - g) + n


def projective_factor_dimension(flag: FlagVariety, i: int) -> int | None:
    """``n`` if generator ``i`` is the line class of a P^n factor of ``flag``, else None.

    The factor is the Cartan component holding ``i``; it must carry no other
    generator, and a Picard-rank-1 G/P is P^n exactly when its pseudo-index is
    ``n + 1``.
    """
    rs = flag.root_system
    comp = rs.component_of(i)
    nodes = rs.component_nodes(comp)
    if any(j in flag.delta_p for j in nodes if j != i):
        return None
    factor_roots = [r for r in rs.positive_roots if any(r[j - 1] for j in nodes)]
    levi = set(flag.levi_roots)
    dim = sum(1 for r in factor_roots if r not in levi)
    return dim if normal_degree(flag, i) + 1 == dim else None


def builtin_descendant_table(flag: FlagVariety) -> dict[int, DescendantRecord]:
    """Records that follow from the geometry alone.

    Ruling classes have ``f = 1`` (the curve through a point is the fiber).
    Line classes of P^n factors get the projective-space record.  Anything
    else must come from a user table.
    """
    kinds = classify(flag)
    out: dict[int, DescendantRecord] = {}
    for i in flag.delta_p:
        m = normal_degree(flag, i)
        if kinds[i] is ClassKind.RULING or kinds[i] is ClassKind.EXCEPTIONAL:
            out[i] = DescendantRecord(m, 1)
            continue
        n = projective_factor_dimension(flag, i)
        if n is not None:
            out[i] = s_for_projective_product([n], 1)
    return out


class DescendantTableError(ValueError):
    pass


def _label_to_index(label) -> int:
    text = str(label).strip().lower()
    for prefix in ("beta_", "beta", "b"):
        if text.startswith(prefix) and text[len(prefix):].isdigit():
            text = text[len(prefix):]
            break
    if not text.isdigit():
        raise DescendantTableError(f"bad class label {label!r} (expected e.g. '2' or 'beta_2')")
    return int(text)


def parse_descendant_table(data: Mapping, flag: FlagVariety | None = None) -> dict[int, tuple[int, int | None]]:
    """``{"beta_2": {"f": 1, "s": 4}, "3": [2, 6]}`` -> ``{2: (1, 4), 3: (2, 6)}``."""
    if not isinstance(data, Mapping):
        raise DescendantTableError("descendant table must be a mapping from class labels to (f, s)")
    out: dict[int, tuple[int, int | None]] = {}
    for label, value in data.items():
        i = _label_to_index(label)
        if isinstance(value, Mapping):
            f, s = value.get("f"), value.get("s")
        elif isinstance(value, (list, tuple)) and len(value) in (1, 2):
            f, s = value[0], (value[1] if len(value) == 2 else None)
        else:
            raise DescendantTableError(f"entry {label!r}: expected {{'f': .., 's': ..}} or [f, s]")
        if not isinstance(f, int) or isinstance(f, bool) or (s is not None and (not isinstance(s, int) or isinstance(s, bool))):
            raise DescendantTableError(f"entry {label!r}: f and s must be integers")
        if flag is not None and i not in flag.delta_p:
            raise DescendantTableError(f"entry {label!r}: {i} is not a generator of {flag.spec}")
        out[i] = (f, s)
    return out


def load_descendant_table(path: str | Path, flag: FlagVariety | None = None) -> dict[int, tuple[int, int | None]]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DescendantTableError(f"{path}: not valid JSON ({exc})") from None
    return parse_descendant_table(data, flag)


def records_from_table(flag: FlagVariety, table: Mapping[int, tuple[int, int | None]]) -> dict[int, DescendantRecord]:
    out = {}
    for i, (f, s) in table.items():
        m = normal_degree(flag, i)
        try:
            out[i] = DescendantRecord(m, f, s)
        except ValueError as exc:
            raise DescendantTableError(f"generator {i}: {exc}") from None
    return out
