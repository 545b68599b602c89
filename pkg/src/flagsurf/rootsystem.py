"""Root systems of semisimple Cartan types, in exact integer arithmetic.

Roots live in the simple-root basis as integer tuples; every pairing with a
coroot goes through the Cartan matrix ``C[i][j] = <alpha_j, alpha_i^vee>``.
Simple roots are numbered 1..rank, blockwise over the components of a product
type, with Bourbaki numbering inside each component:

    A_n   1 - 2 - ... - n
    B_n   1 - ... - (n-1) => n          (alpha_n short)
    C_n   1 - ... - (n-1) <= n          (alpha_n long)
    D_n   1 - ... - (n-2) < (n-1), n
    E_n   1 - 3 - 4 - 5 - ... - n, with 2 attached to 4
    F_4   1 - 2 => 3 - 4                (alpha_1, alpha_2 long)
    G_2   1 <= 2                         (alpha_1 short)
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "CartanType",
    "CartanTypeError",
    "RootSystem",
    "Weight",
    "build_root_system",
    "identify_subdiagram",
    "pairing",
    "weyl_group_degrees",
    "weyl_group_order",
]

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}

_EXPONENT_DEGREES = {
    ("E", 6): (2, 5, 6, 8, 9, 12),
    ("E", 7): (2, 6, 8, 10, 12, 14, 18),
    ("E", 8): (2, 8, 12, 14, 18, 20, 24, 30),
    ("F", 4): (2, 6, 8, 12),
    ("G", 2): (2, 6),
}

_COMPONENT_RE = re.compile(r"([A-Za-z])(\d+)")


class CartanTypeError(ValueError):
    """A malformed Cartan type: unknown family or rank out of range."""


@dataclass(frozen=True)
class CartanType:
    """An ordered product of simple Cartan types, e.g. ``A1 x A4``."""

    components: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        comps = tuple((str(fam).upper(), int(rank)) for fam, rank in self.components)
        if not comps:
            raise CartanTypeError("a Cartan type needs at least one component")
        for fam, rank in comps:
            _check_component(fam, rank)
        object.__setattr__(self, "components", comps)

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        """Parse ``"A3"``, ``"b2xg2"`` and the like (case-insensitive)."""
        parts = [p.strip() for p in re.split(r"[xX]", text.strip())]
        comps = []
        for pos, part in enumerate(parts):
            m = _COMPONENT_RE.fullmatch(part)
            if m is None:
                raise CartanTypeError(f"cannot parse Cartan component {part!r} (component {pos + 1} of {text!r})")
            comps.append((m.group(1).upper(), int(m.group(2))))
        return cls(tuple(comps))

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.components)

    @property
    def offsets(self) -> tuple[int, ...]:
        """Zero-based index of the first simple root of each component."""
        out, acc = [], 0
        for _, r in self.components:
            out.append(acc)
            acc += r
        return tuple(out)

    def __str__(self) -> str:
        return "x".join(f"{f}{r}" for f, r in self.components)


def _check_component(fam: str, rank: int) -> None:
    label = f"{fam}{rank}"
    if fam in _MIN_RANK:
        if rank < _MIN_RANK[fam]:
            raise CartanTypeError(
                f"component {label}: type {fam} requires rank >= {_MIN_RANK[fam]}"
            )
    elif fam in _FIXED_RANKS:
        if rank not in _FIXED_RANKS[fam]:
            allowed = ", ".join(str(r) for r in _FIXED_RANKS[fam])
            raise CartanTypeError(f"component {label}: type {fam} requires rank in {{{allowed}}}")
    else:
        raise CartanTypeError(f"component {label}: unknown family {fam!r} (expected one of A-G)")


def _component_diagram(fam: str, n: int) -> tuple[list[int], list[tuple[int, int]]]:
    """Squared root lengths (scaled so the shortest is 2) and Dynkin edges, 0-based."""
    if fam == "A":
        return [2] * n, [(i, i + 1) for i in range(n - 1)]
    if fam == "B":
        return [4] * (n - 1) + [2], [(i, i + 1) for i in range(n - 1)]
    if fam == "C":
        return [2] * (n - 1) + [4], [(i, i + 1) for i in range(n - 1)]
    if fam == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        return [2] * n, edges
    if fam == "E":
        edges = [(0, 2), (2, 3), (3, 1)] + [(i, i + 1) for i in range(3, n - 1)]
        return [2] * n, edges
    if fam == "F":
        return [4, 4, 2, 2], [(0, 1), (1, 2), (2, 3)]
    if fam == "G":
        return [2, 6], [(0, 1)]
    raise CartanTypeError(f"unknown family {fam!r}")


def _cartan_matrix(t: CartanType) -> tuple[tuple[int, ...], ...]:
    n = t.rank
    rows = [[0] * n for _ in range(n)]
    for (fam, r), off in zip(t.components, t.offsets):
        lengths, edges = _component_diagram(fam, r)
        for i in range(r):
            rows[off + i][off + i] = 2
        for a, b in edges:
            # (alpha_a, alpha_b) = -max(|alpha_a|^2, |alpha_b|^2) / 2 for adjacent nodes
            ip = -max(lengths[a], lengths[b]) // 2
            rows[off + a][off + b] = 2 * ip // lengths[a]
            rows[off + b][off + a] = 2 * ip // lengths[b]
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class Weight:
    """A weight written in the simple-root basis (half-integers allowed, e.g. rho)."""

    coefficients: tuple

    @classmethod
    def of(cls, coeffs: Iterable) -> "Weight":
        return cls(tuple(coeffs))


@dataclass(frozen=True)
class RootSystem:
    cartan_type: CartanType
    cartan_matrix: tuple[tuple[int, ...], ...] = field(repr=False)
    positive_roots: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.cartan_matrix)

    @property
    def indices(self) -> range:
        return range(1, self.rank + 1)

    def simple_root(self, i: int) -> tuple[int, ...]:
        self._check_index(i)
        return tuple(1 if k == i - 1 else 0 for k in range(self.rank))

    def coroot_pairing(self, vec: Sequence, i: int):
        """``<vec, alpha_i^vee>`` for ``vec`` in the simple-root basis."""
        self._check_index(i)
        row = self.cartan_matrix[i - 1]
        return sum(c * a for c, a in zip(vec, row))

    def component_of(self, i: int) -> int:
        """Zero-based component index of simple root ``i``."""
        self._check_index(i)
        offs = self.cartan_type.offsets
        for k in range(len(offs) - 1, -1, -1):
            if i - 1 >= offs[k]:
                return k
        raise AssertionError("unreachable")

    def component_nodes(self, k: int) -> tuple[int, ...]:
        off = self.cartan_type.offsets[k]
        return tuple(range(off + 1, off + self.cartan_type.components[k][1] + 1))

    def neighbours(self, i: int) -> tuple[int, ...]:
        row = self.cartan_matrix[i - 1]
        return tuple(j + 1 for j, c in enumerate(row) if c != 0 and j != i - 1)

    @cached_property
    def rho(self) -> Weight:
        """Half the sum of the positive roots."""
        total = [sum(col) for col in zip(*self.positive_roots)]
        return Weight(tuple(Fraction(v, 2) for v in total))

    def highest_root(self, k: int = 0) -> tuple[int, ...]:
        """Highest root of component ``k``."""
        nodes = set(self.component_nodes(k))
        mine = [r for r in self.positive_roots if all(r[j - 1] == 0 for j in self.indices if j not in nodes)]
        return max(mine, key=sum)

    def roots_supported_on(self, nodes: Iterable[int]) -> tuple[tuple[int, ...], ...]:
        """Positive roots whose support lies inside ``nodes``."""
        allowed = set(nodes)
        outside = [j - 1 for j in self.indices if j not in allowed]
        return tuple(r for r in self.positive_roots if all(r[j] == 0 for j in outside))

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise IndexError(f"simple-root index {i} out of range 1..{self.rank}")


def build_root_system(t: CartanType) -> RootSystem:
    """Positive roots by the root-string algorithm, graded by height.

    For a positive root ``b`` and simple root ``a_i`` the ``a_i``-string through
    ``b`` runs from ``b - p a_i`` to ``b + q a_i`` with ``p - q = <b, a_i^vee>``,
    so ``b + a_i`` is a root exactly when ``q > 0``.  Every positive root of
    height ``h + 1`` arises this way from one of height ``h``.
    """
    if isinstance(t, str):
        t = CartanType.parse(t)
    cm = _cartan_matrix(t)
    n = t.rank
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    known = set(simple)
    layer = list(simple)
    out = list(simple)
    while layer:
        nxt = []
        for b in layer:
            for i in range(n):
                if b == simple[i]:
                    continue
                p = 0
                down = list(b)
                while True:
                    down[i] -= 1
                    if tuple(down) in known:
                        p += 1
                    else:
                        break
                q = p - sum(c * a for c, a in zip(b, cm[i]))
                if q > 0:
                    up = list(b)
                    up[i] += 1
                    up = tuple(up)
                    if up not in known:
                        known.add(up)
                        nxt.append(up)
        out.extend(nxt)
        layer = nxt
    out.sort(key=lambda r: (sum(r), tuple(-c for c in r)))
    return RootSystem(cartan_type=t, cartan_matrix=cm, positive_roots=tuple(out))


def pairing(w: Weight | Sequence, i: int, rs: RootSystem):
    """``<w, alpha_i^vee> = sum_j w_j C[i][j]``."""
    coeffs = w.coefficients if isinstance(w, Weight) else tuple(w)
    if len(coeffs) != rs.rank:
        raise ValueError(f"weight has {len(coeffs)} coefficients, root system has rank {rs.rank}")
    return rs.coroot_pairing(coeffs, i)


def weyl_group_degrees(t: CartanType) -> tuple[int, ...]:
    """Degrees of the basic invariants, concatenated over components."""
    if isinstance(t, str):
        t = CartanType.parse(t)
    out: list[int] = []
    for fam, n in t.components:
        if fam == "A":
            out.extend(range(2, n + 2))
        elif fam in ("B", "C"):
            out.extend(range(2, 2 * n + 1, 2))
        elif fam == "D":
            out.extend(list(range(2, 2 * n - 1, 2)) + [n])
        else:
            out.extend(_EXPONENT_DEGREES[(fam, n)])
    return tuple(out)


def weyl_group_order(t: CartanType) -> int:
    return math.prod(weyl_group_degrees(t))


def identify_subdiagram(rs: RootSystem, nodes: Iterable[int]) -> list[tuple[CartanType, tuple[int, ...]]]:
    """Name the Dynkin subdiagram spanned by ``nodes``.

    Returns one ``(type, labelling)`` pair per connected component, ordered by
    smallest original node; ``labelling[k]`` is the original index of the
    node that becomes simple root ``k + 1`` in Bourbaki numbering.
    """
    nodes = sorted(set(nodes))
    for i in nodes:
        rs._check_index(i)
    remaining = set(nodes)
    out = []
    while remaining:
        start = min(remaining)
        comp, stack = {start}, [start]
        while stack:
            v = stack.pop()
            for w in rs.neighbours(v):
                if w in remaining and w not in comp:
                    comp.add(w)
                    stack.append(w)
        remaining -= comp
        t, labels = _identify_connected(rs.cartan_matrix, sorted(comp))
        sub = [[rs.cartan_matrix[a - 1][b - 1] for b in labels] for a in labels]
        if [list(r) for r in _cartan_matrix(t)] != sub:
            raise AssertionError(f"subdiagram {labels} misidentified as {t}")
        out.append((t, labels))
    return out


def _identify_connected(cm, comp: list[int]) -> tuple[CartanType, tuple[int, ...]]:
    n = len(comp)
    C = lambda a, b: cm[a - 1][b - 1]  # noqa: E731
    adj = {v: sorted(w for w in comp if w != v and C(v, w) != 0) for v in comp}
    if n == 1:
        return CartanType((("A", 1),)), (comp[0],)

    def path_from(end: int) -> list[int]:
        seq, prev = [end], None
        while True:
            nxt = [w for w in adj[seq[-1]] if w != prev]
            if not nxt:
                return seq
            prev = seq[-1]
            seq.append(nxt[0])

    multi = [(a, b) for a in comp for b in adj[a] if a < b and C(a, b) * C(b, a) > 1]
    if multi:
        a, b = multi[0]
        short, long_ = (a, b) if C(a, b) < -1 else (b, a)
        if C(a, b) * C(b, a) == 3:
            return CartanType((("G", 2),)), (short, long_)
        if n == 2:
            return CartanType((("B", 2),)), (long_, short)
        ends = [v for v in comp if len(adj[v]) == 1]
        if n == 4 and short not in ends and long_ not in ends:
            first = next(e for e in ends if path_from(e)[1] == long_)
            return CartanType((("F", 4),)), tuple(path_from(first))
        if short in ends:
            first = next(e for e in ends if e != short)
            return CartanType((("B", n),)), tuple(path_from(first))
        first = next(e for e in ends if e != long_)
        return CartanType((("C", n),)), tuple(path_from(first))

    branch = [v for v in comp if len(adj[v]) == 3]
    if not branch:
        ends = sorted(v for v in comp if len(adj[v]) <= 1)
        return CartanType((("A", n),)), tuple(path_from(ends[0]))

    c = branch[0]
    arms = []
    for w in adj[c]:
        arm, prev = [w], c
        while True:
            nxt = [x for x in adj[arm[-1]] if x != prev]
            if not nxt:
                break
            prev = arm[-1]
            arm.append(nxt[0])
        arms.append(arm)
    arms.sort(key=lambda arm: (len(arm), arm[0]))
    lens = tuple(len(a) for a in arms)
    if lens[:2] == (1, 1):
        long_arm = arms[2]
        labels = list(reversed(long_arm)) + [c, arms[0][0], arms[1][0]]
        return CartanType((("D", n),)), tuple(labels)
    if lens in ((1, 2, 2), (1, 2, 3), (1, 2, 4)):
        one, two, rest = arms
        labels = [two[1], one[0], two[0], c] + rest
        return CartanType((("E", n),)), tuple(labels)
    raise AssertionError(f"not a finite-type Dynkin diagram: arms {lens}")
