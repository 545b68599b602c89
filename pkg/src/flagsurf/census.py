"""Batch verdicts over every multidegree up to a total-degree bound."""

from __future__ import annotations

import dataclasses
import itertools
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator

from .ci_analyzer import CIProblem, Verdict, verdict
from .flagvariety import DivisorClass, FlagVariety
from .moricone import ruling_contraction

__all__ = ["census", "hypersurface_classes", "multidegrees"]

Multidegree = tuple[tuple[int, ...], ...]


def hypersurface_classes(flag: FlagVariety, max_degree: int) -> list[tuple[int, ...]]:
    """Classes pulled back from positive classes on Y', with coefficient sum <= bound.

    Zero on ruling generators, positive elsewhere; sorted by (total degree, vector).
    """
    _, kernel = ruling_contraction(flag)
    free = [k for k, i in enumerate(flag.delta_p) if i not in kernel]
    if not free:
        return []
    out = []
    for combo in itertools.product(range(1, max_degree + 1), repeat=len(free)):
        if sum(combo) > max_degree:
            continue
        vec = [0] * flag.picard_rank
        for k, c in zip(free, combo):
            vec[k] = c
        out.append(tuple(vec))
    out.sort(key=lambda v: (sum(v), v))
    return out


def multidegrees(flag: FlagVariety, max_degree: int, max_codim: int | None = None) -> list[Multidegree]:
    """Every nonempty multiset of hypersurface classes with total degree <= bound.

    Canonical form: classes sorted within the multiset; rows ordered by
    codimension, then lexicographically.
    """
    classes = sorted(hypersurface_classes(flag, max_degree))
    out: list[Multidegree] = []

    def extend(start: int, chosen: list[tuple[int, ...]], budget: int) -> None:
        for k in range(start, len(classes)):
            cost = sum(classes[k])
            if cost > budget:
                continue
            chosen.append(classes[k])
            out.append(tuple(chosen))
            if max_codim is None or len(chosen) < max_codim:
                extend(k, chosen, budget - cost)
            chosen.pop()

    extend(0, [], max_degree)
    out.sort(key=lambda md: (len(md), md))
    return out


def _evaluate(args: tuple[CIProblem, Multidegree]) -> Verdict:
    base, md = args
    return verdict(dataclasses.replace(base, hypersurfaces=tuple(DivisorClass(d) for d in md)))


def census(
    base: CIProblem,
    max_degree: int,
    *,
    max_codim: int | None = None,
    jobs: int = 1,
    buffer: int = 256,
) -> Iterator[tuple[Multidegree, Verdict]]:
    """Yield ``(multidegree, verdict)`` in canonical order.

    With ``jobs > 1`` rows are computed in worker processes one window of
    ``buffer`` rows at a time and re-emitted in order.
    """
    rows = multidegrees(base.ambient, max_degree, max_codim)
    if jobs <= 1:
        for md in rows:
            yield md, _evaluate((base, md))
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for start in range(0, len(rows), buffer):
            window = rows[start:start + buffer]
            for md, v in zip(window, pool.map(_evaluate, [(base, md) for md in window])):
                yield md, v
