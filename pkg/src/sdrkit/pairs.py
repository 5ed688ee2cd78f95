"""Exclusive and saturated element pairs of valued families, and the descent step."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .closed_forms import pair_product_sum
from .family import (
    FamilyError,
    SetFamily,
    TightSet,
    _require_valued,
    exchange,
    tight_sets,
)

__all__ = [
    "PairReport",
    "PairCensus",
    "is_exclusive",
    "classify_pair",
    "census",
    "descent_step",
]


@dataclass(frozen=True)
class PairReport:
    """Verdict for the element pair ``{x, y}`` (ground indices, ``x < y`` in censuses).

    ``witness`` is the first tight index set, by bit-mask value, that separates
    the pair; it is present exactly when the pair is saturated.
    """

    x: int
    y: int
    exclusive: bool
    saturated: bool
    witness: int | None = None
    theorem_applicable: bool = True


@dataclass(frozen=True)
class PairCensus:
    nep: int
    nsp: int
    bound: int
    reports: list[PairReport] = field(repr=False)
    theorem_applicable: bool = True


def is_exclusive(ix: int, iy: int) -> bool:
    return bool(ix & ~iy) and bool(iy & ~ix)


def _witness(ix: int, iy: int, tight: Sequence[TightSet]) -> int | None:
    both, only_x, only_y = ix & iy, ix & ~iy, iy & ~ix
    for ts in tight:
        s = ts.indices
        if not s & both and s & only_x and s & only_y:
            return s
    return None


def _report(family: SetFamily, x: int, y: int, tight, applicable: bool) -> PairReport:
    ix, iy = family.columns[x], family.columns[y]
    if not is_exclusive(ix, iy):
        return PairReport(x, y, False, False, None, applicable)
    witness = _witness(ix, iy, tight)
    return PairReport(x, y, True, witness is not None, witness, applicable)


def classify_pair(family: SetFamily, t: int, a: Sequence[int], x: int, y: int) -> PairReport:
    if x == y:
        raise FamilyError("a pair needs two distinct elements")
    for e in (x, y):
        if not 0 <= e < family.m:
            raise FamilyError(f"element index {e} out of range [0, {family.m})")
    tight = tight_sets(family, t, a)
    return _report(family, x, y, tight, t >= 2)


def census(family: SetFamily, t: int, a: Sequence[int]) -> PairCensus:
    """Classify every unordered ground pair; keep reports for the exclusive ones."""
    a = _require_valued(family, t, a)
    tight = tight_sets(family, t, a)
    applicable = t >= 2
    reports = []
    for x in range(family.m):
        for y in range(x + 1, family.m):
            rep = _report(family, x, y, tight, applicable)
            if rep.exclusive:
                reports.append(rep)
    nsp = sum(rep.saturated for rep in reports)
    return PairCensus(len(reports), nsp, pair_product_sum(a), reports, applicable)


def descent_step(
    family: SetFamily, t: int, a: Sequence[int]
) -> tuple[SetFamily, PairReport] | None:
    """Exchange along the lexicographically first unsaturated exclusive pair.

    For the pair ``x < y`` the result is ``exchange(family, x, y)``, which is
    again a valued family with the same valuation. Returns ``None`` when every
    exclusive pair is saturated.
    """
    a = _require_valued(family, t, a)
    tight = tight_sets(family, t, a)
    cols = family.columns
    for x in range(family.m):
        ix = cols[x]
        for y in range(x + 1, family.m):
            iy = cols[y]
            if is_exclusive(ix, iy) and _witness(ix, iy, tight) is None:
                report = PairReport(x, y, True, False, None, t >= 2)
                return exchange(family, x, y), report
    return None
