"""Exact SDR counting, enumeration and existence."""

from __future__ import annotations

from typing import NamedTuple

from .family import FamilyError, SetFamily, bits

__all__ = ["SdrList", "count_sdr", "enumerate_sdrs", "iter_sdrs", "has_sdr"]


def count_sdr(family: SetFamily) -> int:
    """Number of SDRs of ``family``, exact.

    Subset DP over members: ``table[S]`` counts injective assignments of the
    elements seen so far onto exactly the members in ``S``. Elements are
    scanned in ascending index order; each may be assigned to at most one
    member of ``I_x`` outside ``S``.
    """
    n = family.n
    full = (1 << n) - 1
    table = [0] * (1 << n)
    table[0] = 1
    for col in family.columns:
        new = table[:]
        for s, ways in enumerate(table):
            if ways:
                for i in bits(col & ~s):
                    new[s | (1 << i)] += ways
        table = new
    return table[full]


class SdrList(NamedTuple):
    sequences: list[tuple[int, ...]]
    truncated: bool


def iter_sdrs(family: SetFamily):
    """Yield SDRs as tuples of element indices.

    Members are filled in index order, each trying its elements in
    ascending index order, so the output order is fixed.
    """
    members = [list(bits(mask)) for mask in family.members]
    n = family.n
    chosen = [0] * n

    def extend(i: int, used: int):
        if i == n:
            yield tuple(chosen)
            return
        for x in members[i]:
            if not used >> x & 1:
                chosen[i] = x
                yield from extend(i + 1, used | (1 << x))

    yield from extend(0, 0)


def enumerate_sdrs(family: SetFamily, limit: int | None = None) -> SdrList:
    """At most ``limit`` SDRs in enumeration order; ``None`` means no limit.

    ``truncated`` is true iff more than ``limit`` SDRs exist. ``limit=0``
    returns no sequences and only answers whether any SDR exists.
    """
    if limit is not None and limit < 0:
        raise FamilyError("limit must be nonnegative")
    out: list[tuple[int, ...]] = []
    for sdr in iter_sdrs(family):
        if limit is not None and len(out) == limit:
            return SdrList(out, True)
        out.append(sdr)
    return SdrList(out, False)


def has_sdr(family: SetFamily) -> bool:
    """Hall's condition via augmenting paths (Kuhn's algorithm)."""
    members = [list(bits(mask)) for mask in family.members]
    owner = [-1] * family.m

    def augment(i: int, seen: list[bool]) -> bool:
        for x in members[i]:
            if seen[x]:
                continue
            seen[x] = True
            if owner[x] == -1 or augment(owner[x], seen):
                owner[x] = i
                return True
        return False

    for i in range(family.n):
        if not augment(i, [False] * family.m):
            return False
    return True
