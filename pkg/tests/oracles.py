"""Independent reference computations, written with plain Python sets.

Nothing here calls into the DP, the bit-mask predicates or the canonical
form; tests compare the library against these.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from sdrkit import SetFamily
from sdrkit.family import GroundMap


def as_sets(family: SetFamily) -> list[frozenset[int]]:
    return [frozenset(x for x in range(family.m) if mask >> x & 1) for mask in family.members]


def brute_count(sets: Sequence[frozenset]) -> int:
    """SDRs by trying every choice tuple."""
    return sum(
        1 for choice in itertools.product(*[sorted(s) for s in sets])
        if len(set(choice)) == len(choice)
    )


def brute_union(sets, index_set: Sequence[int]) -> int:
    return len(frozenset().union(*(sets[i] for i in index_set)))


def nonempty_subsets(n: int) -> Iterator[tuple[int, ...]]:
    for k in range(1, n + 1):
        yield from itertools.combinations(range(n), k)


def brute_is_t_family(sets, t: int) -> bool:
    return all(brute_union(sets, I) >= len(I) + t for I in nonempty_subsets(len(sets)))


def brute_is_valued(sets, t: int, a: Sequence[int]) -> bool:
    if any(len(s) != w + t for s, w in zip(sets, a)):
        return False
    return all(
        brute_union(sets, I) >= sum(a[i] for i in I) + t
        for I in nonempty_subsets(len(sets)) if len(I) >= 2
    )


def brute_exchange(sets, x, y) -> list[frozenset]:
    return [(s - {x}) | {y} if x in s and y not in s else s for s in sets]


def brute_elementary(a: Sequence[int], k: int) -> int:
    total = 0
    for combo in itertools.combinations(a, k):
        prod = 1
        for w in combo:
            prod *= w
        total += prod
    return total


def brute_canonical(sets, weights: Sequence[int] | None = None):
    """Least sorted member list over all ground and weight-preserving member permutations."""
    n = len(sets)
    weights = weights or [1] * n
    ground = sorted(frozenset().union(*sets))
    best = None
    for order in itertools.permutations(range(n)):
        if [weights[i] for i in order] != sorted(weights):
            continue
        for perm in itertools.permutations(range(len(ground))):
            relabel = dict(zip(ground, perm))
            key = tuple(tuple(sorted(relabel[x] for x in sets[i])) for i in order)
            if best is None or key < best:
                best = key
    return best


def families_up_to_relabelling(n: int, m: int) -> Iterator[SetFamily]:
    """Every family of ``n`` members over exactly ``m`` elements, one per ground relabelling.

    A family up to relabelling of its ground is the multiset of its element
    columns (nonempty member-index sets), subject to every member being hit.
    """
    columns = range(1, 1 << n)
    full = (1 << n) - 1
    labels = tuple(str(x) for x in range(m))
    for combo in itertools.combinations_with_replacement(columns, m):
        cover = 0
        for c in combo:
            cover |= c
        if cover != full:
            continue
        members = [0] * n
        for x, c in enumerate(combo):
            for i in range(n):
                if c >> i & 1:
                    members[i] |= 1 << x
        yield SetFamily(tuple(members), GroundMap(labels))


def all_small_families(max_n: int = 4, max_m: int = 7) -> Iterator[SetFamily]:
    for n in range(1, max_n + 1):
        for m in range(1, max_m + 1):
            yield from families_up_to_relabelling(n, m)


def column_canonical(sets, weights: Sequence[int]):
    """Class key under ground relabelling and weight-preserving member swaps.

    Ground relabelling only permutes columns, so the sorted column tuple is
    a complete invariant; member swaps are tried exhaustively.
    """
    n = len(sets)
    ground = sorted(frozenset().union(*sets))
    best = None
    for order in itertools.permutations(range(n)):
        if any(weights[order[k]] != weights[k] for k in range(n)):
            continue
        cols = sorted(tuple(x in sets[i] for i in order) for x in ground)
        if best is None or cols < best:
            best = cols
    return tuple(best)


def reference_universe(t: int, a: Sequence[int], cap: int) -> set:
    """Class keys of all valued families with members drawn from ``cap`` labels, unpruned."""
    options = [list(itertools.combinations(range(cap), w + t)) for w in a]
    keys = set()
    for choice in itertools.product(*options):
        sets = [frozenset(c) for c in choice]
        if brute_is_valued(sets, t, a):
            keys.add(column_canonical(sets, a))
    return keys
