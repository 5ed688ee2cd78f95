"""Seeded random families for probes and property checks."""

from __future__ import annotations

import random
from typing import Sequence

from .family import SetFamily, is_valued_family

__all__ = ["SamplingError", "random_family", "random_valued_family"]


class SamplingError(RuntimeError):
    pass


def random_family(rng: random.Random, n: int, m: int) -> SetFamily:
    """``n`` random nonempty subsets of ``m`` labels; the ground is their union."""
    sets = []
    for _ in range(n):
        size = rng.randint(1, m)
        sets.append(sorted(rng.sample(range(m), size)))
    return SetFamily.from_sets(sets)


def random_valued_family(
    rng: random.Random,
    t: int,
    a: Sequence[int],
    ground_cap: int,
    max_tries: int = 10_000,
) -> SetFamily:
    """Rejection-sample a valued family with members drawn from ``ground_cap`` labels."""
    for _ in range(max_tries):
        sets = [sorted(rng.sample(range(ground_cap), w + t)) for w in a]
        family = SetFamily.from_sets(sets)
        if is_valued_family(family, t, a):
            return family
    raise SamplingError(
        f"no valued family for t={t}, a={tuple(a)} within {max_tries} draws"
    )
