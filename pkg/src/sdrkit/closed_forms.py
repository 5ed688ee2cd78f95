"""Closed-form SDR counts of the extremal families."""

from __future__ import annotations

from math import comb, factorial
from typing import Sequence

__all__ = ["elementary_symmetric", "chang_U", "valued_U", "pair_product_sum"]


def elementary_symmetric(a: Sequence[int]) -> list[int]:
    """``[e_0(a), ..., e_n(a)]``, the coefficients of ``prod(x + a_i)`` read downward."""
    e = [1] + [0] * len(a)
    for k, w in enumerate(a, start=1):
        for j in range(k, 0, -1):
            e[j] += w * e[j - 1]
    return e


def chang_U(t: int, n: int) -> int:
    """SDR count of the star family: ``sum_j C(t,j) C(n,j) j!``."""
    if t < 0 or n < 1:
        raise ValueError("need t >= 0 and n >= 1")
    return sum(comb(t, j) * comb(n, j) * factorial(j) for j in range(min(t, n) + 1))


def valued_U(t: int, a: Sequence[int]) -> int:
    """SDR count of the bar family: ``sum_j C(t,j) j! e_{n-j}(a)``."""
    if t < 0 or not a or any(w < 1 for w in a):
        raise ValueError("need t >= 0 and a nonempty valuation of positive integers")
    n = len(a)
    e = elementary_symmetric(a)
    return sum(comb(t, j) * factorial(j) * e[n - j] for j in range(min(t, n) + 1))


def pair_product_sum(a: Sequence[int]) -> int:
    """``sum_{i<j} a_i a_j``, the pair-count bound for valued families."""
    return elementary_symmetric(a)[2] if len(a) >= 2 else 0
