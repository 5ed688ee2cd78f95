"""Exhaustive search over valued families for the minimum SDR count.

The universe for ``(t, a)`` is every valued (t, n)-family with valuation
``a`` on at most ``ground_cap`` elements, taken up to ground relabelling and
swaps of equal-weight members. Members are generated in order as sorted
subsets; a member may only introduce fresh elements as the next unused
indices, which removes most relabelled copies before the canonical-form
check removes the rest.

Work is split into shards by the choice of the second member. Shards are
independent and their results merge by dictionary union, so the report does
not depend on how many workers ran them.
"""

from __future__ import annotations

import itertools
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .closed_forms import valued_U
from .counting import count_sdr
from .family import (
    FamilyError,
    GroundMap,
    SetFamily,
    canonical_form,
    construct_bar,
    family_from_canonical,
    is_valued_family,
)
from .pairs import census, descent_step
from .sampling import SamplingError, random_valued_family

__all__ = [
    "SearchSpec",
    "SearchReport",
    "DescentReport",
    "enumerate_families",
    "verify_theorem4",
    "descend",
    "descent_probe",
]

log = logging.getLogger(__name__)

MIN_ONLY = "min-only"
COLLECT = "collect-minimizers"


@dataclass(frozen=True)
class SearchSpec:
    t: int
    a: tuple[int, ...]
    ground_cap: int | None = None
    mode: str = MIN_ONLY
    max_families: int | None = None
    max_seconds: float | None = None

    def __post_init__(self) -> None:
        a = tuple(self.a)
        object.__setattr__(self, "a", a)
        if self.t < 0:
            raise FamilyError("t must be nonnegative")
        if not a or any(isinstance(w, bool) or not isinstance(w, int) or w < 1 for w in a):
            raise FamilyError("valuation must be a nonempty list of positive integers")
        lo, hi = sum(a) + self.t, sum(a) + len(a) * self.t
        cap = hi if self.ground_cap is None else self.ground_cap
        if not lo <= cap <= hi:
            raise FamilyError(f"ground_cap must lie in [{lo}, {hi}], got {cap}")
        object.__setattr__(self, "ground_cap", cap)
        if self.mode not in (MIN_ONLY, COLLECT):
            raise FamilyError(f"unknown search mode {self.mode!r}")


@dataclass
class SearchReport:
    t: int
    a: tuple[int, ...]
    ground_cap: int
    minimum: int | None
    closed_form: int
    minimizers: list[bytes]
    families_scanned: int
    canonical_classes: int
    unique_bar: bool
    status: str = "complete"
    representatives: list[SetFamily] | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        doc = {
            "status": self.status,
            "t": self.t,
            "valuation": list(self.a),
            "ground_cap": self.ground_cap,
            "minimum": None if self.minimum is None else str(self.minimum),
            "closed_form": str(self.closed_form),
            "minimizers": [form.decode("ascii") for form in self.minimizers],
            "families_scanned": self.families_scanned,
            "canonical_classes": self.canonical_classes,
            "unique_bar": self.unique_bar,
        }
        if self.representatives is not None:
            doc["representatives"] = [f.sets() for f in self.representatives]
        return doc


# --- raw generation ----------------------------------------------------------


def _member_options(used: int, size: int, cap: int) -> Iterator[int]:
    """Sorted ``size``-subsets whose new elements are exactly ``used, used+1, ...``."""
    top = min(used + size, cap)
    for combo in itertools.combinations(range(top), size):
        fresh = [x for x in combo if x >= used]
        if fresh and fresh[-1] != used + len(fresh) - 1:
            continue
        mask = 0
        for x in combo:
            mask |= 1 << x
        yield mask


def _extend(
    unions: list[int], weights: list[int], mask: int, w: int, t: int
) -> tuple[list[int], list[int]] | None:
    """Add one member if every new index set of size >= 2 keeps ``|union| >= weight + t``."""
    new_unions = []
    new_weights = []
    for s in range(len(unions)):
        u = unions[s] | mask
        ws = weights[s] + w
        if s and u.bit_count() < ws + t:
            return None
        new_unions.append(u)
        new_weights.append(ws)
    return unions + new_unions, weights + new_weights


def _raw_families(t: int, a: Sequence[int], cap: int, shard: int | None = None):
    """Member-mask tuples of valued families, in generation order.

    ``shard`` restricts the second member to its ``shard``-th option.
    """
    n = len(a)
    sizes = [w + t for w in a]
    first = (1 << sizes[0]) - 1

    def grow(k: int, prefix: list[int], used: int, unions: list[int], weights: list[int]):
        if k == n:
            yield tuple(prefix)
            return
        for j, mask in enumerate(_member_options(used, sizes[k], cap)):
            if k == 1 and shard is not None and j != shard:
                continue
            ext = _extend(unions, weights, mask, a[k], t)
            if ext is None:
                continue
            prefix.append(mask)
            yield from grow(k + 1, prefix, max(used, mask.bit_length()), *ext)
            prefix.pop()

    yield from grow(1, [first], sizes[0], [0, first], [0, a[0]])


def _shard_count(t: int, a: Sequence[int], cap: int) -> int:
    if len(a) == 1:
        return 1
    return sum(1 for _ in _member_options(a[0] + t, a[1] + t, cap))


def _family(masks: tuple[int, ...]) -> SetFamily:
    m = 0
    for mask in masks:
        m |= mask
    m = m.bit_length()
    return SetFamily(masks, GroundMap(tuple(str(x + 1) for x in range(m))))


def enumerate_families(spec: SearchSpec) -> Iterator[SetFamily]:
    """One valued family per canonical class, in generation order."""
    seen: set[bytes] = set()
    for masks in _raw_families(spec.t, spec.a, spec.ground_cap):
        family = _family(masks)
        form = canonical_form(family, spec.a)
        if form not in seen:
            seen.add(form)
            yield family


# --- sharded search ----------------------------------------------------------


@dataclass
class _ShardResult:
    scanned: int
    classes: dict[bytes, int]
    complete: bool


def _run_shard(
    t: int,
    a: tuple[int, ...],
    cap: int,
    shard: int | None,
    max_families: int | None,
    deadline: float | None,
) -> _ShardResult:
    scanned = 0
    classes: dict[bytes, int] = {}
    for masks in _raw_families(t, a, cap, shard):
        if (max_families is not None and scanned >= max_families) or (
            deadline is not None and time.monotonic() > deadline
        ):
            return _ShardResult(scanned, classes, False)
        scanned += 1
        family = _family(masks)
        form = canonical_form(family, a)
        if form not in classes:
            classes[form] = count_sdr(family)
    return _ShardResult(scanned, classes, True)


def verify_theorem4(spec: SearchSpec, jobs: int = 1) -> SearchReport:
    """Minimum SDR count over the search universe and whether the bar family is
    its only minimizer.

    An incomplete run (budget exhausted) reports what it saw with
    ``status="incomplete"`` and never claims ``unique_bar``.
    """
    t, a, cap = spec.t, spec.a, spec.ground_cap
    deadline = None if spec.max_seconds is None else time.monotonic() + spec.max_seconds
    shards = list(range(_shard_count(t, a, cap))) if len(a) > 1 else [None]
    args = [(t, a, cap, s, spec.max_families, deadline) for s in shards]

    if jobs > 1 and len(shards) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_shard, *zip(*args)))
    else:
        results = []
        left = spec.max_families
        for shard in shards:
            res = _run_shard(t, a, cap, shard, left, deadline)
            results.append(res)
            if left is not None:
                left -= res.scanned
            if not res.complete:
                shards = shards[: len(results)]
                break

    scanned = 0
    complete = True
    classes: dict[bytes, int] = {}
    for shard, res in zip(shards, results):
        log.info(
            "shard %s: %d families, %d classes%s",
            shard, res.scanned, len(res.classes), "" if res.complete else " (incomplete)",
        )
        scanned += res.scanned
        complete &= res.complete
        classes.update(res.classes)
    if spec.max_families is not None and scanned > spec.max_families:
        complete = False

    minimum = min(classes.values()) if classes else None
    minimizers = sorted(form for form, c in classes.items() if c == minimum)
    bar_form = canonical_form(construct_bar(t, a), a)
    unique = complete and minimizers == [bar_form]
    report = SearchReport(
        t=t,
        a=a,
        ground_cap=cap,
        minimum=minimum,
        closed_form=valued_U(t, a),
        minimizers=minimizers,
        families_scanned=scanned,
        canonical_classes=len(classes),
        unique_bar=unique,
        status="complete" if complete else "incomplete",
    )
    if spec.mode == COLLECT:
        report.representatives = [family_from_canonical(form, a) for form in minimizers]
    return report


# --- descent probe -----------------------------------------------------------


@dataclass
class DescentTrace:
    counts: list[int]
    violations: list[str]
    fixpoint: SetFamily
    fixpoint_nep: int
    fixpoint_nsp: int
    fixpoint_bound: int


def descend(family: SetFamily, t: int, a: Sequence[int], max_steps: int = 100_000) -> DescentTrace:
    """Apply descent steps until no unsaturated pair is left, checking each step."""
    counts = [count_sdr(family)]
    violations = []
    for _ in range(max_steps):
        step = descent_step(family, t, a)
        if step is None:
            break
        family, pair = step
        if not is_valued_family(family, t, a):
            violations.append(f"step {len(counts)}: pair {pair.x},{pair.y} left the valued class")
            break
        counts.append(count_sdr(family))
        if counts[-1] >= counts[-2]:
            violations.append(
                f"step {len(counts) - 1}: count went {counts[-2]} -> {counts[-1]}"
            )
    else:
        violations.append(f"no fixpoint within {max_steps} steps")
    final = census(family, t, a)
    if final.nep != final.nsp and not violations:
        violations.append(f"fixpoint has nep={final.nep} != nsp={final.nsp}")
    return DescentTrace(counts, violations, family, final.nep, final.nsp, final.bound)


@dataclass
class DescentReport:
    t: int
    a: tuple[int, ...]
    seed: int
    samples: int
    sampled: int
    sampling_failures: int
    steps: int
    longest_chain: int
    fixpoints_balanced: int
    fixpoints_below_bound: int
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "valuation": list(self.a),
            "seed": self.seed,
            "samples": self.samples,
            "sampled": self.sampled,
            "sampling_failures": self.sampling_failures,
            "steps": self.steps,
            "longest_chain": self.longest_chain,
            "fixpoints_balanced": self.fixpoints_balanced,
            "fixpoints_below_bound": self.fixpoints_below_bound,
            "violations": self.violations,
            "ok": self.ok,
        }


def descent_probe(spec: SearchSpec, samples: int, seed: int, max_tries: int = 10_000) -> DescentReport:
    """Descend from random valued families and check every step and fixpoint.

    A fixpoint is balanced when its exclusive and saturated pair counts
    agree; ``fixpoints_below_bound`` counts fixpoints with fewer exclusive
    pairs than the pair-product bound (expected zero).
    """
    if spec.t < 2:
        raise FamilyError("descent probing needs t >= 2")
    rng = random.Random(seed)
    sampled = failures = steps = longest = balanced = below = 0
    violations = []
    for k in range(samples):
        try:
            family = random_valued_family(rng, spec.t, spec.a, spec.ground_cap, max_tries)
        except SamplingError:
            failures += 1
            continue
        sampled += 1
        trace = descend(family, spec.t, spec.a)
        steps += len(trace.counts) - 1
        longest = max(longest, len(trace.counts) - 1)
        balanced += trace.fixpoint_nep == trace.fixpoint_nsp
        if trace.fixpoint_nep < trace.fixpoint_bound:
            below += 1
            violations.append(f"sample {k}: fixpoint nep {trace.fixpoint_nep} below bound")
        violations.extend(f"sample {k}: {v}" for v in trace.violations)
    return DescentReport(
        spec.t, spec.a, seed, samples, sampled, failures, steps, longest,
        balanced, below, violations,
    )
