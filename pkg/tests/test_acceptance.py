"""Exit criteria. Each test records one PASS/FAIL line, printed in the terminal summary."""

import itertools
import random
import time

import pytest
from oracles import all_small_families

from sdrkit import (
    SearchSpec,
    canonical_form,
    census,
    chang_U,
    construct_bar,
    construct_star,
    count_sdr,
    enumerate_families,
    enumerate_sdrs,
    equivalence_classes,
    exchange,
    descent_step,
    is_bar_family,
    permute_members,
    relabel,
    tight_sets,
    valued_U,
    verify_theorem4,
)
from sdrkit.pairs import is_exclusive
from sdrkit.sampling import random_family, random_valued_family
from sdrkit.search import descend

RESULTS: list[str] = []
SEED = 20240601


@pytest.fixture
def record(request):
    lines = []
    yield lines.append
    passed = request.node.rep_call.passed if hasattr(request.node, "rep_call") else False
    RESULTS.append(f"{'PASS' if passed else 'FAIL'}  {request.node.name}: {'; '.join(lines)}")


@pytest.fixture(scope="module")
def descent_samples():
    """1000 seeded valued families with t in {2,3}, n in {2,3,4}, a_i in {1,2}."""
    rng = random.Random(SEED)
    samples = []
    for _ in range(1000):
        t = rng.choice((2, 3))
        n = rng.choice((2, 3, 4))
        a = tuple(rng.choice((1, 2)) for _ in range(n))
        cap = rng.randint(sum(a) + t, sum(a) + n * t)
        samples.append((random_valued_family(rng, t, a, cap), t, a))
    return samples


@pytest.fixture(scope="module")
def descent_traces(descent_samples):
    return [descend(f, t, a) for f, t, a in descent_samples]


def test_ac1_closed_form_table(record):
    start = time.perf_counter()
    ok = all(
        chang_U(0, n) == 1 and chang_U(1, n) == n + 1 and chang_U(2, n) == n * n + n + 1
        for n in range(1, 11)
    )
    elapsed = time.perf_counter() - start
    record(f"30 values exact={ok}, {elapsed * 1e3:.3f} ms (limit 1 ms)")
    assert ok
    assert elapsed < 1e-3


def test_ac2_star_identity(record):
    start = time.perf_counter()
    bad = [
        (t, n) for t in range(5) for n in range(1, 7)
        if count_sdr(construct_star(t, n)) != chang_U(t, n)
    ]
    elapsed = time.perf_counter() - start
    record(f"30 cases, mismatches={bad}, {elapsed:.3f} s (limit 1 s)")
    assert not bad
    assert elapsed < 1


def test_ac3_bar_identity(record):
    start = time.perf_counter()
    cases = bad = 0
    for t in range(5):
        for n in range(1, 6):
            for a in itertools.product((1, 2, 3), repeat=n):
                cases += 1
                bad += count_sdr(construct_bar(t, a)) != valued_U(t, a)
    elapsed = time.perf_counter() - start
    record(f"{cases} cases, mismatches={bad}, {elapsed:.2f} s (limit 30 s)")
    assert bad == 0
    assert elapsed < 30


@pytest.mark.parametrize(
    "t, a, expected",
    [(2, (1, 1), 7), (2, (1, 1, 1), 13), (3, (1, 1), 13), (2, (2, 1), 10)],
    ids=["t2-a11", "t2-a111", "t3-a11", "t2-a21"],
)
def test_ac4_theorem4_desk_scale(record, t, a, expected):
    start = time.perf_counter()
    report = verify_theorem4(SearchSpec(t, a))
    elapsed = time.perf_counter() - start
    record(
        f"minimum={report.minimum} (expected {expected}), closed_form={report.closed_form}, "
        f"unique_bar={report.unique_bar}, classes={report.canonical_classes}, "
        f"{elapsed:.2f} s (limit 300 s)"
    )
    assert report.status == "complete"
    assert report.minimum == expected == report.closed_form
    assert report.unique_bar
    assert elapsed < 300


def test_ac5_oracle_equivalence(record):
    start = time.perf_counter()
    exhaustive = bad = 0
    for f in all_small_families(4, 7):
        exhaustive += 1
        listing = enumerate_sdrs(f)
        bad += listing.truncated or count_sdr(f) != len(listing.sequences)
    rng = random.Random(SEED)
    for _ in range(1000):
        f = random_family(rng, rng.randint(1, 6), rng.randint(1, 10))
        bad += count_sdr(f) != len(enumerate_sdrs(f).sequences)
    elapsed = time.perf_counter() - start
    record(
        f"{exhaustive} exhaustive (n<=4, m<=7, up to ground relabelling) + 1000 random, "
        f"mismatches={bad}, {elapsed:.1f} s (limit 120 s)"
    )
    assert bad == 0
    assert elapsed < 120


def test_ac6_descent_property(record, descent_traces):
    violations = [v for trace in descent_traces for v in trace.violations]
    steps = sum(len(trace.counts) - 1 for trace in descent_traces)
    decreasing = all(
        all(b < c for c, b in zip(trace.counts, trace.counts[1:])) for trace in descent_traces
    )
    balanced = sum(trace.fixpoint_nep == trace.fixpoint_nsp for trace in descent_traces)
    record(f"1000 chains, {steps} steps, violations={len(violations)}, balanced fixpoints={balanced}")
    assert not violations
    assert decreasing
    assert balanced == len(descent_traces)


def _visited(samples):
    """Start families plus every family met along their descent chains."""
    for f, t, a in samples:
        yield f, t, a
        while (step := descent_step(f, t, a)) is not None:
            f = step[0]
            yield f, t, a


def test_ac7_pair_bounds(record, descent_samples):
    universe = [(f, 2, (1, 1)) for f in enumerate_families(SearchSpec(2, (1, 1)))]
    checked = bad = bars = 0
    for f, t, a in itertools.chain(_visited(descent_samples), universe):
        checked += 1
        res = census(f, t, a)
        bar = is_bar_family(f, t, a)
        bars += bar
        if not (res.nsp <= res.bound <= res.nep) or (res.nep == res.bound) != bar:
            bad += 1
    record(f"{checked} valued families ({bars} bar), violations={bad}")
    assert bad == 0


def test_ac8_exchange_union_relation(record):
    start = time.perf_counter()
    checks = bad = 0
    for f in all_small_families(4, 7):
        cols = f.columns
        subsets = range(1, 1 << f.n)
        before = [u.bit_count() for u in f.subset_unions]
        done = set()
        for x, y in itertools.permutations(range(f.m), 2):
            ix, iy = cols[x], cols[y]
            # elements with equal columns are interchangeable; one representative pair suffices
            if (ix, iy) in done or not is_exclusive(ix, iy):
                continue
            done.add((ix, iy))
            after = exchange(f, x, y).subset_unions
            both, only_x, only_y = ix & iy, ix & ~iy, iy & ~ix
            for s in subsets:
                drop = not s & both and bool(s & only_x) and bool(s & only_y)
                bad += after[s].bit_count() != before[s] - drop
            checks += len(subsets)
    elapsed = time.perf_counter() - start
    record(f"{checks} (family, pair, I) checks, violations={bad}, {elapsed:.1f} s (limit 120 s)")
    assert bad == 0
    assert elapsed < 120


def test_ac9_structural_properties(record, descent_samples):
    partition_bad = closure_bad = 0
    for f, t, a in descent_samples:
        classes = equivalence_classes(f, t, a)
        full = (1 << f.n) - 1
        if sum(classes) != full or any(c & d for c, d in itertools.combinations(classes, 2)):
            partition_bad += 1
        tight = {ts.indices for ts in tight_sets(f, t, a)}
        closure_bad += any(s & r and (s | r) not in tight for s, r in itertools.combinations(tight, 2))

    rng = random.Random(SEED)
    canon_bad = 0
    for k in range(1000):
        if k % 2:
            f, t, a = descent_samples[k]
            weights = a
        else:
            f = random_family(rng, rng.randint(1, 5), rng.randint(1, 8))
            weights = None
        perm = list(range(f.m))
        rng.shuffle(perm)
        canon_bad += canonical_form(relabel(f, perm), weights) != canonical_form(f, weights)
        if weights is None:
            order = list(range(f.n))
            rng.shuffle(order)
            canon_bad += canonical_form(permute_members(f, order)) != canonical_form(f)
    record(
        f"partition violations={partition_bad}, closure violations={closure_bad}, "
        f"canonical violations={canon_bad} over 1000 permutations"
    )
    assert partition_bad == closure_bad == canon_bad == 0
