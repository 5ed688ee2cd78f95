import random

import pytest
from hypothesis import strategies as st

from sdrkit import SetFamily, is_valued_family


@st.composite
def families(draw, max_n=5, max_m=8):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_m))
    member = st.sets(st.integers(0, m - 1), min_size=1)
    return SetFamily.from_sets([sorted(s) for s in draw(st.lists(member, min_size=n, max_size=n))])


@st.composite
def valued_families(draw, t_values=(2, 3), max_n=4, max_a=2):
    """A valued family with its t and valuation; drawn by rejection."""
    t = draw(st.sampled_from(t_values))
    n = draw(st.integers(2, max_n))
    a = tuple(draw(st.lists(st.integers(1, max_a), min_size=n, max_size=n)))
    cap = draw(st.integers(sum(a) + t, sum(a) + n * t))
    seed = draw(st.integers(0, 2**32))
    from sdrkit.sampling import random_valued_family

    family = random_valued_family(random.Random(seed), t, a, cap)
    assert is_valued_family(family, t, a)
    return family, t, a


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
