import random

from hypothesis import strategies as st

from ahg import suites


@st.composite
def point_sets(draw, n=None, min_size=1, max_size=8, bound=3):
    n = draw(st.integers(1, 3)) if n is None else n
    pts = draw(st.lists(st.tuples(*[st.integers(-bound, bound)] * n), min_size=min_size, max_size=max_size))
    return pts


@st.composite
def unimodular(draw, n):
    seed = draw(st.integers(0, 2**32 - 1))
    return suites.random_unimodular(random.Random(seed), n)


@st.composite
def configurations(draw, n=None, max_points=6):
    """Generating configuration plus a non-resonant rational parameter."""
    n = draw(st.integers(1, 3)) if n is None else n
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    A = suites.random_configuration(rng, n, max_points)
    return A, suites.random_nonresonant(rng, A)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import ACCEPTANCE
    except ImportError:
        return
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}")
