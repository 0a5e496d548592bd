import random

import pytest
from hypothesis import assume, strategies as st

from polyarea.geom import Point, validate_general_position
from polyarea.instance import Instance

P4I = [(0, 0), (6, 0), (0, 6), (1, 1)]
T3 = [(0, 0), (4, 0), (0, 4)]
SQUARE = [(0, 0), (2, 0), (2, 2), (0, 2)]
PENTAGON = [(0, 1), (2, 0), (1, -1), (-1, -1), (-1, 0)]


def make(coords, name="fixture"):
    return Instance.from_coords(coords, name)


def random_instance(n, seed, coord_max=100, name=None):
    """Small-coordinate general-position instance (the generator module uses 10^6)."""
    rng = random.Random(seed)
    while True:
        pts = [Point(rng.randint(0, coord_max), rng.randint(0, coord_max)) for _ in range(n)]
        if validate_general_position(pts) is None:
            return Instance(name or f"r{n}-{seed}", tuple(pts))


def convex_instance(n):
    """n points on the parabola y = x^2: convex position, no three collinear."""
    return make([(i, i * i) for i in range(n)], f"convex{n}")


@pytest.fixture
def p4i():
    return make(P4I, "p4i")


@pytest.fixture
def t3():
    return make(T3, "t3")


@pytest.fixture
def pentagon():
    return make(PENTAGON, "pentagon")


@st.composite
def instances(draw, min_n=4, max_n=7, coord_max=40):
    n = draw(st.integers(min_n, max_n))
    pts = draw(st.lists(st.tuples(st.integers(0, coord_max), st.integers(0, coord_max)),
                        min_size=n, max_size=n, unique=True))
    pts = [Point(x, y) for x, y in pts]
    assume(validate_general_position(pts) is None)
    return Instance("h", tuple(pts))


# small fixtures (n <= 8) shared by the exhaustive cut-validity checks
SMALL_SEEDS = [(n, s) for n in (5, 6, 7, 8) for s in range(3)]


# -- acceptance report -------------------------------------------------------------
# Tests marked ``criterion(k, title)`` get one PASS/FAIL/SKIP line each in the summary.

_CRITERIA: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        verdict = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[rep.outcome]
        detail = "; ".join(f"{k}={v}" for k, v in item.user_properties)
        _CRITERIA[number] = (verdict, title, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        verdict, title, detail = _CRITERIA[number]
        line = f"criterion {number:>2} {verdict}: {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))
