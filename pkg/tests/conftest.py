from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from partlogic.entropy import ProbDist
from partlogic.partition import Partition, Universe


def set_partitions(items):
    """All set partitions of ``items``, by inserting each item into an existing
    block or a new one (independent of the library's RGS enumeration)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in set_partitions(rest):
        yield [[first]] + smaller
        for i in range(len(smaller)):
            yield smaller[:i] + [[first] + smaller[i]] + smaller[i + 1:]


@st.composite
def universes(draw, min_size=1, max_size=5):
    n = draw(st.integers(min_size, max_size))
    return Universe.letters(n)


@st.composite
def partitions_on(draw, universe):
    n = len(universe)
    rgs, top = [], -1
    for _ in range(n):
        v = draw(st.integers(0, top + 1))
        top = max(top, v)
        rgs.append(v)
    return Partition.from_rgs(universe, rgs)


@st.composite
def partition_pairs(draw, max_size=5):
    u = draw(universes(max_size=max_size))
    return draw(partitions_on(u)), draw(partitions_on(u))


@st.composite
def dists_on(draw, universe, positive=False):
    lo = 1 if positive else 0
    weights = draw(st.lists(st.integers(lo, 9), min_size=len(universe), max_size=len(universe)))
    if sum(weights) == 0:
        weights[0] = 1
    total = sum(weights)
    return ProbDist(universe, tuple(Fraction(w, total) for w in weights))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
