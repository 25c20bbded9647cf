import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from logent.entropy import Dist, JointDist
from logent.partitions import Partition, Universe

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def partitions(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    labels = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    return Partition.from_labels(labels)


@st.composite
def partition_pairs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    a = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    b = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    return Partition.from_labels(a), Partition.from_labels(b)


@st.composite
def rational_dists(draw, n=None, min_n=1, max_n=7, positive=False):
    if n is None:
        n = draw(st.integers(min_n, max_n))
    lo = 1 if positive else 0
    weights = draw(st.lists(st.integers(lo, 12), min_size=n, max_size=n).filter(lambda w: sum(w) > 0))
    total = sum(weights)
    return Dist(tuple(Fraction(w, total) for w in weights))


@st.composite
def rational_joints(draw, ndim=2, max_side=3, positive=False):
    shape = tuple(draw(st.integers(2, max_side)) for _ in range(ndim))
    size = int(np.prod(shape))
    lo = 1 if positive else 0
    weights = draw(st.lists(st.integers(lo, 9), min_size=size, max_size=size).filter(lambda w: sum(w) > 0))
    total = sum(weights)
    cells = np.empty(size, dtype=object)
    cells[:] = [Fraction(w, total) for w in weights]
    return JointDist(cells.reshape(shape))


def brute_ditset(p):
    """Ordered pairs in different blocks, by scanning blocks directly."""
    block_of = {}
    for i, b in enumerate(p.blocks):
        for j in b:
            block_of[j] = i
    return {(j, k) for j, k in itertools.product(range(p.n), repeat=2) if block_of[j] != block_of[k]}


@pytest.fixture
def rng():
    return np.random.default_rng(20260115)


@pytest.fixture
def u8():
    return Dist.uniform(8)


@pytest.fixture
def tree_partitions():
    """The three binary splits of eight points and their successive joins."""
    p1 = Partition.from_blocks([[0, 1, 2, 3], [4, 5, 6, 7]])
    p2 = Partition.from_blocks([[0, 1, 4, 5], [2, 3, 6, 7]])
    p3 = Partition.from_blocks([[0, 2, 4, 6], [1, 3, 5, 7]])
    return p1, p2, p3


def universe(n):
    return Universe(n)


# -- acceptance verdicts ----------------------------------------------------

VERDICTS = []


class _Verdict:
    def __init__(self, label, text):
        self.label = label
        self.text = text

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        line = f"{status} criterion {self.label}: {self.text}"
        if exc_type is not None:
            detail = str(exc).strip().splitlines()
            line += f" [{detail[0] if detail else exc_type.__name__}]"
        VERDICTS.append(line)
        print(line)
        return False


@pytest.fixture
def verdict():
    return _Verdict


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
