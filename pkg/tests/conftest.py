import random
from fractions import Fraction

import pytest

from polyhodge import zoo


@pytest.fixture(scope="session")
def dp_cubo():
    return zoo.get("dp_cuboctahedron")


@pytest.fixture(scope="session")
def cubo():
    return zoo.get("cuboctahedron")


def random_affine(rng: random.Random, n: int):
    """A random invertible rational n x n matrix and shift."""
    from polyhodge import exactla

    while True:
        m = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        if exactla.det(m) != 0:
            return m, [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[num][1])
