import random
from fractions import Fraction

import pytest

from sylvester import Polygon


def random_fraction(rng, lo=0, hi=1, denom=64):
    span = hi - lo
    return Fraction(lo) + Fraction(rng.randrange(0, denom + 1), denom) * span


def strict_hull(points):
    """Convex hull with strictly convex corners, ccw; rational inputs."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return None

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def build(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2 and cross(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(pts[::-1])
    ring = lower[:-1] + upper[:-1]
    if len(ring) < 3:
        return None
    return ring


def random_convex_polygon(rng, denom=32):
    """Strictly convex polygon from the hull of random rational points."""
    while True:
        pts = [
            (
                Fraction(rng.randrange(0, denom + 1), denom),
                Fraction(rng.randrange(0, denom + 1), denom),
            )
            for _ in range(rng.randrange(5, 10))
        ]
        ring = strict_hull(pts)
        if ring is not None:
            return Polygon(tuple(ring))


@pytest.fixture
def rng():
    return random.Random(20260825)


def pytest_terminal_summary(terminalreporter):
    # echo the acceptance pass/fail lines even when capture is on
    try:
        from test_acceptance import ACCEPTANCE_LINES
    except ImportError:
        return
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
