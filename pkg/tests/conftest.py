from fractions import Fraction

import numpy as np
import pytest

from dotpairs.geometry import PointSet
from dotpairs.scalars import FieldSpec

ACCEPTANCE_LINES = []


def random_rational(rng, lo=-9, hi=9, max_den=4):
    return Fraction(int(rng.integers(lo, hi + 1)), int(rng.integers(1, max_den + 1)))


def random_nonzero(rng, field):
    if field.is_rational:
        while True:
            x = random_rational(rng)
            if x:
                return x
    return field.element(int(rng.integers(1, field.p)))


def random_pointset(rng, field, d, n, allow_origin=True):
    """Up to n distinct random points (fewer if the field runs out)."""
    if not field.is_rational:
        n = min(n, field.p ** d - (0 if allow_origin else 1))
    seen = set()
    attempts = 0
    while len(seen) < n and attempts < 50 * (n + 1):
        attempts += 1
        if field.is_rational:
            p = tuple(random_rational(rng) for _ in range(d))
        else:
            p = tuple(field.element(int(rng.integers(0, field.p))) for _ in range(d))
        if not allow_origin and all(c == 0 for c in p):
            continue
        seen.add(p)
    return PointSet(field, d, tuple(sorted(seen, key=str)))


def random_constants(rng, P):
    """alpha, beta != 0; half the time taken from dot products that actually occur."""
    from dotpairs.geometry import dot

    def one():
        if P.n and rng.random() < 0.5:
            a = P.points[int(rng.integers(P.n))]
            b = P.points[int(rng.integers(P.n))]
            v = dot(a, b)
            if v != 0:
                return v
        return random_nonzero(rng, P.field)

    return one(), one()


FIELDS = [FieldSpec.rational(), FieldSpec.prime(3), FieldSpec.prime(7), FieldSpec.prime(101)]


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
