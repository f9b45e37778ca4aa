from fractions import Fraction

import pytest

from oracles import max_points_on_line, naive_pi
from dotpairs.constructions import (ConstructionError, gen_highdim_cubic, gen_line_fan,
                                    gen_pencil, gen_separated_grid, generate,
                                    separated_grid_parts, validate_construction)
from dotpairs.geometry import PointSet, dot

F = Fraction


def test_line_fan_12_3():
    P = gen_line_fan(12, 3)
    assert P.n == 12
    assert max_points_on_line(list(P.points)) < 3
    report = validate_construction(P, ("line-fan", {"n": 12, "s": 3}))
    assert report.ok
    assert report.claimed_lower_bound == 16
    assert report.measured_pi == naive_pi(P.points, 1, 1) == 24


@pytest.mark.parametrize("n, s", [(10, 3), (12, 1), (2, 3)])
def test_line_fan_bad_params(n, s):
    with pytest.raises(ValueError):
        gen_line_fan(n, s)


def test_line_fan_deterministic():
    assert gen_line_fan(40, 4) == gen_line_fan(40, 4)


def test_line_fan_collinearity_violation_detected():
    P = gen_line_fan(12, 3)
    # move one point onto the line through two others, making 3 collinear
    a, b = P.points[4], P.points[5]
    victim = P.points[-1]
    moved = tuple(2 * y - x for x, y in zip(a, b))
    assert moved not in P.points
    bad = PointSet(P.field, 2, tuple(p for p in P.points if p != victim) + (moved,))
    report = validate_construction(bad, ("line-fan", {"n": 12, "s": 3}))
    assert not report.ok
    failed = [name for name, ok, _ in report.constraints_verified if not ok]
    assert failed == ["no 3 collinear"]


def test_separated_grid_90_10():
    P = gen_separated_grid(90, 10)
    assert P.n == 99
    report = validate_construction(P, ("separated-grid", {"n": 90, "m": 10}))
    assert report.ok
    assert report.claimed_lower_bound == 900
    assert report.measured_pi == 990
    min_sq = min(sum((a - b) ** 2 for a, b in zip(p, q))
                 for i, p in enumerate(P.points) for q in P.points[i + 1:])
    assert min_sq >= F(1, 30) ** 2
    Q, R = separated_grid_parts(90, 10)
    assert all(dot(r, q) == F(1, 2) for r, line in zip(R, Q) for q in line)


def test_separated_grid_adjacent_lines_gap():
    Q, _ = separated_grid_parts(90, 10)
    eps = F(1, 30)
    for j in range(len(Q) - 1):
        # first point of every line sits at x = 2/3
        assert Q[j][0][0] == Q[j + 1][0][0] == F(2, 3)
        assert Q[j][0][1] - Q[j + 1][0][1] == 2 * eps


@pytest.mark.parametrize("n, m", [(100, 10), (95, 10), (5, 0)])
def test_separated_grid_bad_params(n, m):
    with pytest.raises(ValueError):
        gen_separated_grid(n, m)


def test_pencil():
    P = gen_pencil(20)
    assert P.n == 21
    report = validate_construction(P, ("pencil", {"k": 20}))
    assert report.ok and report.measured_pi >= 400
    assert report.measured_pi == 423
    # (1,1) sees all 5 line points; (1,0) sees (1,1) and itself; the rest see only (1,1)
    assert validate_construction(gen_pencil(5), ("pencil", {"k": 5})).measured_pi == 25 + 4 + 4
    assert validate_construction(gen_pencil(1), ("pencil", {"k": 1})).measured_pi >= 1
    with pytest.raises(ValueError):
        gen_pencil(0)


def test_highdim_cubic():
    P = gen_highdim_cubic(4, 5)
    assert P.n == 8 and P.dim == 3
    report = validate_construction(P, ("highdim-cubic", {"a_count": 4, "beta": 5}))
    # (a,0,5) rows: 4 * 4^2; (0,a,1) rows add a*a' = 4 pairs: 5^2 + 5^2 + 4^2 + 5^2
    assert report.measured_pi == 64 + 91 == naive_pi(P.points, 5, 5)
    assert validate_construction(gen_highdim_cubic(1, 5),
                                 ("highdim-cubic", {"a_count": 1, "beta": 5})).measured_pi >= 1
    with pytest.raises(ValueError):
        gen_highdim_cubic(4, 0)


def test_generate_dispatch():
    assert generate("pencil", k=3) == gen_pencil(3)
    with pytest.raises(ValueError):
        generate("spiral", n=3)
    with pytest.raises(ValueError):
        validate_construction(gen_pencil(3), ("spiral", {}))


def test_construction_error_is_runtime_error():
    assert issubclass(ConstructionError, RuntimeError)
