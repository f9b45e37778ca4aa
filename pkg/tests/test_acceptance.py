"""Acceptance battery. Each test appends one PASS/FAIL line, printed at the end of the run."""

import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, random_constants, random_nonzero, random_pointset
from oracles import max_points_on_line, naive_pi
from dotpairs.constructions import (gen_highdim_cubic, gen_line_fan, gen_pencil,
                                    gen_separated_grid, separated_grid_parts,
                                    validate_construction)
from dotpairs.counting import count_pi_bruteforce, count_pi_fast
from dotpairs.geometry import dot, dual_hyperplane, flat_stats
from dotpairs.scalars import FieldSpec
from dotpairs.verifier import (PASS, MajorantPair, check_general_highdim, check_general_plane,
                               check_incidence_lemma, check_majorant_lemma, check_s2n,
                               covert_senger_sweep, envelope_trend, full_grid)

F = Fraction
BATTERY_FIELDS = [FieldSpec.rational(), FieldSpec.prime(3), FieldSpec.prime(7),
                  FieldSpec.prime(101)]


def record(number, title, ok, detail=""):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}")
    return ok


@pytest.fixture(scope="module")
def battery():
    rng = np.random.default_rng(500)
    instances = []
    for i in range(520):
        field = BATTERY_FIELDS[i % len(BATTERY_FIELDS)]
        d = 2 + (i // len(BATTERY_FIELDS)) % 2
        P = random_pointset(rng, field, d, int(rng.integers(0, 31)))
        alpha, beta = random_constants(rng, P)
        instances.append((P, alpha, beta))
    return instances


def test_01_oracle_equivalence(battery):
    start = time.perf_counter()
    mismatches = [(P, a, b) for P, a, b in battery
                  if count_pi_fast(P, a, b).total != count_pi_bruteforce(P, a, b).total]
    elapsed = time.perf_counter() - start
    ok = record(1, "fast counter equals brute force", not mismatches and elapsed < 60,
                f"{len(battery)} instances, {len(mismatches)} mismatches, {elapsed:.1f}s")
    assert ok


@pytest.mark.filterwarnings("ignore::dotpairs.geometry.OriginDualWarning")
def test_02_explicit_constants(battery):
    failures, checked = [], 0
    for P, a, b in battery:
        stats = flat_stats(P)
        pi = count_pi_fast(P, a, b).total
        reports = [check_incidence_lemma(P, a, b, pi=pi), check_s2n(P, a, b, stats=stats, pi=pi)]
        if P.dim == 2:
            reports.append(check_general_plane(P, a, b, stats=stats, pi=pi))
        else:
            reports.append(check_general_highdim(P, a, b, stats=stats, pi=pi)[0])
        for r in reports:
            checked += 1
            if r.verdict not in (PASS, "report_only"):
                failures.append((r.bound_id, P.n, str(P.field)))
    ok = record(2, "explicit-constant bounds hold", not failures,
                f"{checked} checks, {len(failures)} failures")
    assert ok, failures[:5]


@pytest.mark.parametrize("n, s, bound", [(12, 3, 16), (40, 4, 90), (100, 10, 810)])
def test_03_line_fan(n, s, bound):
    P = gen_line_fan(n, s)
    report = validate_construction(P, ("line-fan", {"n": n, "s": s}))
    pi = count_pi_bruteforce(P, F(1), F(1)).total
    claimed = F(n * (s - 1) ** 2, s)
    no_s_collinear = max_points_on_line(list(P.points)) < s
    ok = record(3, f"line fan n={n} s={s}",
                report.ok and no_s_collinear and pi >= claimed and int(claimed) == bound,
                f"Pi={pi} >= {bound}, max collinear {flat_stats(P).s_star} < {s}")
    assert ok


def test_04_separated_grid():
    start = time.perf_counter()
    P = gen_separated_grid(90, 10)
    Q, R = separated_grid_parts(90, 10)
    pts = P.points
    min_sq = min(sum((x - y) ** 2 for x, y in zip(p, q))
                 for i, p in enumerate(pts) for q in pts[i + 1:])
    products_ok = all(dot(r, q) == F(1, 2) for r, line in zip(R, Q) for q in line)
    pi = count_pi_fast(P, F(1, 2), F(1, 2)).total
    elapsed = time.perf_counter() - start
    ok = record(4, "separated grid n=90 m=10",
                P.n == 99 and min_sq >= F(1, 900) and products_ok and pi >= 900
                and elapsed < 10,
                f"|P|={P.n}, min dist^2={min_sq}, Pi={pi} >= 900, {elapsed:.2f}s")
    assert ok


def test_05_small_examples():
    pencil = gen_pencil(20)
    pi_pencil = count_pi_fast(pencil, F(1), F(1)).total
    cubic = gen_highdim_cubic(4, 5)
    pi_cubic = count_pi_fast(cubic, F(5), F(5)).total
    oracle_ok = (pi_pencil == naive_pi(pencil.points, 1, 1)
                 and pi_cubic == naive_pi(cubic.points, 5, 5))
    ok = record(5, "pencil and cubic examples", pi_pencil >= 400 and pi_cubic >= 64 and oracle_ok,
                f"pencil Pi={pi_pencil} >= 400, cubic Pi={pi_cubic} >= 64")
    assert ok


def test_06_full_grid():
    got, expected = [], []
    for q in (3, 5, 7):
        G = full_grid(q)
        got.append(count_pi_fast(G, G.field.one, G.field.one).total)
        expected.append((q * q - 1) * q * q)
    G3 = full_grid(3)
    brute = count_pi_bruteforce(G3, G3.field.one, G3.field.one).total
    ok = record(6, "full grid closed form", got == expected == [72, 600, 2352] and brute == 72,
                f"fast {got}, brute q=3 {brute}")
    assert ok


def test_07_majorant():
    rng = np.random.default_rng(7)
    bad = 0
    for _ in range(1000):
        s = int(rng.integers(1, 15))
        f = sorted(rng.integers(0, 50, size=s).tolist(), reverse=True)
        g = f[:]
        # raise g by a non-increasing slack so it stays non-increasing and above f
        slack = sorted(rng.integers(0, 20, size=s).tolist(), reverse=True)
        g = [x + y for x, y in zip(g, slack)]
        if check_majorant_lemma(MajorantPair(f, g, s)).verdict != PASS:
            bad += 1
    ok = record(7, "majorant lemma", bad == 0, f"1000 pairs, {bad} violations")
    assert ok


def test_08_duality_injective():
    rng = np.random.default_rng(8)
    collisions = 0
    for i in range(200):
        field = BATTERY_FIELDS[i % len(BATTERY_FIELDS)]
        P = random_pointset(rng, field, 2 + i % 2, int(rng.integers(1, 31)), allow_origin=False)
        gamma = random_nonzero(rng, field)
        keys = {dual_hyperplane(p, gamma).key() for p in P.points}
        collisions += P.n - len(keys)
    ok = record(8, "dual hyperplanes distinct", collisions == 0,
                f"200 sets, {collisions} collisions")
    assert ok


def test_09_covert_senger():
    start = time.perf_counter()
    rows = covert_senger_sweep(31, [800], 5, seed=2026)
    elapsed = time.perf_counter() - start
    mean = rows[-1].params["mean_ratio"]
    ok = record(9, "random F_31^2 trend", 0.8 <= mean <= 1.2 and elapsed < 120,
                f"mean Pi q^2/n^3 = {mean:.4f}, {elapsed:.1f}s")
    assert ok


def test_10_envelope_monitoring():
    rows = envelope_trend([60, 120, 240])
    ratios = [float(r.ratio) for r in rows]
    spread = max(ratios) / min(ratios)
    ok = record(10, "line-fan envelope ratios", spread <= 4,
                "ratios " + ", ".join(f"{x:.4f}" for x in ratios) + f", max/min {spread:.3f}")
    assert ok
