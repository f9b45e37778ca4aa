"""Deterministic lower-bound constructions, each re-validated exactly after generation."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .counting import count_pi_bruteforce, count_pi_fast
from .geometry import PointSet, dot, flat_stats
from .scalars import FieldSpec

BRUTE_FORCE_MAX_N = 60
JITTER_ROUNDS = 8

CONSTRUCTIONS = ("line-fan", "separated-grid", "pencil", "highdim-cubic")


class ConstructionError(RuntimeError):
    """A generated set failed its own validation."""


@dataclass
class ConstructionReport:
    construction: str
    parameters: dict
    claimed_lower_bound: int
    measured_pi: int
    constraints_verified: list = field(default_factory=list)  # (name, passed, witness)

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.constraints_verified)

    def summary(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        lines = [f"{self.construction}({params}): Pi = {self.measured_pi} "
                 f"(claimed >= {self.claimed_lower_bound})"]
        for name, passed, witness in self.constraints_verified:
            lines.append(f"  [{'pass' if passed else 'FAIL'}] {name}: {witness}")
        return "\n".join(lines)


def _measure(P: PointSet, alpha, beta) -> int:
    if P.n <= BRUTE_FORCE_MAX_N:
        return count_pi_bruteforce(P, alpha, beta).total
    return count_pi_fast(P, alpha, beta).total


def _rational(points, dim, label) -> PointSet:
    return PointSet(FieldSpec.rational(), dim, tuple(tuple(Fraction(c) for c in p) for p in points),
                    label)


# ---------------------------------------------------------------- line fan

def _line_fan_points(n: int, s: int, jitter: int) -> list:
    m = n // s
    pts = []
    for i in range(1, m + 1):
        pts.append((Fraction(i), Fraction(i * i)))
    for i in range(1, m + 1):
        for j in range(1, s):
            x = j + Fraction(1, i + 1)
            if jitter:
                x += Fraction(j, (i + 1) ** (jitter + 1) * (s + 1))
            # on the dual line i*x + i^2*y = 1
            pts.append((x, (1 - i * x) / (i * i)))
    return pts


def gen_line_fan(n: int, s: int) -> PointSet:
    """n points, no s collinear, with Pi_{1,1} >= n(s-1)^2/s.

    Q = {(i, i^2)} for i = 1..n/s; each dual line i*x + i^2*y = 1 gets s-1
    extra points. If the exact no-s-collinear check fails, the x-positions are
    perturbed by a fixed schedule before giving up.
    """
    if s < 2:
        raise ValueError("s must be >= 2")
    if n < s or n % s:
        raise ValueError(f"s={s} must divide n={n} with n/s >= 1")
    for jitter in range(JITTER_ROUNDS):
        pts = _line_fan_points(n, s, jitter)
        if len(set(pts)) != n:
            continue
        P = _rational(pts, 2, f"line-fan n={n} s={s}")
        if flat_stats(P).s_star < s:
            report = validate_construction(P, ("line-fan", {"n": n, "s": s}))
            if not report.ok:
                raise ConstructionError(report.summary())
            return P
    raise ConstructionError(f"line-fan(n={n}, s={s}): jitter schedule exhausted")


# ---------------------------------------------------------------- separated grid

def _check_separated_params(n: int, m: int):
    if m < 1:
        raise ValueError("m must be >= 1")
    if n < 1 or n % m:
        raise ValueError(f"m={m} must divide n={n}")
    if not n < m * m:
        raise ValueError(f"need n < m^2 (epsilon < n^(-1/2)/3), got n={n}, m={m}")


def separated_grid_parts(n: int, m: int):
    """Lines' point sets Q_j and the points r_j, for j = 1..n/m (eps = 1/(3m))."""
    _check_separated_params(n, m)
    eps = Fraction(1, 3 * m)
    Q, R = [], []
    for j in range(1, n // m + 1):
        slope = -3 * eps * j  # line through (0,1) and (1, 1 - 3*eps*j)
        Q.append([(x, 1 + slope * x) for x in (Fraction(2, 3) + k * eps for k in range(m))])
        R.append((3 * eps * j / 2, Fraction(1, 2)))
    return Q, R


def gen_separated_grid(n: int, m: int) -> PointSet:
    """n + n/m points in [0,1]^2, pairwise at least 1/(3m) apart, Pi_{1/2,1/2} >= n*m."""
    Q, R = separated_grid_parts(n, m)
    pts = [q for line in Q for q in line] + R
    P = _rational(pts, 2, f"separated-grid n={n} m={m}")
    report = validate_construction(P, ("separated-grid", {"n": n, "m": m}))
    if not report.ok:
        raise ConstructionError(report.summary())
    return P


# ---------------------------------------------------------------- small examples

def gen_pencil(k: int) -> PointSet:
    """(1,1) together with k points on x + y = 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    pts = [(1, 1)] + [(j, 1 - j) for j in range(1, k + 1)]
    P = _rational(pts, 2, f"pencil k={k}")
    report = validate_construction(P, ("pencil", {"k": k}))
    if not report.ok:
        raise ConstructionError(report.summary())
    return P


def gen_highdim_cubic(a_count: int, beta=5) -> PointSet:
    """Points (a,0,beta) and (0,a,1) for a = 1..a_count in Q^3."""
    beta = Fraction(beta)
    if beta == 0:
        raise ValueError("beta must be nonzero")
    if a_count < 1:
        raise ValueError("a_count must be >= 1")
    A = range(1, a_count + 1)
    pts = [(a, 0, beta) for a in A] + [(0, a, 1) for a in A]
    P = _rational(pts, 3, f"highdim-cubic a_count={a_count} beta={beta}")
    report = validate_construction(P, ("highdim-cubic", {"a_count": a_count, "beta": beta}))
    if not report.ok:
        raise ConstructionError(report.summary())
    return P


# ---------------------------------------------------------------- validation

def _sq_dist(p, q):
    return sum((a - b) ** 2 for a, b in zip(p, q))


def validate_construction(P: PointSet, spec) -> ConstructionReport:
    """Re-check every constraint a construction promises, exactly."""
    name, params = spec
    params = dict(params)
    checks = []
    if name == "line-fan":
        n, s = params["n"], params["s"]
        claimed = n * (s - 1) ** 2 // s
        alpha = beta = Fraction(1)
        stats = flat_stats(P)
        checks.append(("size", P.n == n, P.n))
        checks.append((f"no {s} collinear", stats.s_star < s, f"s_star={stats.s_star}"))
    elif name == "separated-grid":
        n, m = params["n"], params["m"]
        eps = Fraction(1, 3 * m)
        claimed = n * m
        alpha = beta = Fraction(1, 2)
        checks.append(("size", P.n == n + n // m, P.n))
        inside = all(0 <= c <= 1 for p in P.points for c in p)
        checks.append(("inside [0,1]^2", inside, ""))
        min_sq = min((_sq_dist(p, q) for p, q in combinations(P.points, 2)), default=None)
        checks.append(("pairwise distance >= eps",
                       min_sq is None or min_sq >= eps * eps, f"min squared distance {min_sq}"))
        Q, R = separated_grid_parts(n, m)
        pset = set(P.points)
        bad = [(r, q) for r, line in zip(R, Q) for q in line
               if q in pset and r in pset and dot(r, q) != alpha]
        present = all(q in pset for line in Q for q in line) and all(r in pset for r in R)
        checks.append(("r_j . q = 1/2 on every line", present and not bad,
                       f"{len(bad)} violations"))
    elif name == "pencil":
        k = params["k"]
        claimed = k * k
        alpha = beta = Fraction(1)
        apex = (Fraction(1), Fraction(1))
        on_line = sum(1 for p in P.points if p[0] + p[1] == 1)
        checks.append(("apex (1,1) present", apex in P.points, ""))
        checks.append(("k points on x + y = 1", on_line >= k, on_line))
    elif name == "highdim-cubic":
        a_count, b = params["a_count"], Fraction(params["beta"])
        claimed = a_count ** 3
        alpha = beta = b
        checks.append(("size", P.n == 2 * a_count, P.n))
    else:
        raise ValueError(f"unknown construction {name!r}")
    measured = _measure(P, alpha, beta)
    checks.append(("Pi lower bound", measured >= claimed, f"{measured} >= {claimed}"))
    return ConstructionReport(name, params, claimed, measured, checks)


def generate(name: str, **params) -> PointSet:
    gens = {
        "line-fan": lambda: gen_line_fan(params["n"], params["s"]),
        "separated-grid": lambda: gen_separated_grid(params["n"], params["m"]),
        "pencil": lambda: gen_pencil(params["k"]),
        "highdim-cubic": lambda: gen_highdim_cubic(params["a_count"], params.get("beta", 5)),
    }
    if name not in gens:
        raise ValueError(f"unknown construction {name!r}")
    return gens[name]()
