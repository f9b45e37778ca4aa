"""Explicit-constant checks and ratio reports against the O(.) envelopes.

Only inequalities with stated constants get a pass/fail verdict. The rest are
reported as lhs/envelope ratios (verdict ``report_only``) since their implied
constants are unknown; inapplicable ones come back as ``skipped`` with a reason.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .constructions import gen_line_fan
from .counting import count_pi_fast, dual_weights
from .geometry import (FlatStats, PointSet, dual_family, dual_richness_histogram,
                       flat_stats, k2t_free_check, spanned_hyperplanes)
from .scalars import FieldSpec

PASS, FAIL, REPORT_ONLY, SKIPPED = "pass", "fail", "report_only", "skipped"
HARD_VERDICTS = (PASS, FAIL)

CSV_COLUMNS = ["bound_id", "n", "d", "field", "s", "t", "lhs", "rhs", "ratio", "verdict",
               "seed", "trial"]

# placeholder exponent for the O(s n^{3/2 - eps}) envelope; not a known constant
DEFAULT_FP2_EPSILON = 0.01
DEFAULT_RD_EPSILON = 0.01


@dataclass
class BoundReport:
    bound_id: str
    lhs: int
    rhs: object  # int / Fraction for explicit bounds, float for envelopes, None if skipped
    verdict: str
    n: int = 0
    d: int = 0
    field: str = ""
    s: int | None = None
    t: int | None = None
    seed: int | None = None
    trial: int | None = None
    note: str = ""
    params: dict = dc_field(default_factory=dict)

    @property
    def ratio(self):
        if self.rhs is None:
            return None
        if self.rhs == 0:
            return Fraction(0) if self.lhs == 0 else math.inf
        if isinstance(self.rhs, float):
            return self.lhs / self.rhs
        return Fraction(self.lhs) / self.rhs

    @property
    def is_hard(self) -> bool:
        return self.verdict in HARD_VERDICTS

    def to_dict(self) -> dict:
        r = self.ratio
        out = {
            "bound_id": self.bound_id, "n": self.n, "d": self.d, "field": self.field,
            "s": self.s, "t": self.t, "lhs": self.lhs, "rhs": _json_num(self.rhs),
            "ratio": None if r is None else float(r), "verdict": self.verdict,
            "seed": self.seed, "trial": self.trial, "note": self.note,
        }
        if isinstance(r, Fraction):
            out["ratio_exact"] = str(r)
        if self.params:
            out["params"] = {k: _json_num(v) for k, v in self.params.items()}
        return out

    def csv_row(self) -> list:
        r = self.ratio
        return [self.bound_id, self.n, self.d, self.field, _cell(self.s), _cell(self.t),
                self.lhs, _cell(self.rhs), _cell(None if r is None else float(r)),
                self.verdict, _cell(self.seed), _cell(self.trial)]


def _json_num(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    if isinstance(v, (int, float, str)) or v is None:
        return v
    return str(v)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def reports_to_json(reports: Sequence[BoundReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"


def _sort_key(r: BoundReport):
    return (r.bound_id, r.n, -1 if r.seed is None else r.seed, -1 if r.trial is None else r.trial)


def reports_to_csv(reports: Sequence[BoundReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in sorted(reports, key=_sort_key):
        w.writerow(r.csv_row())
    return buf.getvalue()


@dataclass
class MajorantPair:
    """Sequences f_1..f_s and g_1..g_s (index 0 holds k = 1); zero beyond the horizon."""

    f: Sequence[int]
    g: Sequence[int]
    s: int | None = None

    def __post_init__(self):
        horizon = max(len(self.f), len(self.g)) if self.s is None else self.s
        if len(self.f) > horizon or len(self.g) > horizon:
            raise ValueError("sequence longer than horizon")
        self.f = list(self.f) + [0] * (horizon - len(self.f))
        self.g = list(self.g) + [0] * (horizon - len(self.g))
        self.s = horizon
        for name, seq in (("f", self.f), ("g", self.g)):
            if any(v < 0 for v in seq):
                raise ValueError(f"{name} has negative entries")
            if any(a < b for a, b in zip(seq, seq[1:])):
                raise ValueError(f"{name} is not non-increasing")
        if any(a > b for a, b in zip(self.f, self.g)):
            raise ValueError("f exceeds g somewhere")


def k_squared_sum(seq: Sequence[int]) -> int:
    """sum_{k=1..s} k^2 (seq_k - seq_{k+1}), with seq_{s+1} = 0."""
    padded = list(seq) + [0]
    return sum(k * k * (padded[k - 1] - padded[k]) for k in range(1, len(seq) + 1))


def _base(P: PointSet, stats: FlatStats | None = None) -> dict:
    ctx = {"n": P.n, "d": P.dim, "field": str(P.field)}
    if stats is not None:
        ctx["s"] = stats.s
        ctx["t"] = stats.t
    return ctx


def _pi(P, alpha, beta, pi):
    return count_pi_fast(P, alpha, beta).total if pi is None else pi


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


# ---------------------------------------------------------------- explicit constants

def check_incidence_lemma(P: PointSet, alpha, beta, pi: int | None = None) -> BoundReport:
    """Pi <= 2 sum_k k^2 f_{=k} for the heavier dual family, strict when Pi > 0."""
    pi = _pi(P, alpha, beta, pi)
    wa, wb = dual_weights(P, alpha), dual_weights(P, beta)
    sa, sb = sum(w * w for w in wa), sum(w * w for w in wb)
    gamma, heavier = (alpha, sa) if sa >= sb else (beta, sb)
    hist = dual_richness_histogram(P, gamma)
    rhs = 2 * sum(k * k * c for k, c in hist.counts.items())
    consistent = rhs == 2 * heavier
    ok = consistent and pi <= rhs and (pi == 0 or pi < rhs)
    note = "" if consistent else "histogram disagrees with per-point weights"
    return BoundReport("incidence_lemma", pi, rhs, _verdict(ok), note=note,
                       params={"gamma": str(gamma), "sum_wt_alpha_sq": sa,
                               "sum_wt_beta_sq": sb}, **_base(P))


def check_s2n(P: PointSet, alpha, beta, stats: FlatStats | None = None,
              pi: int | None = None) -> BoundReport:
    """Pi < 2 s^2 n with s = s_star + 1."""
    stats = stats or flat_stats(P)
    pi = _pi(P, alpha, beta, pi)
    if P.n == 0:
        return BoundReport("s2n", pi, 0, REPORT_ONLY, note="empty point set",
                           **_base(P, stats))
    rhs = 2 * stats.s ** 2 * P.n
    return BoundReport("s2n", pi, rhs, _verdict(pi < rhs), **_base(P, stats))


def check_general_plane(P: PointSet, alpha, beta, stats: FlatStats | None = None,
                        pi: int | None = None) -> BoundReport:
    """Pi < min(2 s^2 n, 4 n^2) in the plane."""
    if P.dim != 2:
        raise ValueError("general-plane bound needs d = 2")
    stats = stats or flat_stats(P)
    pi = _pi(P, alpha, beta, pi)
    n = P.n
    rhs = min(2 * stats.s ** 2 * n, 4 * n * n)
    if n == 0:
        return BoundReport("general_plane", pi, rhs, PASS, note="empty point set",
                           **_base(P, stats))
    return BoundReport("general_plane", pi, rhs, _verdict(pi < rhs), **_base(P, stats))


def check_general_highdim(P: PointSet, alpha, beta, stats: FlatStats | None = None,
                          pi: int | None = None) -> list:
    """Hard check of Pi <= 2 s^2 n; Pi / (t n^2) reported for the O(t n^2) part."""
    stats = stats or flat_stats(P)
    pi = _pi(P, alpha, beta, pi)
    n = P.n
    base = _base(P, stats)
    hard_rhs = 2 * stats.s ** 2 * n
    first = BoundReport("general_highdim_s2n", pi, hard_rhs, _verdict(pi <= hard_rhs),
                        note="empty point set" if n == 0 else "", **base)
    second = BoundReport("general_highdim_tn2", pi, stats.t * n * n, REPORT_ONLY, **base)
    return [first, second]


def check_majorant_lemma(pair: MajorantPair) -> BoundReport:
    lhs, rhs = k_squared_sum(pair.f), k_squared_sum(pair.g)
    return BoundReport("majorant_lemma", lhs, rhs, _verdict(lhs <= rhs), s=pair.s,
                       params={"f": list(pair.f), "g": list(pair.g)})


def check_no_k2t(P: PointSet, gamma, stats: FlatStats | None = None) -> BoundReport:
    """Dual hyperplanes pairwise share fewer than t = t_star + 1 points."""
    stats = stats or flat_stats(P)
    H = dual_family(P, gamma)
    ok = k2t_free_check(H, P, stats.t)
    return BoundReport("no_k2t", len(H), stats.t, _verdict(ok),
                       note="lhs = |H|, rhs = t", **_base(P, stats))


# ---------------------------------------------------------------- envelopes

def _min_distance(P: PointSet) -> float | None:
    best = None
    pts = P.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d2 = sum((a - b) ** 2 for a, b in zip(pts[i], pts[j]))
            if best is None or d2 < best:
                best = d2
    return None if best is None else math.sqrt(best)


def envelope_ratios(P: PointSet, alpha, beta, eps_fp2: float = DEFAULT_FP2_EPSILON,
                    eps_rd: float = DEFAULT_RD_EPSILON, stats: FlatStats | None = None,
                    pi: int | None = None, theorems: Sequence[str] | None = None) -> list:
    """One report_only row per theorem with an O(.) conclusion, or a skipped row."""
    stats = stats or flat_stats(P)
    pi = _pi(P, alpha, beta, pi)
    n, d, s, t = P.n, P.dim, stats.s, stats.t
    base = _base(P, stats)
    rational = P.field.is_rational
    p = P.field.characteristic
    wanted = theorems or ("R2", "density", "Fp2", "F3Rudnev", "Rd")
    out = []

    def row(name, envelope=None, reason="", **params):
        if envelope is None:
            out.append(BoundReport(f"envelope_{name}", pi, None, SKIPPED, note=reason, **base))
        else:
            out.append(BoundReport(f"envelope_{name}", pi, float(envelope), REPORT_ONLY,
                                   note=reason, params=params, **base))

    for name in wanted:
        if name == "R2":
            if d != 2 or not rational:
                row(name, reason="needs points in Q^2")
            else:
                row(name, n ** (5 / 3) + s * n)
        elif name == "density":
            inside = rational and all(0 <= c <= 1 for q in P.points for c in q)
            if d != 2 or not rational or n < 2 or not inside:
                row(name, reason="needs >= 2 rational points in [0,1]^2")
            else:
                eps = _min_distance(P)
                row(name, n ** (5 / 3) + n / eps, epsilon=eps)
        elif name == "Fp2":
            if d != 2 or rational:
                row(name, reason="needs points in F_p^2")
            elif not n < p:
                row(name, reason=f"needs n < p (n={n}, p={p})")
            else:
                row(name, s * n ** (1.5 - eps_fp2), epsilon=eps_fp2,
                    reason="epsilon is a placeholder, not a known constant")
        elif name == "F3Rudnev":
            if d != 3:
                row(name, reason="needs d = 3")
            elif p == 2:
                row(name, reason="p != 2 required")
            elif p and n > p * p:
                row(name, reason=f"n = O(p^2) read as n <= p^2 (n={n}, p={p})")
            else:
                log_term = max(1.0, math.log(s / math.sqrt(n))) if n else 1.0
                note = "n = O(p^2) read as n <= p^2" if p else ""
                row(name, n * n * log_term + s * t * n, reason=note)
        elif name == "Rd":
            if not rational:
                row(name, reason="needs real (rational) coordinates")
            else:
                a = (4 * d - 3) / (2 * d - 1) + eps_rd
                b = (2 * d - 2) / (2 * d - 1) + eps_rd
                row(name, n * t * t + n ** a * t ** b + s * n, epsilon=eps_rd)
        else:
            raise ValueError(f"unknown theorem {name!r}")
    return out


def st_richness_ratio(P: PointSet) -> BoundReport:
    """max_k g'_k / (n^2/k^3 + n/k) over k >= 2, for a rational planar set."""
    if P.dim != 2 or not P.field.is_rational:
        raise ValueError("Szemeredi-Trotter ratio needs points in Q^2")
    n = P.n
    weights = list(spanned_hyperplanes(P).values())
    best = (0.0, 2, 0, 0.0)
    for k in range(2, max(weights, default=1) + 1):
        gk = sum(1 for w in weights if w >= k)
        env = n * n / k ** 3 + n / k
        ratio = gk / env
        if ratio > best[0]:
            best = (ratio, k, gk, env)
    _, k, gk, env = best
    return BoundReport("st_richness", gk, env if env else None,
                       REPORT_ONLY if env else SKIPPED, n=n, d=2, field=str(P.field),
                       params={"k": k}, note=f"worst k = {k}" if env else "no spanned lines")


# ---------------------------------------------------------------- sweeps

def full_grid(q: int) -> PointSet:
    F = FieldSpec.prime(q)
    return PointSet.from_ints([(i, j) for i in range(q) for j in range(q)], F,
                              label=f"F_{q}^2")


def covert_senger_sweep(q: int, n_list: Sequence[int], trials: int, seed: int,
                        alpha: int = 1, beta: int = 1) -> list:
    """Pi * q^2 / n^3 for uniformly random n-subsets of F_q^2, one row per trial plus the mean."""
    F = FieldSpec.prime(q)
    a, b = F.element(alpha), F.element(beta)
    out = []
    for n in n_list:
        if n > q * q or n < 1:
            raise ValueError(f"need 1 <= n <= q^2, got n={n}, q={q}")
        ratios = []
        for trial in range(trials):
            rng = np.random.default_rng([seed, n, trial])
            idx = sorted(rng.choice(q * q, size=n, replace=False).tolist())
            P = PointSet.from_ints([(i // q, i % q) for i in idx], F, dim=2)
            pi = count_pi_fast(P, a, b).total
            rhs = Fraction(n ** 3, q * q)
            ratios.append(Fraction(pi) / rhs)
            out.append(BoundReport("covert_senger", pi, rhs, REPORT_ONLY, n=n, d=2,
                                   field=str(F), seed=seed, trial=trial))
        mean = sum(ratios, Fraction(0)) / len(ratios) if ratios else Fraction(0)
        out.append(BoundReport("covert_senger_mean", sum(r.lhs for r in out[-trials:]),
                               Fraction(n ** 3 * trials, q * q), REPORT_ONLY, n=n, d=2,
                               field=str(F), seed=seed, note=f"mean ratio {float(mean):.6f}",
                               params={"mean_ratio": float(mean)}))
    return out


def nearest_divisor(n: int, target: float) -> int:
    """Divisor of n closest to target (larger wins ties), at least 2."""
    divs = [k for k in range(2, n + 1) if n % k == 0]
    return min(divs, key=lambda k: (abs(k - target), -k))


def envelope_trend(n_list: Sequence[int], s_exponent: float = 2 / 3) -> list:
    """Line-fan sets with s ~ n^exponent, Pi_{1,1} against n^{5/3} + s n."""
    one = Fraction(1)
    out = []
    for n in n_list:
        s_param = nearest_divisor(n, n ** s_exponent)
        P = gen_line_fan(n, s_param)
        stats = flat_stats(P)
        pi = count_pi_fast(P, one, one).total
        rows = envelope_ratios(P, one, one, stats=stats, pi=pi, theorems=("R2",))
        for r in rows:
            r.bound_id = "envelope_trend_R2"
            r.params["construction_s"] = s_param
        out.extend(rows)
    return out


def st_ratio_sweep(n_list: Sequence[int]) -> list:
    out = []
    for n in n_list:
        side = math.isqrt(n)
        if side * side != n:
            raise ValueError(f"st-ratio sweep uses sqrt(n) x sqrt(n) grids; {n} is not a square")
        P = PointSet.from_ints([(i, j) for i in range(side) for j in range(side)], dim=2)
        out.append(st_richness_ratio(P))
    return out


def verify_all(P: PointSet, alpha, beta, eps_fp2: float = DEFAULT_FP2_EPSILON,
               eps_rd: float = DEFAULT_RD_EPSILON) -> list:
    """Every applicable check for one point set."""
    stats = flat_stats(P)
    pi = count_pi_fast(P, alpha, beta).total
    reports = [check_incidence_lemma(P, alpha, beta, pi=pi),
               check_s2n(P, alpha, beta, stats=stats, pi=pi)]
    if P.dim == 2:
        reports.append(check_general_plane(P, alpha, beta, stats=stats, pi=pi))
    reports.extend(check_general_highdim(P, alpha, beta, stats=stats, pi=pi))
    reports.append(check_no_k2t(P, alpha, stats=stats))
    reports.extend(envelope_ratios(P, alpha, beta, eps_fp2, eps_rd, stats=stats, pi=pi))
    if P.dim == 2 and P.field.is_rational and P.n >= 2:
        reports.append(st_richness_ratio(P))
    return reports
