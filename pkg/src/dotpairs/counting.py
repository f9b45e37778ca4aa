"""Counting ordered triples (p, q, r) in P^3 with p.q = alpha and p.r = beta.

Two independent routes: a cubic brute-force oracle over every triple, and the
quadratic per-point decomposition |pi(p)| = wt_alpha(p) * wt_beta(p).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

import numpy as np

from .geometry import PointSet, dot
from .scalars import MixedFieldError, Scalar


class TripleLimitExceeded(RuntimeError):
    pass


@dataclass
class PiCount:
    total: int
    alpha: Scalar
    beta: Scalar
    method: str


@dataclass
class PiDecomposition:
    alpha: Scalar
    beta: Scalar
    per_point: dict = field(default_factory=dict)  # point -> (wt_alpha, wt_beta, |pi(p)|)
    total: int = 0
    method: str = "fast"


def _check_constants(P: PointSet, alpha, beta):
    for name, c in (("alpha", alpha), ("beta", beta)):
        if not P.field.contains(c):
            raise MixedFieldError(f"{name}={c!r} is not an element of {P.field}")
        if c == 0:
            raise ValueError(f"{name} must be nonzero")


def count_pi_bruteforce(P: PointSet, alpha: Scalar, beta: Scalar) -> PiCount:
    """Check every one of the n^3 ordered triples."""
    _check_constants(P, alpha, beta)
    pts = P.points
    table = [[dot(p, q) for q in pts] for p in pts]
    total = 0
    for row in table:
        for pq in row:
            for pr in row:
                if pq == alpha and pr == beta:
                    total += 1
    return PiCount(total, alpha, beta, "brute")


def _weights_rational(P: PointSet, alpha, beta):
    # scale coordinates by the common denominator L: p.q = c  <=>  (Lp).(Lq) = L^2 c
    L = lcm(*(c.denominator for p in P.points for c in p)) if P.n else 1
    raw = [tuple(c.numerator * (L // c.denominator) for c in p) for p in P.points]
    a, b = alpha * L * L, beta * L * L
    a = a.numerator if a.denominator == 1 else None
    b = b.numerator if b.denominator == 1 else None
    for p in raw:
        wa = wb = 0
        for q in raw:
            v = sum(x * y for x, y in zip(p, q))
            if v == a:
                wa += 1
            if v == b:
                wb += 1
        yield wa, wb


def _weights_prime(P: PointSet, alpha, beta):
    mod = P.field.p
    if P.n == 0:
        return
    if mod * mod * P.dim < 2**62:
        X = np.array([[c.value for c in p] for p in P.points], dtype=np.int64)
        D = (X @ X.T) % mod
        wa = (D == alpha.value).sum(axis=1)
        wb = (D == beta.value).sum(axis=1)
        yield from zip(wa.tolist(), wb.tolist())
        return
    raw = [tuple(c.value for c in p) for p in P.points]
    for p in raw:
        wa = wb = 0
        for q in raw:
            v = sum(x * y for x, y in zip(p, q)) % mod
            if v == alpha.value:
                wa += 1
            if v == beta.value:
                wb += 1
        yield wa, wb


def count_pi_fast(P: PointSet, alpha: Scalar, beta: Scalar) -> PiDecomposition:
    """Sum over p of wt(h_alpha(p)) * wt(h_beta(p)); O(n^2) dot products."""
    _check_constants(P, alpha, beta)
    weights = _weights_rational if P.field.is_rational else _weights_prime
    dec = PiDecomposition(alpha, beta)
    for p, (wa, wb) in zip(P.points, weights(P, alpha, beta)):
        dec.per_point[p] = (wa, wb, wa * wb)
        dec.total += wa * wb
    return dec


def dual_weights(P: PointSet, gamma: Scalar) -> list:
    """wt(h_gamma(p)) for each p in P, in point order."""
    _check_constants(P, gamma, gamma)
    weights = _weights_rational if P.field.is_rational else _weights_prime
    return [wa for wa, _ in weights(P, gamma, gamma)]


def enumerate_pi_triples(P: PointSet, alpha: Scalar, beta: Scalar,
                         limit: int = 10**6, override: bool = False) -> list:
    if P.n ** 3 > limit and not override:
        raise TripleLimitExceeded(f"n^3 = {P.n ** 3} exceeds limit {limit}")
    _check_constants(P, alpha, beta)
    pts = P.points
    return [(p, q, r) for p in pts for q in pts if dot(p, q) == alpha
            for r in pts if dot(p, r) == beta]


def scale_points(P: PointSet, lam: Scalar) -> PointSet:
    if lam == 0:
        raise ValueError("scale factor must be nonzero")
    return P.map(lambda p: tuple(lam * c for c in p))


__all__ = [
    "PiCount",
    "PiDecomposition",
    "TripleLimitExceeded",
    "count_pi_bruteforce",
    "count_pi_fast",
    "dual_weights",
    "enumerate_pi_triples",
    "scale_points",
]
