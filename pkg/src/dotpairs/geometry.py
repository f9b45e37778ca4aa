"""Points, hyperplanes, canonical flat keys and richness statistics.

Everything here is exact. A flat (affine subspace) is identified by the reduced
row-echelon form of the augmented system ``[A | b]`` whose solution set it is;
that row space is determined by the flat alone, so equal keys mean equal flats.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

from .scalars import FieldSpec, MixedFieldError, Scalar

Point = tuple  # tuple of Scalars


class DimensionMismatch(ValueError):
    pass


class OriginDualWarning(UserWarning):
    """The origin has no dual hyperplane; it is counted with weight 0."""


@dataclass(frozen=True)
class PointSet:
    field: FieldSpec
    dim: int
    points: tuple = ()
    label: str = ""

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError(f"dimension must be >= 2, got {self.dim}")
        pts = []
        for p in self.points:
            p = tuple(self.field.element(c) if not self.field.contains(c) else c for c in p)
            if len(p) != self.dim:
                raise DimensionMismatch(f"point {p} is not {self.dim}-dimensional")
            pts.append(p)
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate points in point set")
        object.__setattr__(self, "points", tuple(pts))

    @classmethod
    def from_ints(cls, coords: Iterable[Sequence], field: FieldSpec | None = None,
                  dim: int | None = None, label: str = "") -> "PointSet":
        """Convenience constructor from int/Fraction coordinates."""
        field = field or FieldSpec.rational()
        pts = [tuple(field.element(c) for c in p) for p in coords]
        if dim is None:
            if not pts:
                raise ValueError("dim required for an empty point set")
            dim = len(pts[0])
        return cls(field, dim, tuple(pts), label)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def n(self) -> int:
        return len(self.points)

    def has_origin(self) -> bool:
        return any(all(c == 0 for c in p) for p in self.points)

    def map(self, fn, label: str | None = None) -> "PointSet":
        return PointSet(self.field, self.dim, tuple(fn(p) for p in self.points),
                        self.label if label is None else label)


@dataclass(frozen=True)
class Hyperplane:
    """The solution set ``{x : normal . x = offset}``."""

    normal: tuple
    offset: Scalar

    def __post_init__(self):
        if all(c == 0 for c in self.normal):
            raise ValueError("hyperplane normal must be nonzero")

    @property
    def dim(self) -> int:
        return len(self.normal)

    def contains(self, x: Point) -> bool:
        return dot(self.normal, x) == self.offset

    def key(self) -> "FlatKey":
        row = list(self.normal) + [self.offset]
        return flat_key_from_equations([row], len(self.normal))


@dataclass(frozen=True)
class FlatKey:
    """Canonical encoding of an affine flat: integer RREF rows of ``[A | b]``.

    ``rows == ()`` is the whole ambient space.
    """

    ambient_dim: int
    field_tag: str
    rows: tuple

    @property
    def flat_dim(self) -> int:
        return self.ambient_dim - len(self.rows)


@dataclass
class FlatStats:
    s_star: int
    t_star: int
    s_witness: FlatKey | None = None
    t_witness: FlatKey | None = None

    @property
    def s(self) -> int:
        """Smallest s with 'no s points on a hyperplane'."""
        return self.s_star + 1

    @property
    def t(self) -> int:
        return self.t_star + 1


@dataclass
class RichnessHistogram:
    kind: str  # "dual_f" or "all_g"
    n: int
    counts: dict = field(default_factory=dict)
    capped: bool = False
    infinite_detected: bool = False
    k_min: int = 0
    line_max: int = 0  # all_g, d=3: most points on a line

    def at_least(self, k: int) -> int | float:
        """f_k (dual) or g'_k (spanned; ``inf`` when a k-rich line exists in d=3)."""
        if self.kind == "all_g":
            if k < self.k_min:
                raise ValueError(f"g'_k only enumerated for k >= {self.k_min}")
            if self.infinite_detected and k <= self.line_max:
                return float("inf")
        return sum(c for w, c in self.counts.items() if w >= k)

    def exactly(self, k: int) -> int:
        if self.kind == "all_g":
            return self.g(k) - self.g(k + 1)
        return self.counts.get(k, 0)

    def g(self, k: int) -> int:
        """Capped count min(g'_k, n)."""
        v = self.at_least(k)
        return int(min(v, self.n))

    def max_weight(self) -> int:
        return max((w for w, c in self.counts.items() if c), default=0)


def _check_field(P: PointSet, *objs):
    for o in objs:
        for c in o:
            if not P.field.contains(c):
                raise MixedFieldError(f"scalar {c!r} is not in {P.field}")


def dot(p: Sequence, q: Sequence) -> Scalar:
    if len(p) != len(q):
        raise DimensionMismatch(f"dimensions {len(p)} and {len(q)}")
    it = iter(zip(p, q))
    a, b = next(it)
    acc = a * b
    for a, b in it:
        acc = acc + a * b
    return acc


def dual_hyperplane(p: Point, gamma: Scalar) -> Hyperplane:
    if gamma == 0:
        raise ValueError("dual constant must be nonzero")
    if all(c == 0 for c in p):
        raise ValueError("the origin has no dual hyperplane")
    return Hyperplane(tuple(p), gamma)


def hyperplane_weight(h: Hyperplane, P: PointSet) -> int:
    if h.dim != P.dim:
        raise DimensionMismatch(f"hyperplane in dimension {h.dim}, points in {P.dim}")
    _check_field(P, h.normal, (h.offset,))
    return sum(1 for x in P.points if h.contains(x))


def incidence_count(P: PointSet, H: Sequence[Hyperplane]) -> int:
    return sum(hyperplane_weight(h, P) for h in H)


# ---------------------------------------------------------------- linear algebra

def _rref(rows: list) -> tuple[list, list]:
    """Reduced row-echelon form over any exact field; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _nullspace(rows: list, ncols: int, one: Scalar) -> list:
    """Basis (as rows) of ``{v : row . v = 0 for every row}``."""
    red, pivots = _rref(rows)
    zero = one - one
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = [zero] * ncols
        v[f] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][f]
        basis.append(v)
    return basis


def _normalize_row(row: list) -> tuple:
    if isinstance(row[0], Fraction):
        den = lcm(*(x.denominator for x in row))
        ints = [x.numerator * (den // x.denominator) for x in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        ints = [v // g for v in ints] if g else ints
        lead = next((v for v in ints if v), 0)
        if lead < 0:
            ints = [-v for v in ints]
        return tuple(ints)
    return tuple(int(x) for x in row)


def _field_tag(x) -> str:
    return "Q" if isinstance(x, Fraction) else f"F{x.p}"


def flat_key_from_equations(rows: list, ambient_dim: int) -> FlatKey:
    red, _ = _rref(rows)
    tag = _field_tag(rows[0][0]) if rows else "?"
    return FlatKey(ambient_dim, tag, tuple(_normalize_row(r) for r in red))


def _affine_equations(points: Sequence[Point]) -> tuple[list, int]:
    """Equation rows ``[n | n . x0]`` of the affine hull, and its dimension."""
    x0 = points[0]
    d = len(x0)
    one = x0[0] * 0 + 1
    dirs = [[a - b for a, b in zip(x, x0)] for x in points[1:]]
    dirs = [r for r in dirs if any(c != 0 for c in r)]
    red, _ = _rref(dirs)
    normals = _nullspace(red, d, one) if red else [
        [one if i == j else one - one for j in range(d)] for i in range(d)]
    eqs = [n + [dot(n, x0)] for n in normals]
    return eqs, len(red)


def affine_hull_key(points: Sequence[Point]) -> tuple[FlatKey, int]:
    """Canonical key and dimension of the affine hull of one or more points."""
    if not points:
        raise ValueError("affine hull of no points")
    d = len(points[0])
    if any(len(p) != d for p in points):
        raise DimensionMismatch("points of differing dimension")
    tag = _field_tag(points[0][0])
    if any(_field_tag(c) != tag for p in points for c in p):
        raise MixedFieldError("points from different fields")
    eqs, k = _affine_equations(points)
    if not eqs:
        return FlatKey(d, tag, ()), k
    return flat_key_from_equations(eqs, d), k


def affine_dimension(points: Sequence[Point]) -> int:
    """Dimension of the affine hull (-1 for no points)."""
    if not points:
        return -1
    x0 = points[0]
    dirs = [[a - b for a, b in zip(x, x0)] for x in points[1:]]
    dirs = [r for r in dirs if any(c != 0 for c in r)]
    return len(_rref(dirs)[0])


# ---------------------------------------------------------------- statistics

def _integer_coords(P: PointSet) -> tuple[list, int]:
    """Points as int tuples: rationals scaled by their common denominator, residues as-is."""
    if P.field.is_rational:
        L = lcm(*(c.denominator for p in P.points for c in p)) if P.n else 1
        return [tuple(c.numerator * (L // c.denominator) for c in p) for p in P.points], L
    return [tuple(c.value for c in p) for p in P.points], 1


def _pencils(P: PointSet):
    """Yield, for spanned (d-2)-flats F, the spanned hyperplanes through F.

    F is cut out by two affine functionals e1, e2. A point x outside F lies on
    exactly one hyperplane through F, labelled by the projective ratio
    e1(x) : e2(x). For d <= 3 only points after the anchor (in index order)
    are scanned: any two (d = 3) or one (d = 2) points span their line, so every
    flat is visited with its lowest-index points as anchor and maxima over the
    yielded weights are exact, while other visits give lower bounds.

    Yields (anchor indices, |F & P| seen, {label: [count, hyperplane factory]}).
    """
    d = P.dim
    mod = None if P.field.is_rational else P.field.p
    ipts, scale = _integer_coords(P)
    fpts = [tuple(P.field.element(c) for c in p) for p in ipts]
    for anchor in combinations(range(P.n), d - 1):
        eqs, k = _affine_equations([fpts[i] for i in anchor])
        if k != d - 2:
            continue
        (n1, c1), (n2, c2) = [(r[:-1], r[-1]) for r in (_normalize_row(e) for e in eqs)]
        if d <= 3:
            inside, rest = d - 1, ipts[anchor[-1] + 1:]
        else:
            inside, rest = 0, ipts
        groups: dict = {}
        for x in rest:
            e1 = sum(a * b for a, b in zip(n1, x)) - c1
            e2 = sum(a * b for a, b in zip(n2, x)) - c2
            if mod is not None:
                e1 %= mod
                e2 %= mod
            if e1 == 0 and e2 == 0:
                inside += 1
                continue
            if e2 == 0:
                label = None
            elif mod is not None:
                label = e1 * pow(e2, -1, mod) % mod
            else:
                g = gcd(e1, e2) * (1 if e2 > 0 else -1)
                label = (e1 // g, e2 // g)
            if label in groups:
                groups[label][0] += 1
            else:
                groups[label] = [1, (e1, e2)]
        yield anchor, inside, groups, (n1, c1, n2, c2, scale)


def _pencil_hyperplane(P: PointSet, frame, coeffs) -> Hyperplane:
    """Hyperplane e2*f1 - e1*f2 = 0 through the anchor flat, in original coordinates."""
    n1, c1, n2, c2, scale = frame
    e1, e2 = coeffs
    normal = [e2 * a - e1 * b for a, b in zip(n1, n2)]
    offset = e2 * c1 - e1 * c2
    el = P.field.element
    return Hyperplane(tuple(el(v * scale) for v in normal), el(offset))


def flat_stats(P: PointSet) -> FlatStats:
    """Most points on a hyperplane (s_star) and on a (d-2)-plane (t_star)."""
    n, d = P.n, P.dim
    if n == 0:
        return FlatStats(0, 0)
    if affine_dimension(P.points) <= d - 2:
        key, _ = affine_hull_key(P.points)
        return FlatStats(n, n, key, key)
    best_s, best_h = -1, None
    best_t, best_anchor = -1, None
    for anchor, inside, groups, frame in _pencils(P):
        if inside > best_t:
            best_t, best_anchor = inside, anchor
        if groups:
            cnt, coeffs = max(groups.values(), key=lambda g: g[0])
        else:
            cnt, coeffs = 0, (0, 1)  # e1 = 0: a hyperplane through the anchor flat
        if inside + cnt > best_s:
            best_s, best_h = inside + cnt, (frame, coeffs)
    s_key = _pencil_hyperplane(P, *best_h).key()
    t_key = affine_hull_key([P.points[i] for i in best_anchor])[0]
    return FlatStats(best_s, best_t, s_key, t_key)


def dual_richness_histogram(P: PointSet, gamma: Scalar) -> RichnessHistogram:
    """counts[k] = number of points whose dual hyperplane h_gamma(p) holds k points."""
    if gamma == 0:
        raise ValueError("dual constant must be nonzero")
    _check_field(P, (gamma,))
    counts: Counter = Counter()
    for p in P.points:
        if all(c == 0 for c in p):
            warnings.warn("origin in point set: its dual is empty and gets weight 0",
                          OriginDualWarning, stacklevel=2)
            counts[0] += 1
            continue
        counts[sum(1 for q in P.points if dot(p, q) == gamma)] += 1
    return RichnessHistogram("dual_f", P.n, dict(sorted(counts.items())))


def spanned_hyperplanes(P: PointSet) -> dict:
    """Map FlatKey -> weight for every hyperplane spanned by d affinely independent points."""
    out: dict = {}
    if P.n < P.dim or affine_dimension(P.points) < P.dim - 1:
        return out
    for _, inside, groups, frame in _pencils(P):
        for cnt, coeffs in groups.values():
            key = _pencil_hyperplane(P, frame, coeffs).key()
            out[key] = max(out.get(key, 0), inside + cnt)
    return out


def spanned_richness_histogram(P: PointSet, k_min: int) -> RichnessHistogram:
    """Weights of all spanned hyperplanes with at least ``k_min`` points (d = 2 or 3).

    In d = 3 a line holding k points lies in infinitely many planes, so g'_k is
    infinite for every k up to the richest line; ``g`` caps those at n.
    """
    d = P.dim
    if d > 3:
        raise ValueError("spanned histogram supported for d <= 3 only")
    if k_min < 2 or (d == 2 and k_min < d):
        raise ValueError("k_min must be >= 2")
    weights = spanned_hyperplanes(P)
    counts = Counter(w for w in weights.values() if w >= k_min)
    hist = RichnessHistogram("all_g", P.n, dict(sorted(counts.items())), capped=True,
                             k_min=k_min)
    if d == 3 and P.n:
        hist.line_max = flat_stats(P).t_star
        hist.infinite_detected = hist.line_max >= k_min
    return hist


def k2t_free_check(H: Sequence[Hyperplane], P: PointSet, t: int) -> bool:
    """True iff no two hyperplanes of H share ``t`` or more points of P."""
    if t < 1:
        raise ValueError("t must be >= 1")
    keys = [h.key() for h in H]
    if len(set(keys)) != len(keys):
        raise ValueError("duplicate hyperplanes")
    members = [frozenset(i for i, x in enumerate(P.points) if h.contains(x)) for h in H]
    for a, b in combinations(members, 2):
        if len(a & b) >= t:
            return False
    return True


def dual_family(P: PointSet, gamma: Scalar) -> list:
    """Dual hyperplanes h_gamma(p) for every nonzero p in P."""
    return [dual_hyperplane(p, gamma) for p in P.points if any(c != 0 for c in p)]
