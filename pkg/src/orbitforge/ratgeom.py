"""Exact rational convex geometry on finite point sets.

Provides the minimum-norm point of a convex hull (``mcc``), hull membership
certificates, relative-interior tests and extreme points, all over exact
rationals.  Point sets here are tiny (at most the 15 weights of a ternary
quartic), so we enumerate faces exhaustively instead of running an iterative
solver; every answer is exact and comes with a certificate.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from . import _exact


class Vec(tuple):
    """Immutable exact rational vector."""

    def __new__(cls, entries: Iterable):
        return super().__new__(cls, (Fraction(e) for e in entries))

    def __add__(self, other):
        return Vec(a + b for a, b in zip(self, other, strict=True))

    def __sub__(self, other):
        return Vec(a - b for a, b in zip(self, other, strict=True))

    def __neg__(self):
        return Vec(-a for a in self)

    def __mul__(self, scalar):
        s = Fraction(scalar)
        return Vec(a * s for a in self)

    __rmul__ = __mul__

    def dot(self, other) -> Fraction:
        return sum((a * b for a, b in zip(self, other, strict=True)), Fraction(0))

    def norm_sq(self) -> Fraction:
        return self.dot(self)

    @property
    def dim(self) -> int:
        return len(self)

    def __repr__(self):
        return "Vec(%s)" % ", ".join(str(e) for e in self)


def zero_vec(dim: int) -> Vec:
    return Vec([0] * dim)


class PointSet:
    """Ordered set of distinct equal-dimension rational points.

    Order matters: it indexes Gram-matrix rows and coefficient certificates.
    Duplicates are rejected rather than silently merged.
    """

    def __init__(self, points: Iterable):
        pts = tuple(Vec(p) for p in points)
        if not pts:
            raise ValueError("PointSet must be nonempty")
        dim = pts[0].dim
        if any(p.dim != dim for p in pts):
            raise ValueError("points have mixed dimensions")
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate points are not allowed")
        self.points = pts
        self.dim = dim

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __eq__(self, other):
        return isinstance(other, PointSet) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return "PointSet(%r)" % (self.points,)

    def as_set(self) -> frozenset:
        return frozenset(self.points)


def _affinely_independent(points: Sequence[Vec]) -> bool:
    if len(points) <= 1:
        return True
    diffs = [list(p - points[0]) for p in points[1:]]
    return _exact.rank(diffs) == len(diffs)


def _min_norm_in_affine_hull(points: Sequence[Vec]) -> Optional[tuple[Vec, list[Fraction]]]:
    """Minimum-norm point of aff(points) for affinely independent points.

    Returns (point, barycentric coefficients); coefficients may be negative.
    """
    k = len(points)
    # Unknowns: barycentric coefficients.  Conditions: sum = 1 and the point
    # is orthogonal to every direction of the affine hull.
    rows: list[list[Fraction]] = [[Fraction(1)] * k]
    rhs: list[Fraction] = [Fraction(1)]
    p0 = points[0]
    for p in points[1:]:
        d = p - p0
        rows.append([q.dot(d) for q in points])
        rhs.append(Fraction(0))
    lam = _exact.solve(rows, rhs)
    if lam is None:
        return None
    x = zero_vec(points[0].dim)
    for c, p in zip(lam, points):
        x = x + c * p
    return x, lam


def _candidate_subsets(s: PointSet):
    max_size = min(len(s), s.dim + 1)
    for size in range(1, max_size + 1):
        yield from combinations(s.points, size)


def mcc(s: PointSet) -> Vec:
    """Minimum-norm point of the convex hull of ``s``, exactly.

    Enumerates affinely independent subsets; the unique minimizer is the
    subset minimizer that has nonnegative barycentric coordinates and passes
    the global variational inequality <x, p - x> >= 0 for every p in s.
    """
    for subset in _candidate_subsets(s):
        if not _affinely_independent(subset):
            continue
        sol = _min_norm_in_affine_hull(subset)
        if sol is None:
            continue
        x, lam = sol
        if any(c < 0 for c in lam):
            continue
        xx = x.norm_sq()
        if all(x.dot(p) >= xx for p in s):
            return x
    raise RuntimeError("mcc: no optimal face found (cannot happen)")


def barycentric(s: PointSet, p) -> Optional[list[Fraction]]:
    """Nonnegative coefficients summing to 1 with sum c_i s_i = p, or None."""
    p = Vec(p)
    if p.dim != s.dim:
        raise ValueError("dimension mismatch")
    a_eq = [[Fraction(1)] * len(s)]
    b_eq = [Fraction(1)]
    for coord in range(s.dim):
        a_eq.append([q[coord] for q in s])
        b_eq.append(p[coord])
    res = _exact.simplex_max([Fraction(0)] * len(s), a_eq, b_eq)
    if res.status != "optimal":
        return None
    return res.x


def interior_certificate(s: PointSet, p) -> Optional[list[Fraction]]:
    """Strictly positive barycentric certificate for p in relint(CH(s)).

    Solves the exact LP  max t  s.t.  c_i >= t, sum c = 1, sum c_i s_i = p
    and returns c when the optimum is strictly positive, else None.
    """
    p = Vec(p)
    if p.dim != s.dim:
        raise ValueError("dimension mismatch")
    n = len(s)
    # Variables: c_1..c_n, t, slack_1..slack_n (c_i - t - slack_i = 0).
    nvars = 2 * n + 1
    a_eq: list[list[Fraction]] = []
    b_eq: list[Fraction] = []
    row = [Fraction(1)] * n + [Fraction(0)] * (n + 1)
    a_eq.append(row)
    b_eq.append(Fraction(1))
    for coord in range(s.dim):
        a_eq.append([q[coord] for q in s] + [Fraction(0)] * (n + 1))
        b_eq.append(p[coord])
    for i in range(n):
        row = [Fraction(0)] * nvars
        row[i] = Fraction(1)
        row[n] = Fraction(-1)
        row[n + 1 + i] = Fraction(-1)
        a_eq.append(row)
        b_eq.append(Fraction(0))
    objective = [Fraction(0)] * nvars
    objective[n] = Fraction(1)
    res = _exact.simplex_max(objective, a_eq, b_eq)
    if res.status != "optimal" or res.value <= 0:
        return None
    return res.x[:len(s)]


def in_relative_interior(s: PointSet, p) -> bool:
    """True iff p lies in the interior of CH(s) relative to aff(s)."""
    return interior_certificate(s, p) is not None


def vertices(s: PointSet) -> PointSet:
    """The extreme points of CH(s), as a subset of ``s`` (order preserved)."""
    ext = []
    for i, p in enumerate(s):
        others = [q for j, q in enumerate(s) if j != i]
        if not others or barycentric(PointSet(others), p) is None:
            ext.append(p)
    return PointSet(ext)
