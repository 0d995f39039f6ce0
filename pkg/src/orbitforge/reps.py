"""Representation backends: n-ary forms and Lie brackets, with moment maps.

Two concrete GL_n(R)-representations are supported:

* ``poly(n, d)`` -- homogeneous degree-d polynomials in n variables, acting by
  linear substitution; monomials are orthogonal with squared norm d_1!...d_n!.
  A monomial with exponents (d_1,...,d_n) has weight -(d_1,...,d_n).
* ``bracket(n)`` -- antisymmetric bilinear maps Lambda^2(R^n)* (x) R^n acting
  by change of basis; the basis bracket mu_{ij}^k (i < j) has weight
  e_k - e_i - e_j and squared norm 2 (the inner product sums over ordered
  index pairs).

Vectors are sparse maps from basis index to an exact coefficient (rational or
a single square root, see ``coeffs``), so that moment maps, Gram matrices and
criticality identities are computed without any rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Optional

from .coeffs import Coeff
from .lattice import project_to_sp_diag
from .ratgeom import PointSet, Vec
from . import _exact


class SymMatrix:
    """Exact rational symmetric matrix (diagonal identified with a Vec)."""

    def __init__(self, rows: Iterable[Iterable]):
        self.rows = tuple(Vec(r) for r in rows)
        n = len(self.rows)
        if any(r.dim != n for r in self.rows):
            raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(i):
                if self.rows[i][j] != self.rows[j][i]:
                    raise ValueError("matrix must be symmetric")
        self.n = n

    @classmethod
    def diagonal(cls, entries) -> "SymMatrix":
        d = Vec(entries)
        return cls([[d[i] if i == j else 0 for j in range(d.dim)] for i in range(d.dim)])

    def diag(self) -> Vec:
        return Vec(self.rows[i][i] for i in range(self.n))

    def is_diagonal(self) -> bool:
        return all(self.rows[i][j] == 0
                   for i in range(self.n) for j in range(self.n) if i != j)

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.n)), Fraction(0))

    def trace_inner(self, other: "SymMatrix") -> Fraction:
        return sum((self.rows[i][j] * other.rows[i][j]
                    for i in range(self.n) for j in range(self.n)), Fraction(0))

    def norm_sq(self) -> Fraction:
        return self.trace_inner(self)

    def __add__(self, other):
        return SymMatrix([a + b for a, b in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return SymMatrix([a - b for a, b in zip(self.rows, other.rows)])

    def __mul__(self, scalar):
        return SymMatrix([r * Fraction(scalar) for r in self.rows])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, SymMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "SymMatrix(%r)" % (self.rows,)


@dataclass(frozen=True)
class PolyBackend:
    """R[x_1..x_n]_d under linear substitution."""

    n: int
    d: int
    kind: str = "poly"

    def check_index(self, idx) -> tuple:
        idx = tuple(int(e) for e in idx)
        if len(idx) != self.n or any(e < 0 for e in idx) or sum(idx) != self.d:
            raise ValueError("bad monomial exponents %r for poly(%d,%d)"
                             % (idx, self.n, self.d))
        return idx

    def weight(self, idx) -> Vec:
        return Vec(-e for e in idx)

    def basis_norm_sq(self, idx) -> Fraction:
        out = 1
        for e in idx:
            out *= factorial(e)
        return Fraction(out)

    def all_indices(self):
        def rec(prefix, remaining, slots):
            if slots == 1:
                yield prefix + (remaining,)
                return
            for e in range(remaining + 1):
                yield from rec(prefix + (e,), remaining - e, slots - 1)
        yield from rec((), self.d, self.n)

    def apply_matrix(self, matrix, terms: dict) -> dict:
        # pi(M) p = -sum_{a,b} M[a][b] x_b dp/dx_a.  Works for exact and
        # float coefficient maps alike; matrix entries set the scalar type.
        out: dict = {}
        for idx, coeff in terms.items():
            for a in range(self.n):
                if idx[a] == 0:
                    continue
                for b in range(self.n):
                    if matrix[a][b] == 0:
                        continue
                    new = list(idx)
                    new[a] -= 1
                    new[b] += 1
                    _accumulate(out, tuple(new), coeff * (-matrix[a][b] * idx[a]))
        return out


@dataclass(frozen=True)
class BracketBackend:
    """Lambda^2(R^n)* (x) R^n under change of basis."""

    n: int
    kind: str = "bracket"

    def check_index(self, idx) -> tuple:
        i, j, k = (int(x) for x in idx)
        bad = not (0 <= i < self.n and 0 <= j < self.n and 0 <= k < self.n)
        if bad or i == j:
            raise ValueError("bad bracket index %r for bracket(%d)" % (idx, self.n))
        return (i, j, k)

    def weight(self, idx) -> Vec:
        i, j, k = idx
        entries = [0] * self.n
        entries[k] += 1
        entries[i] -= 1
        entries[j] -= 1
        return Vec(entries)

    def basis_norm_sq(self, idx) -> Fraction:
        return Fraction(2)

    def all_indices(self):
        for i in range(self.n):
            for j in range(i + 1, self.n):
                for k in range(self.n):
                    yield (i, j, k)

    def apply_matrix(self, matrix, terms: dict) -> dict:
        # (A.mu)(e_p, e_q) = A mu(e_p,e_q) - mu(A e_p, e_q) - mu(e_p, A e_q)
        def mu(p, q):
            sign = 1
            if p > q:
                p, q, sign = q, p, -1
            out = {}
            for (i, j, k), c in terms.items():
                if (i, j) == (p, q):
                    cur = out.get(k)
                    out[k] = sign * c if cur is None else cur + sign * c
            return out

        out: dict = {}
        for p in range(self.n):
            for q in range(p + 1, self.n):
                for k, c in mu(p, q).items():
                    for a in range(self.n):
                        if matrix[a][k] != 0:
                            _accumulate(out, (p, q, a), c * matrix[a][k])
                for a in range(self.n):
                    if matrix[a][p] != 0:
                        for k, c in mu(a, q).items():
                            _accumulate(out, (p, q, k), c * -matrix[a][p])
                    if matrix[a][q] != 0:
                        for k, c in mu(p, a).items():
                            _accumulate(out, (p, q, k), c * -matrix[a][q])
        return out


def _accumulate(terms: dict, idx, coeff) -> None:
    cur = terms.get(idx)
    new = coeff if cur is None else cur + coeff
    if new == 0:
        terms.pop(idx, None)
    else:
        terms[idx] = new


def _normalize_bracket_terms(backend: BracketBackend, items) -> dict:
    out: dict = {}
    for idx, coeff in items:
        i, j, k = backend.check_index(idx)
        if i > j:
            i, j, coeff = j, i, -coeff
        _accumulate(out, (i, j, k), coeff)
    return out


class RepVector:
    """Sparse element of a representation space with exact coefficients."""

    def __init__(self, backend, items):
        self.backend = backend
        pairs = [(idx, Coeff(c)) for idx, c in
                 (items.items() if isinstance(items, dict) else items)]
        if backend.kind == "bracket":
            terms = _normalize_bracket_terms(backend, pairs)
        else:
            terms = {}
            for idx, coeff in pairs:
                _accumulate(terms, backend.check_index(idx), coeff)
        self.terms = terms

    @classmethod
    def poly(cls, n: int, d: int, items) -> "RepVector":
        return cls(PolyBackend(n, d), items)

    @classmethod
    def bracket(cls, n: int, items) -> "RepVector":
        return cls(BracketBackend(n), items)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __add__(self, other):
        if other.backend != self.backend:
            raise ValueError("backend mismatch")
        out = dict(self.terms)
        for idx, c in other.terms.items():
            _accumulate(out, idx, c)
        return RepVector(self.backend, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor) -> "RepVector":
        factor = Coeff(factor) if not isinstance(factor, Coeff) else factor
        return RepVector(self.backend,
                         {idx: c * factor for idx, c in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, RepVector) and other.backend == self.backend
                and other.terms == self.terms)

    def inner(self, other: "RepVector") -> Coeff:
        if other.backend != self.backend:
            raise ValueError("backend mismatch")
        total = Coeff(0)
        for idx, c in self.sorted_terms():
            d = other.terms.get(idx)
            if d is not None:
                total = total + c * d * self.backend.basis_norm_sq(idx)
        return total

    def norm_sq(self) -> Fraction:
        total = Fraction(0)
        for idx, c in self.terms.items():
            total += c.square() * self.backend.basis_norm_sq(idx)
        return total

    def __repr__(self):
        return "RepVector(%r, %r)" % (self.backend, self.sorted_terms())


def support(v: RepVector) -> PointSet:
    """Ordered set of distinct weights carried by the nonzero terms."""
    if v.is_zero():
        raise ValueError("empty support: zero vector")
    seen = []
    for idx, _ in v.sorted_terms():
        w = v.backend.weight(idx)
        if w not in seen:
            seen.append(w)
    return PointSet(seen)


def support_projected(v: RepVector, m: int) -> PointSet:
    """Distinct sp(2m)-weights: the gl weights projected to the sp diagonal."""
    seen = []
    for idx, _ in v.sorted_terms():
        w = project_to_sp_diag(v.backend.weight(idx), m)
        if w not in seen:
            seen.append(w)
    return PointSet(seen)


def apply_diag(x, v: RepVector) -> RepVector:
    """pi(diag(x)) v: each term scales by <weight, x>."""
    x = Vec(x)
    out = {}
    for idx, c in v.terms.items():
        scaled = c * v.backend.weight(idx).dot(x)
        if not scaled.is_zero():
            out[idx] = scaled
    return RepVector(v.backend, out)


def elementary_matrix(n: int, i: int, j: int):
    return [[Fraction(1) if (a, b) == (i, j) else Fraction(0) for b in range(n)]
            for a in range(n)]


def apply_elementary(i: int, j: int, v: RepVector) -> RepVector:
    """pi(E_ij) v (i == j allowed: the diagonal generator)."""
    mat = elementary_matrix(v.backend.n, i, j)
    return RepVector(v.backend, v.backend.apply_matrix(mat, v.terms))


def apply_matrix(matrix, v: RepVector) -> RepVector:
    """pi(M) v for an arbitrary rational matrix M."""
    mat = [[Fraction(x) for x in row] for row in matrix]
    return RepVector(v.backend, v.backend.apply_matrix(mat, v.terms))


def group_scale(multipliers, v: RepVector) -> RepVector:
    """exp(X).v for X = diag(log t_i): weight-alpha terms scale by prod t_i^alpha_i.

    The multipliers t_i must be positive rationals and all weight entries
    integers, so the scaling stays exact.
    """
    ts = [Fraction(t) for t in multipliers]
    if any(t <= 0 for t in ts):
        raise ValueError("multipliers must be positive")
    out = {}
    for idx, c in v.terms.items():
        w = v.backend.weight(idx)
        factor = Fraction(1)
        for t, a in zip(ts, w, strict=True):
            if a.denominator != 1:
                raise ValueError("non-integer weight entry in exact mode")
            factor *= t ** a.numerator
        out[idx] = c * factor
    return RepVector(v.backend, out)


def moment_map(v: RepVector) -> SymMatrix:
    """The moment-map value mm(v): <mm(v), S> = <pi(S)v, v> / |v|^2."""
    if v.is_zero():
        raise ValueError("moment map of the zero vector")
    n = v.backend.n
    nsq = v.norm_sq()
    entries = [[Fraction(0)] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            val = apply_elementary(a, b, v).inner(v)
            if a != b:
                val = val + apply_elementary(b, a, v).inner(v)
            val = val.rational()
            if a == b:
                entries[a][a] = val / nsq
            else:
                entries[a][b] = entries[b][a] = val / (2 * nsq)
    return SymMatrix(entries)


def _sym_basis(n: int):
    pairs = [(i, j) for i in range(n) for j in range(i, n)]

    def embed(vec):
        m = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), x in zip(pairs, vec):
            m[i][j] = m[j][i] = Fraction(x)
        return m

    return pairs, embed


def sym_sp_basis(m: int) -> list[SymMatrix]:
    """Basis of the symmetric part of sp(2m,R) for the antidiagonal form."""
    n = 2 * m
    jmat = [[Fraction(0)] * n for _ in range(n)]
    for i in range(m):
        jmat[i][n - 1 - i] = Fraction(1)
        jmat[n - 1 - i][i] = Fraction(-1)
    pairs, embed = _sym_basis(n)
    rows = []
    # Condition S J + J S = 0, entrywise, as linear equations in the S_ij.
    for a in range(n):
        for b in range(n):
            row = []
            for (i, j) in pairs:
                val = Fraction(0)
                for k in range(n):
                    s_ak = Fraction(1) if (a, k) in ((i, j), (j, i)) else Fraction(0)
                    s_kb = Fraction(1) if (k, b) in ((i, j), (j, i)) else Fraction(0)
                    val += s_ak * jmat[k][b] + jmat[a][k] * s_kb
                row.append(val)
            rows.append(row)
    return [SymMatrix(embed(vec)) for vec in _exact.nullspace(rows)]


def project_sym_sp(mat: SymMatrix, m: int) -> SymMatrix:
    """Orthogonal (trace form) projection onto sym(2m) intersect sp(2m)."""
    basis = sym_sp_basis(m)
    gram = [[bi.trace_inner(bj) for bj in basis] for bi in basis]
    rhs = [b.trace_inner(mat) for b in basis]
    coeffs = _exact.solve(gram, rhs)
    out = SymMatrix([[0] * mat.n for _ in range(mat.n)])
    for c, b in zip(coeffs, basis):
        out = out + c * b
    return out


def moment_map_restricted(v: RepVector, subgroup: str,
                          m: Optional[int] = None) -> SymMatrix:
    """mm for a compatible subgroup: the projection of mm(v).

    subgroup "sl": subtract the trace part.  subgroup "sp": project onto the
    symmetric part of sp(2m,R); requires m with backend dimension n = 2m.
    """
    full = moment_map(v)
    if subgroup == "sl":
        t = full.trace() / full.n
        return full - SymMatrix.diagonal([t] * full.n)
    if subgroup == "sp":
        if m is None or 2 * m != v.backend.n:
            raise ValueError("sp projection needs m with n = 2m")
        return project_sym_sp(full, m)
    raise ValueError("unknown subgroup %r" % subgroup)
