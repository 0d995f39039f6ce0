"""Nice-space detection and the distinguished-orbit criterion.

A subspace spanned by weight vectors is "nice" when the moment map sends all
of it into the diagonal subalgebra; on a nice space, whether the orbit of an
element is distinguished reduces to exact convex geometry: the minimum-norm
point beta of the convex hull of its weights must lie in the relative
interior of that hull.  Equivalently (Gram form), U x = lambda [1..1] must
have a strictly positive solution, U the Gram matrix of the weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import _exact
from .lattice import RootSystem, project_to_sp_diag
from .ratgeom import PointSet, Vec, interior_certificate, mcc
from .reps import RepVector, support


class GramMatrix:
    """Symmetric matrix of pairwise inner products of an ordered weight set."""

    def __init__(self, entries):
        self.entries = tuple(Vec(row) for row in entries)
        self.size = len(self.entries)
        for i in range(self.size):
            if self.entries[i].dim != self.size:
                raise ValueError("Gram matrix must be square")
            for j in range(i):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError("Gram matrix must be symmetric")

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, GramMatrix) and self.entries == other.entries

    def __repr__(self):
        return "GramMatrix(%r)" % (self.entries,)


def gram(weights: PointSet) -> GramMatrix:
    return GramMatrix([[p.dot(q) for q in weights] for p in weights])


@dataclass(frozen=True)
class NiceWitness:
    """A failing pair for the niceness test: alpha_j - alpha_i is the root."""

    alpha_i: Vec
    alpha_j: Vec
    root: Vec


@dataclass(frozen=True)
class Verdict:
    outcome: str  # "distinguished" | "not_distinguished" | "not_nice"
    beta: Optional[Vec] = None
    certificate: Optional[tuple] = None
    witness: Optional[NiceWitness] = None


def _weight_of_index(backend, idx, roots: RootSystem) -> Vec:
    w = backend.weight(idx)
    if roots.subgroup == "sp":
        return project_to_sp_diag(w, roots.n // 2)
    return w


def _weight_index_table(backend, roots: RootSystem) -> dict:
    table: dict = {}
    for idx in backend.all_indices():
        table.setdefault(_weight_of_index(backend, idx, roots), []).append(idx)
    return table


def _root_space(roots: RootSystem, gamma: Vec):
    """Basis (as rational matrices) of the root space g_gamma."""
    n = roots.n
    if roots.subgroup in ("gl", "sl"):
        positions = []
        for a in range(n):
            for b in range(n):
                if a != b:
                    e = [0] * n
                    e[a], e[b] = 1, -1
                    if Vec(e) == gamma:
                        positions.append((a, b))
        out = []
        for (a, b) in positions:
            mat = [[Fraction(0)] * n for _ in range(n)]
            mat[a][b] = Fraction(1)
            out.append(mat)
        return out
    if roots.subgroup == "sp":
        m = n // 2
        positions = []
        for a in range(n):
            for b in range(n):
                if a == b:
                    continue
                e = [0] * n
                e[a], e[b] = 1, -1
                if project_to_sp_diag(Vec(e), m) == gamma:
                    positions.append((a, b))
        if not positions:
            return []
        # Impose the symplectic condition M^T J + J M = 0 on matrices
        # supported on these positions (antidiagonal J).
        jsign = lambda i: 1 if i < m else -1
        rows = []
        for a in range(n):
            for b in range(n):
                row = []
                for (p, q) in positions:
                    val = Fraction(0)
                    if (p, q) == (n - 1 - b, a):
                        val += jsign(n - 1 - b)
                    if (p, q) == (n - 1 - a, b):
                        val += jsign(a)
                    row.append(val)
                rows.append(row)
        out = []
        for vec in _exact.nullspace(rows, ncols=len(positions)):
            mat = [[Fraction(0)] * n for _ in range(n)]
            for (p, q), x in zip(positions, vec):
                mat[p][q] = x
            out.append(mat)
        return out
    raise ValueError("unknown subgroup %r" % roots.subgroup)


def is_nice(weights: PointSet, backend, roots: RootSystem):
    """Decide whether the span of all basis vectors with these weights is nice.

    Returns (True, None) or (False, NiceWitness).  Fast path: if no pairwise
    weight difference is a root, the span is nice.  Otherwise, for each pair
    (alpha_i, alpha_j) with gamma = alpha_j - alpha_i a root, the image of the
    alpha_i weight space under every generator of g_gamma must have no
    component on the span's basis indices.
    """
    if backend.n != roots.n:
        raise ValueError("backend and root system dimensions differ")
    table = _weight_index_table(backend, roots)
    for w in weights:
        if w not in table:
            raise ValueError("weight %r is not a weight of this representation" % (w,))
    pairs = [(wi, wj) for wi in weights for wj in weights
             if wi != wj and (wj - wi) in roots]
    if not pairs:
        return True, None
    span_indices = {idx for w in weights for idx in table[w]}
    for wi, wj in pairs:
        gamma = wj - wi
        for mat in _root_space(roots, gamma):
            for idx in table[wi]:
                image = RepVector(backend, {idx: 1})
                image = RepVector(backend, backend.apply_matrix(mat, image.terms))
                if any(t in span_indices for t in image.terms):
                    return False, NiceWitness(wi, wj, gamma)
    return True, None


def positive_solution(u: GramMatrix, weights: PointSet):
    """Strictly positive x with U x = lambda [1..1], or None.

    Solved through convex geometry rather than a direct linear solve (U may
    be singular): beta = mcc(weights) and a strict relative-interior
    certificate for beta.  Returns (x, lambda) with sum x = 1 and
    lambda = |beta|^2.
    """
    if u != gram(weights):
        raise ValueError("Gram matrix does not match the weight set")
    beta = mcc(weights)
    cert = interior_certificate(weights, beta)
    if cert is None:
        return None
    lam = beta.norm_sq()
    for p in range(len(weights)):
        if sum(u[p, q] * cert[q] for q in range(len(weights))) != lam:
            raise AssertionError("certificate fails the Gram equation")
    return cert, lam


def stratum_label(v: RepVector) -> Vec:
    """beta_v = mcc of the support weights."""
    return mcc(support(v))


def is_distinguished(weights: PointSet, backend, roots: RootSystem) -> Verdict:
    """Main criterion for the span of the given weights.

    Distinguished iff the span is nice and mcc of the weights lies in the
    relative interior of their convex hull.
    """
    nice, witness = is_nice(weights, backend, roots)
    if not nice:
        return Verdict("not_nice", witness=witness)
    beta = mcc(weights)
    cert = interior_certificate(weights, beta)
    if cert is None:
        return Verdict("not_distinguished", beta=beta)
    return Verdict("distinguished", beta=beta, certificate=tuple(cert))


@dataclass(frozen=True)
class CriticalFamily:
    """Affine family of critical squared-coefficient masses.

    Masses c_i (nonnegative, summing to 1, with sum c_i alpha_i = beta) are
    ``particular + span(kernel)`` intersected with the nonnegative orthant.
    c_i = coeff_i^2 * |basis_i|^2, so squared coefficients are c_i divided by
    the basis norms.
    """

    weights: PointSet
    basis_norms: tuple
    particular: tuple
    kernel: tuple

    @property
    def dimension(self) -> int:
        return len(self.kernel)

    def coefficient_squares(self, point=None) -> tuple:
        c = self.particular if point is None else point
        return tuple(Fraction(ci) / ni for ci, ni in zip(c, self.basis_norms))

    def member(self, params) -> tuple:
        """The mass vector particular + sum params_k kernel_k."""
        c = list(self.particular)
        for t, k in zip(params, self.kernel, strict=True):
            c = [ci + Fraction(t) * ki for ci, ki in zip(c, k)]
        if any(ci < 0 for ci in c):
            raise ValueError("parameters leave the nonnegative orthant")
        return tuple(c)


def critical_coefficients(weights: PointSet, basis_norms, beta) -> Optional[CriticalFamily]:
    """All critical mass distributions on a nice weight set for a given beta.

    Returns None when no nonnegative solution of  sum c_i alpha_i = beta,
    sum c_i = 1  exists (the stratum meets no critical point in this span).
    """
    beta = Vec(beta)
    norms = tuple(Fraction(x) for x in basis_norms)
    if len(norms) != len(weights):
        raise ValueError("one basis norm per weight is required")
    particular = interior_certificate(weights, beta)
    if particular is None:
        from .ratgeom import barycentric
        particular = barycentric(weights, beta)
        if particular is None:
            return None
    rows = [[Fraction(1)] * len(weights)]
    for coord in range(weights.dim):
        rows.append([q[coord] for q in weights])
    kernel = tuple(tuple(k) for k in _exact.nullspace(rows))
    return CriticalFamily(weights, norms, tuple(particular), kernel)
