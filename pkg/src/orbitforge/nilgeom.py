"""Nilpotent Lie brackets, Ricci curvature, and minimal compatible metrics.

A bracket on R^n is an element of the bracket representation; this module
validates the Lie axioms, computes the Ricci operator of the associated
left-invariant metric, and decides existence of a minimal metric compatible
with the antidiagonal symplectic structure on R^{2m}: such a metric exists
exactly when the Sp(2m,R)-orbit of the bracket is distinguished, and the
witnessing critical bracket satisfies

    mm_sp(mu) = -|beta|^2 Id + D

with D a derivation.  The shipped table of six-dimensional two-step algebras
is re-verified row by row from these primitives.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Optional

import sympy

from .coeffs import Coeff
from .lattice import sp_diag_roots
from .nicecrit import Verdict, critical_coefficients, is_distinguished
from .ratgeom import PointSet, Vec, mcc
from .reps import (RepVector, SymMatrix, apply_matrix, moment_map,
                   moment_map_restricted, support_projected)


def _coeff_to_sympy(c: Coeff):
    return sympy.Rational(c.r) * sympy.sqrt(c.s)


class LieBracket:
    """A bracket mu on R^n, stored as a bracket-representation vector."""

    def __init__(self, vector: RepVector):
        if vector.backend.kind != "bracket":
            raise ValueError("LieBracket requires a bracket-backend vector")
        self.vector = vector
        self.n = vector.backend.n

    @classmethod
    def from_terms(cls, n: int, items) -> "LieBracket":
        return cls(RepVector.bracket(n, items))

    def of_basis(self, i: int, j: int) -> dict:
        """mu(e_i, e_j) as a map k -> Coeff."""
        sign = 1
        if i == j:
            return {}
        if i > j:
            i, j, sign = j, i, -1
        out = {}
        for (a, b, k), c in self.vector.terms.items():
            if (a, b) == (i, j):
                out[k] = sign * c
        return out

    def adjoint_sympy(self, i: int):
        """Matrix of ad(e_i) = mu(e_i, .) with exact sympy entries."""
        m = sympy.zeros(self.n, self.n)
        for j in range(self.n):
            for k, c in self.of_basis(i, j).items():
                m[k, j] = _coeff_to_sympy(c)
        return m


@dataclass(frozen=True)
class ValidationError(Exception):
    kind: str       # "jacobi" | "not_nilpotent" | "not_two_step"
    witness: tuple

    def __str__(self):
        return "%s violation at %r" % (self.kind, self.witness)


def validate(mu: LieBracket, two_step: bool = False) -> None:
    """Check Jacobi, nilpotency, and optionally the two-step condition.

    Raises ValidationError with the witnessing basis triple.  All checks are
    exact (square-root coefficients are handled symbolically).
    """
    n = mu.n
    ads = [mu.adjoint_sympy(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                jac = sympy.zeros(n, 1)
                for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                    for t, coeff in mu.of_basis(a, b).items():
                        jac += ads[c][:, t] * (-_coeff_to_sympy(coeff))
                # ad(e_c) mu(e_a,e_b) = -mu(mu(e_a,e_b), e_c); Jacobi says the
                # cyclic sum of mu(mu(e_a,e_b), e_c) vanishes.
                if any(x != 0 for x in jac):
                    raise ValidationError("jacobi", (i, j, k))
    if two_step:
        for (a, b, k) in mu.vector.terms:
            for c in range(n):
                if mu.of_basis(k, c):
                    raise ValidationError("not_two_step", (a, b, c))
    # Lower central series: span of bracket values, then brackets with it.
    current = sympy.Matrix.hstack(*(ads[i] for i in range(n))) if mu.vector.terms \
        else sympy.zeros(n, 0)
    current = _column_space(current)
    while current.shape[1]:
        nxt = sympy.Matrix.hstack(*(ads[i] * current for i in range(n)))
        nxt = _column_space(nxt)
        if nxt.shape[1] >= current.shape[1]:
            raise ValidationError("not_nilpotent", ())
        current = nxt


def _column_space(m):
    cols = m.columnspace()
    if not cols:
        return sympy.zeros(m.shape[0], 0)
    return sympy.Matrix.hstack(*cols)


def ricci(mu: LieBracket) -> SymMatrix:
    """Ricci operator of the metric Lie algebra (R^n, mu, canonical metric).

    Ric_ab = -1/2 sum <mu(e_a,e_i),e_j><mu(e_b,e_i),e_j>
             + 1/4 sum <mu(e_i,e_j),e_a><mu(e_i,e_j),e_b>
    with both sums over ordered pairs (i, j).  Satisfies the exact identity
    moment_map(mu) * |mu|^2 = 4 Ric for nonzero mu.
    """
    n = mu.n
    if not mu.vector.terms:
        return SymMatrix([[0] * n for _ in range(n)])
    entries = [[Fraction(0)] * n for _ in range(n)]
    values = {}
    for i in range(n):
        for j in range(n):
            values[(i, j)] = mu.of_basis(i, j)
    for a in range(n):
        for b in range(a, n):
            total = Coeff(0)
            for i in range(n):
                va, vb = values[(a, i)], values[(b, i)]
                for j, ca in va.items():
                    cb = vb.get(j)
                    if cb is not None:
                        total = total + Fraction(-1, 2) * ca * cb
            for i in range(n):
                for j in range(n):
                    v = values[(i, j)]
                    ca, cb = v.get(a), v.get(b)
                    if ca is not None and cb is not None:
                        total = total + Fraction(1, 4) * ca * cb
            entries[a][b] = entries[b][a] = total.rational()
    return SymMatrix(entries)


@dataclass
class MinimalReport:
    nice: bool                       # mm_sp diagonal in this basis
    critical: bool                   # mm_sp equals mcc of projected support
    beta: Optional[Vec]
    beta_norm_sq: Optional[Fraction]
    derivation: Optional[SymMatrix]  # D = mm_sp + |beta|^2 Id
    is_derivation: Optional[bool]
    multiple: Optional[Fraction]     # D = multiple * reference, if supplied
    mm_sp: SymMatrix


def verify_minimal(mu: LieBracket, reference_derivation=None) -> MinimalReport:
    """Check that the canonical metric is minimal for (R^2m, mu, omega).

    Computes mm_sp(mu), compares with mcc of the projected support, and
    reports D = mm_sp + |beta|^2 Id together with the exact derivation check.
    ``reference_derivation`` (diagonal entries) is compared up to a positive
    rational multiple.
    """
    m = mu.n // 2
    if 2 * m != mu.n:
        raise ValueError("symplectic verification needs even dimension")
    mm_sp = moment_map_restricted(mu.vector, "sp", m)
    if not mm_sp.is_diagonal():
        return MinimalReport(False, False, None, None, None, None, None, mm_sp)
    beta = mcc(support_projected(mu.vector, m))
    critical = mm_sp.diag() == beta
    bns = beta.norm_sq()
    d = mm_sp + SymMatrix.diagonal([bns] * mu.n)
    dmat = [[d.rows[a][b] for b in range(mu.n)] for a in range(mu.n)]
    image = apply_matrix(dmat, mu.vector)
    is_der = image.is_zero()
    multiple = None
    if reference_derivation is not None:
        ref = [Fraction(x) for x in reference_derivation]
        ratios = {d.rows[i][i] / r for i, r in enumerate(ref) if r != 0}
        exact = all(d.rows[i][i] == 0 for i, r in enumerate(ref) if r == 0)
        if exact and len(ratios) == 1:
            ratio = ratios.pop()
            if ratio > 0:
                multiple = ratio
    return MinimalReport(True, critical, beta, bns, d, is_der, multiple, mm_sp)


class NotDistinguishedError(Exception):
    def __init__(self, verdict: Verdict):
        super().__init__("orbit is %s" % verdict.outcome)
        self.verdict = verdict


@dataclass
class MinimalMetricResult:
    verdict: Verdict
    x: tuple                  # diagonal solution of the moment equation
    residual: float
    critical_bracket: RepVector
    beta: Vec


def find_minimal_metric(mu: LieBracket) -> MinimalMetricResult:
    """Diagonal change of basis carrying mu to a minimal-metric critical point.

    Requires the sp-projected weight set of mu to be nice with a distinguished
    orbit; raises NotDistinguishedError (carrying the verdict) otherwise.
    Returns the Newton solution X of mm_sp(exp(X).mu) = beta together with the
    exact critical bracket obtained by redistributing the weight-class masses.
    """
    from .flow import solve_moment_equation

    m = mu.n // 2
    weights = support_projected(mu.vector, m)
    verdict = is_distinguished(weights, mu.vector.backend, sp_diag_roots(m))
    if verdict.outcome != "distinguished":
        raise NotDistinguishedError(verdict)
    beta = verdict.beta
    result = solve_moment_equation(mu.vector, beta, subgroup="sp")

    family = critical_coefficients(weights, [1] * len(weights), beta)
    target = dict(zip(weights, family.particular))
    class_mass: dict = {}
    proj = {}
    for idx, c in mu.vector.terms.items():
        w = mu.vector.backend.weight(idx)
        from .lattice import project_to_sp_diag
        pw = project_to_sp_diag(w, m)
        proj[idx] = pw
        class_mass[pw] = class_mass.get(pw, Fraction(0)) + \
            c.square() * mu.vector.backend.basis_norm_sq(idx)
    terms = {}
    for idx, c in mu.vector.terms.items():
        ratio = target[proj[idx]] / class_mass[proj[idx]]
        sign = 1 if c.r > 0 else -1
        terms[idx] = Coeff.from_square(c.square() * ratio, sign)
    critical = RepVector(mu.vector.backend, terms)
    return MinimalMetricResult(verdict, result.x, result.residual, critical, beta)


def sym_derivation_dim(mu: LieBracket) -> int:
    """dim over R of Der(mu) intersected with sp(2m, R) (antidiagonal form).

    Exact: the stacked linear system {A.mu = 0, A^T J + J A = 0} is solved
    symbolically, so square-root structure constants are handled without
    rounding.
    """
    n = mu.n
    m = n // 2
    if 2 * m != n:
        raise ValueError("symplectic derivations need even dimension")
    unknowns = [(a, b) for a in range(n) for b in range(n)]
    col = {ab: t for t, ab in enumerate(unknowns)}
    rows = []
    # Bracket action: (A.mu)(e_p, e_q) = A mu(e_p,e_q) - mu(Ae_p,e_q) - mu(e_p,Ae_q)
    for p in range(n):
        for q in range(p + 1, n):
            base = mu.of_basis(p, q)
            for k in range(n):
                row = [sympy.Integer(0)] * (n * n)
                for t, c in base.items():
                    row[col[(k, t)]] += _coeff_to_sympy(c)
                for a in range(n):
                    for t, c in mu.of_basis(a, q).items():
                        if t == k:
                            row[col[(a, p)]] -= _coeff_to_sympy(c)
                    for t, c in mu.of_basis(p, a).items():
                        if t == k:
                            row[col[(a, q)]] -= _coeff_to_sympy(c)
                if any(x != 0 for x in row):
                    rows.append(row)
    jsign = lambda i: 1 if i < m else -1
    for a in range(n):
        for b in range(n):
            # (A^T J + J A)_ab = A_{n-1-b,a} J_{n-1-b,b} + J_{a,n-1-a} A_{n-1-a,b}
            row = [sympy.Integer(0)] * (n * n)
            row[col[(n - 1 - b, a)]] += jsign(n - 1 - b)
            row[col[(n - 1 - a, b)]] += jsign(a)
            if any(x != 0 for x in row):
                rows.append(row)
    if not rows:
        return n * n
    mat = sympy.Matrix(rows)
    return n * n - mat.rank()


@dataclass
class TableRowReport:
    name: str
    label: str
    passed: bool
    report: MinimalReport
    dim_aut: Optional[int]
    expected_beta_norm_sq: Fraction
    expected_dim_aut: int
    mismatches: tuple


def load_table2_fixture(path: Optional[str] = None) -> dict:
    if path is None:
        text = resources.files("orbitforge.data").joinpath("table2.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return json.loads(text)


def bracket_from_fixture_terms(terms, n: int = 6) -> LieBracket:
    items = []
    for t in terms:
        coeff = Coeff.from_square(Fraction(t["sq"]), t["sign"])
        items.append(((t["i"] - 1, t["j"] - 1, t["k"] - 1), coeff))
    return LieBracket.from_terms(n, items)


def _verify_instance(row: dict, inst: dict, check_dim_aut: bool) -> TableRowReport:
    expected_bns = Fraction(row["beta_norm_sq"])
    ref = [Fraction(x) for x in row["derivation_diag"]]
    mu = bracket_from_fixture_terms(inst["terms"])
    validate(mu, two_step=True)
    rep = verify_minimal(mu, reference_derivation=ref)
    mismatches = []
    if not rep.nice:
        mismatches.append(("nice", False, True))
    else:
        if not rep.critical:
            mismatches.append(("critical", rep.mm_sp.diag(), "mcc"))
        if rep.beta_norm_sq != expected_bns:
            mismatches.append(("beta_norm_sq", rep.beta_norm_sq, expected_bns))
        if not rep.is_derivation:
            mismatches.append(("derivation", False, True))
        if rep.multiple is None:
            mismatches.append(("derivation_multiple",
                               rep.derivation.diag() if rep.derivation else None,
                               tuple(ref)))
    dim_aut = None
    expected_dim = inst.get("dim_aut", row["dim_aut"])
    if check_dim_aut:
        dim_aut = sym_derivation_dim(mu)
        if dim_aut != expected_dim:
            mismatches.append(("dim_aut", dim_aut, expected_dim))
    return TableRowReport(row["name"], inst["label"], not mismatches,
                          rep, dim_aut, expected_bns, expected_dim,
                          tuple(mismatches))


def _thread_count() -> int:
    raw = os.environ.get("ORBITFORGE_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_table2(path: Optional[str] = None, check_dim_aut: bool = True):
    """Re-verify every table row; returns a list of TableRowReport.

    Instances are independent, so they are checked in parallel when the
    ORBITFORGE_THREADS environment variable asks for more than one worker.
    """
    fixture = load_table2_fixture(path)
    jobs = [(row, inst) for row in fixture["rows"] for inst in row["instances"]]
    threads = _thread_count()
    if threads == 1 or len(jobs) <= 1:
        return [_verify_instance(row, inst, check_dim_aut) for row, inst in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(
            lambda job: _verify_instance(job[0], job[1], check_dim_aut), jobs))
