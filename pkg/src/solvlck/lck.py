"""Locally conformal symplectic / Kaehler structures on Lie algebras.

Matrices acting on g use the column convention: J e_j = sum_i J[i, j] e_i.
The metric of a pair (omega, J) is G(X, Y) = omega(X, J Y).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from . import linalg
from .cohomology import _min_support_solution, twisted_differential, twisted_exactness
from .errors import (Degenerate, DimensionMismatch, JNotAlmostComplex, LeeFormNotClosed, NoLeeForm,
                     NotJInvariant, NotLCS, NotPositive, NotPositiveDefinite, NotUnimodular, OddDimension,
                     ValidationError)
from .exterior import Form, basis, gram_matrix, mask_of, wedge_matrix
from .lie import LieAlgebra, MetaAbelianSplit, ce_differential, derived_dim, is_unimodular, split_check
from .scalars import Field

log = logging.getLogger(__name__)

NO_VAISMAN = "NoVaismanPossible"
INCONCLUSIVE = "Inconclusive"
HARMONIC_RESIDUAL = 1e-7


def _check_two_form(g: LieAlgebra, omega: Form) -> None:
    if omega.dim != g.dim or omega.grade != 2:
        raise ValidationError("expected a 2-form on the algebra")
    g.field.check_same(omega.field)


def is_nondegenerate(omega: Form) -> bool:
    n = omega.dim
    return n % 2 == 0 and not omega.power(n // 2).is_zero()


def lee_form(g: LieAlgebra, omega: Form) -> Form:
    """The closed 1-form theta with d omega = theta ^ omega.

    For nondegenerate omega the map theta -> theta ^ omega is injective once
    dim >= 4, so theta is unique there. In dimension 2 every theta works and
    the zero form is returned.
    """
    _check_two_form(g, omega)
    if not is_nondegenerate(omega):
        raise Degenerate("omega is degenerate")
    f = g.field
    n = g.dim
    domega = g.d(omega)
    # column k is e^k ^ omega
    M = np.column_stack([(Form.monomial(n, [k], 1, f) ^ omega).to_vector() for k in range(n)])
    if M.shape[0] == 0:
        M = f.zeros((0, n))
    x = _min_support_solution(M, domega.to_vector(), f)
    if x is None:
        raise NoLeeForm("d omega is not of the form theta ^ omega")
    if linalg.rank(M, f) < n:
        log.warning("Lee form not unique for this omega; returning the minimal-support solution")
    theta = Form.from_vector(n, 1, x, f)
    if not g.d(theta).is_zero():
        raise LeeFormNotClosed("the solution of d omega = theta ^ omega is not closed")
    if not (g.d(omega) - (theta ^ omega)).is_zero():
        raise NoLeeForm("re-substitution of the Lee form failed")
    return theta


def is_lcs(g: LieAlgebra, omega: Form, theta: Form) -> bool:
    if g.dim % 2:
        raise OddDimension("LCS forms live in even dimension")
    _check_two_form(g, omega)
    if theta.dim != g.dim or theta.grade != 1:
        raise ValidationError("theta must be a 1-form on the algebra")
    return (g.d(theta).is_zero()
            and (g.d(omega) - (theta ^ omega)).is_zero()
            and is_nondegenerate(omega))


@dataclass(frozen=True, eq=False)
class ComplexStructure:
    J: np.ndarray
    field: Field

    def __post_init__(self):
        J = self.field.array(self.J)
        n = J.shape[0]
        if J.shape != (n, n):
            raise DimensionMismatch("J must be square")
        sq = J.dot(J) + self.field.identity(n)
        if any(not self.field.is_zero(v) for v in sq.flat):
            raise JNotAlmostComplex("J^2 != -1")
        J.setflags(write=False)
        object.__setattr__(self, "J", J)

    @property
    def dim(self) -> int:
        return self.J.shape[0]


def complex_structure_from_pairs(n: int, pairs, field: Field) -> ComplexStructure:
    """J with J e_a = e_b, J e_b = -e_a for each (a, b); (1,0)-forms e^a + i e^b."""
    J = field.zeros((n, n))
    for a, b in pairs:
        J[b, a] = field.one
        J[a, b] = -field.one
    return ComplexStructure(J, field)


def nijenhuis(g: LieAlgebra, J: ComplexStructure) -> np.ndarray:
    """N[i, j] = [Je_i, Je_j] - [e_i, e_j] - J[Je_i, e_j] - J[e_i, Je_j] as coordinate vectors."""
    if J.dim != g.dim:
        raise DimensionMismatch("J and the algebra differ in dimension")
    g.field.check_same(J.field)
    Jm = J.J
    c = g.brackets
    JJ = np.einsum("ia,jb,ijk->abk", Jm, Jm, c)
    J_JX_Y = np.einsum("ia,ibm,km->abk", Jm, c, Jm)
    J_X_JY = np.einsum("jb,ajm,km->abk", Jm, c, Jm)
    return JJ - c - J_JX_Y - J_X_JY


def is_integrable(g: LieAlgebra, J: ComplexStructure) -> bool:
    N = nijenhuis(g, J)
    scale = max([abs(float(v)) for v in g.brackets.flat] + [1.0])
    return all(g.field.is_zero(v, scale) for v in N.flat)


def two_form_matrix(omega: Form) -> np.ndarray:
    """Antisymmetric matrix W[i, j] = omega(e_i, e_j)."""
    n = omega.dim
    W = omega.field.zeros((n, n))
    for (i, j) in combinations(range(n), 2):
        v = omega.terms.get(mask_of((i, j)))
        if v is not None:
            W[i, j] = v
            W[j, i] = -v
    return W


@dataclass(frozen=True, eq=False)
class InvariantMetric:
    G: np.ndarray
    field: Field

    def __post_init__(self):
        G = self.field.array(self.G)
        n = G.shape[0]
        if G.shape != (n, n):
            raise DimensionMismatch("metric must be square")
        if any(not self.field.eq(G[i, j], G[j, i]) for i in range(n) for j in range(i)):
            raise NotPositiveDefinite("metric is not symmetric")
        if not linalg.is_positive_definite(G, self.field):
            raise NotPositiveDefinite("metric is not positive definite")
        G.setflags(write=False)
        object.__setattr__(self, "G", G)

    @property
    def dual(self) -> np.ndarray:
        """Inner product induced on g*."""
        return linalg.inverse(self.G, self.field)


def metric_from(g: LieAlgebra, omega: Form, J: ComplexStructure) -> InvariantMetric:
    _check_two_form(g, omega)
    f = g.field
    W = two_form_matrix(omega)
    Jm = J.J
    if any(not f.is_zero(v) for v in (Jm.T.dot(W).dot(Jm) - W).flat):
        raise NotJInvariant("omega(J., J.) != omega")
    G = W.dot(Jm)
    try:
        return InvariantMetric(G, f)
    except NotPositiveDefinite as exc:
        raise NotPositive(str(exc)) from None


@dataclass(frozen=True, eq=False)
class ObstructionCertificate:
    split: MetaAbelianSplit
    dim_derived: int
    dim_g: int
    hypothesis_ok: bool
    theta: Form
    omega_prime: Form
    omega_double_prime: Form
    omega_dpp_nonzero: bool
    theta_in_a: bool
    containment_ok: bool
    d_theta_exact: bool
    witness: Optional[Form]
    checks_agree: bool
    verdict: str


def vaisman_obstruction(g: LieAlgebra, split: MetaAbelianSplit, omega: Form, theta: Form) -> ObstructionCertificate:
    """Certificate that the invariant LCS class [omega]_theta cannot vanish.

    Two independent routes: the structural one (omega has a Lambda^2 n*
    component while d_theta maps 1-forms into Lambda^2 a* + a* ^ n*) and a
    rank computation deciding d_theta-exactness directly.
    """
    if not is_lcs(g, omega, theta):
        raise NotLCS("(omega, theta) is not a locally conformal symplectic pair")
    sc = split_check(g, split)
    red = sc.reduced
    n = g.dim
    dd = derived_dim(g)
    hypothesis_ok = 2 * dd > n and red.m < red.n
    n_mask = mask_of(red.n_indices)
    a_mask = mask_of(red.a_indices)
    omega_pp = omega.restrict(n_mask)
    omega_p = omega - omega_pp
    theta_in_a = theta.restrict(a_mask).equals(theta)

    D1 = twisted_differential(g, theta, 1)
    nn_rows = [r for r, m in enumerate(basis(n, 2)) if m & ~n_mask == 0]
    containment_ok = all(g.field.is_zero(v) for v in D1[nn_rows].flat) if nn_rows else True

    ex = twisted_exactness(g, theta, omega)
    structural = hypothesis_ok and theta_in_a and containment_ok and not omega_pp.is_zero()
    checks_agree = not (structural and ex.exact)
    verdict = NO_VAISMAN if (hypothesis_ok and not omega_pp.is_zero() and not ex.exact) else INCONCLUSIVE
    return ObstructionCertificate(
        split=red, dim_derived=dd, dim_g=n, hypothesis_ok=hypothesis_ok, theta=theta,
        omega_prime=omega_p, omega_double_prime=omega_pp, omega_dpp_nonzero=not omega_pp.is_zero(),
        theta_in_a=theta_in_a, containment_ok=containment_ok, d_theta_exact=ex.exact,
        witness=ex.witness, checks_agree=checks_agree, verdict=verdict)


# Hodge theory on the invariant complex

def codifferential(g: LieAlgebra, metric: InvariantMetric, p: int) -> np.ndarray:
    """delta_p = Gram_{p-1}^{-1} D_{p-1}^T Gram_p, the metric adjoint of d (grade p -> p - 1)."""
    f = g.field
    dual = metric.dual
    if p == 0:
        return f.zeros((0, 1))
    Gp = gram_matrix(dual, p, f)
    Gq = gram_matrix(dual, p - 1, f)
    D = ce_differential(g, p - 1)
    return linalg.inverse(Gq, f).dot(D.T).dot(Gp)


def _harmonic_matrix(g: LieAlgebra, metric: InvariantMetric, p: int) -> np.ndarray:
    f = g.field
    if metric.G.shape[0] != g.dim:
        raise DimensionMismatch("metric and algebra differ in dimension")
    f.check_same(metric.field)
    if not is_unimodular(g):
        raise NotUnimodular("harmonic forms of the invariant complex need a unimodular algebra")
    D = ce_differential(g, p)
    delta = codifferential(g, metric, p)
    stacked = np.vstack([D, delta]) if D.shape[0] or delta.shape[0] else f.zeros((0, D.shape[1]))
    return linalg.nullspace(stacked, f)


def harmonic_basis(g: LieAlgebra, metric: InvariantMetric, p: int) -> list[Form]:
    """Basis of the grade-p forms that are both closed and co-closed."""
    N = _harmonic_matrix(g, metric, p)
    return [Form.from_vector(g.dim, p, N[:, k], g.field) for k in range(N.shape[1])]


def _in_span(H: np.ndarray, v: np.ndarray, gram: np.ndarray, field: Field) -> bool:
    if field.exact:
        if H.shape[1] == 0:
            return all(x == 0 for x in v)
        return linalg.rank(np.column_stack([H, v]), field) == linalg.rank(H, field)
    H = np.array(H, dtype=float)
    v = np.array(v, dtype=float)
    Gr = np.array(gram, dtype=float)
    if H.shape[1]:
        coef = np.linalg.solve(H.T @ Gr @ H, H.T @ Gr @ v)
        r = v - H @ coef
    else:
        r = v
    return float(np.sqrt(max(r @ Gr @ r, 0.0))) <= HARMONIC_RESIDUAL


@dataclass(frozen=True, eq=False)
class FormalityResult:
    formal: bool
    failing_pair: Optional[tuple[Form, Form]]
    harmonic: tuple[tuple[Form, ...], ...]


def formality_check(g: LieAlgebra, metric: InvariantMetric) -> FormalityResult:
    """Whether every wedge product of harmonic forms is harmonic."""
    n = g.dim
    f = g.field
    mats = [_harmonic_matrix(g, metric, p) for p in range(n + 1)]
    forms = [[Form.from_vector(n, p, M[:, k], f) for k in range(M.shape[1])] for p, M in enumerate(mats)]
    flat = [h for grade in forms for h in grade]
    dual = metric.dual
    grams = {}
    for i, x in enumerate(flat):
        for y in flat[i:]:
            q = x.grade + y.grade
            if q > n:
                continue
            prod = x ^ y
            if prod.is_zero():
                continue
            if q not in grams:
                grams[q] = gram_matrix(dual, q, f)
            if not _in_span(mats[q], prod.to_vector(), grams[q], f):
                return FormalityResult(False, (x, y), tuple(tuple(h) for h in forms))
    return FormalityResult(True, None, tuple(tuple(h) for h in forms))
