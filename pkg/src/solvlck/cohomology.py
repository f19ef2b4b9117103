"""Cohomology of the invariant complex, twisted by a closed 1-form or by characters."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from . import linalg
from .errors import (CharacterNotRealizable, DimensionMismatch, OmegaNotDThetaClosed, ThetaNotClosed,
                     ValidationError)
from .exterior import Form, basis, mask_of, wedge_matrix
from .lie import LieAlgebra, MetaAbelianSplit, ce_differential, derived_basis, validate_split


@dataclass(frozen=True)
class CochainComplexSnapshot:
    differentials: tuple[np.ndarray, ...]
    ranks: tuple[int, ...]
    nullities: tuple[int, ...]
    betti: tuple[int, ...]


def _snapshot(mats: Sequence[np.ndarray], dims: Sequence[int], field) -> CochainComplexSnapshot:
    ranks = tuple(linalg.rank(D, field) for D in mats)
    nullities = tuple(d - r for d, r in zip(dims, ranks))
    betti = tuple(nullities[p] - (ranks[p - 1] if p else 0) for p in range(len(dims)))
    return CochainComplexSnapshot(tuple(mats), ranks, nullities, betti)


def _check_theta(g: LieAlgebra, theta: Form) -> None:
    if theta.dim != g.dim:
        raise DimensionMismatch(f"theta has dimension {theta.dim}, algebra has {g.dim}")
    if theta.grade != 1:
        raise ValidationError(f"theta must be a 1-form, got grade {theta.grade}")
    g.field.check_same(theta.field)
    if not g.d(theta).is_zero():
        raise ThetaNotClosed("theta is not closed")


def twisted_differential(g: LieAlgebra, theta: Form | None, p: int) -> np.ndarray:
    """Matrix of d_theta = d - theta ^ . from grade p to p + 1."""
    D = ce_differential(g, p)
    if theta is None or theta.is_zero():
        return D
    return D - wedge_matrix(theta, p)


def complex_snapshot(g: LieAlgebra, theta: Form | None = None) -> CochainComplexSnapshot:
    if theta is not None:
        _check_theta(g, theta)
    n = g.dim
    mats = [twisted_differential(g, theta, p) for p in range(n + 1)]
    return _snapshot(mats, [comb(n, p) for p in range(n + 1)], g.field)


def betti(g: LieAlgebra) -> list[int]:
    return list(complex_snapshot(g).betti)


def twisted_cohomology(g: LieAlgebra, theta: Form) -> list[int]:
    """dim H^p of (Lambda g*, d - theta ^ .) for p = 0..dim."""
    return list(complex_snapshot(g, theta).betti)


@dataclass(frozen=True)
class ExactnessResult:
    exact: bool
    witness: Form | None


def _min_support_solution(M: np.ndarray, rhs, field, max_exhaustive: int = 16):
    """Solution of M x = rhs with the fewest nonzeros; ties go to the lexicographically first support."""
    ncols = M.shape[1]
    if linalg.solve(M, rhs, field) is None:
        return None
    if ncols > max_exhaustive:
        return linalg.solve(M, rhs, field)
    for size in range(ncols + 1):
        for cols in combinations(range(ncols), size):
            sub = M[:, list(cols)] if cols else field.zeros((M.shape[0], 0))
            y = linalg.solve(sub, rhs, field)
            if y is not None:
                x = field.zeros(ncols)
                for c, v in zip(cols, y):
                    x[c] = v
                return x
    return None


def twisted_exactness(g: LieAlgebra, theta: Form, omega: Form) -> ExactnessResult:
    """Decide whether omega = d_theta(eta) for an invariant 1-form eta."""
    _check_theta(g, theta)
    if omega.dim != g.dim or omega.grade != 2:
        raise ValidationError("omega must be a 2-form on the algebra")
    g.field.check_same(omega.field)
    if not (g.d(omega) - (theta ^ omega)).is_zero():
        raise OmegaNotDThetaClosed("omega is not d_theta-closed")
    D1 = twisted_differential(g, theta, 1)
    x = _min_support_solution(D1, omega.to_vector(), g.field)
    if x is None:
        return ExactnessResult(False, None)
    return ExactnessResult(True, Form.from_vector(g.dim, 1, x, g.field))


# characters and the weight-restricted complexes

@dataclass(frozen=True)
class CharacterWeight:
    """Character with logarithmic derivative lam + i mu; lam, mu are coefficient tuples over the basis of g."""

    lam: tuple
    mu: tuple
    name: str = ""


def trivial_character(dim: int, field) -> CharacterWeight:
    z = (field.zero,) * dim
    return CharacterWeight(z, z, "trivial")


def is_weakly_completely_solvable(split: MetaAbelianSplit, field=None) -> bool:
    """No block weight is a nontrivial unitary character (lam = 0 with mu != 0)."""
    def zero(v):
        return v == 0 if field is None else field.is_zero(v)
    for b in split.blocks:
        if all(zero(v) for v in b.lam) and not all(zero(v) for v in b.mu):
            return False
    return True


def _complex_dual_basis(g: LieAlgebra, split: MetaAbelianSplit):
    """Complexified dual basis adapted to the split: (re, im, weight_lam, weight_mu) per element."""
    f = g.field
    n = g.dim
    zero = (f.zero,) * split.m
    out = []
    for a in split.a_indices:
        out.append((Form.monomial(n, [a], 1, f), Form.zero(n, 1, f), zero, zero))
    for b in split.blocks:
        if b.kind == "real":
            (v,) = b.indices
            out.append((Form.monomial(n, [v], 1, f), Form.zero(n, 1, f), b.lam, zero))
        else:
            v1, v2 = b.indices
            re = Form.monomial(n, [v1], 1, f)
            im = Form.monomial(n, [v2], 1, f)
            out.append((re, im, b.lam, b.mu))
            out.append((re, -im, b.lam, tuple(-x for x in b.mu)))
    return out


def _complex_wedge(x, y):
    (a, b), (c, d) = x, y
    return ((a ^ c) - (b ^ d), (a ^ d) + (b ^ c))


def character_complex_dims(g: LieAlgebra, split: MetaAbelianSplit, character: CharacterWeight) -> list[int]:
    """Cohomology of the weight-alpha part of Lambda g*_C under d + theta_alpha ^ ."""
    f = g.field
    n = g.dim
    validate_split(g, split)
    lam = tuple(f.coerce(v) for v in character.lam)
    mu = tuple(f.coerce(v) for v in character.mu)
    if len(lam) != n or len(mu) != n:
        raise DimensionMismatch(f"character {character.name!r} must have {n} coefficients")
    for row in derived_basis(g):
        for w in (lam, mu):
            if not f.is_zero(sum(r * x for r, x in zip(row, w))):
                raise ValidationError(f"character {character.name!r} does not vanish on [g,g]")
    # Ad_s is trivial on the normal factor, so characters pulled back from T vanish there.
    if any(not f.is_zero(lam[i]) or not f.is_zero(mu[i]) for i in split.n_indices):
        raise CharacterNotRealizable(f"character {character.name!r} is nonzero on the normal factor")
    target = (tuple(lam[i] for i in split.a_indices), tuple(mu[i] for i in split.a_indices))

    elems = _complex_dual_basis(g, split)
    spaces = []
    for p in range(n + 1):
        cols = []
        for subset in combinations(range(len(elems)), p):
            wl = [sum((elems[k][2][l] for k in subset), f.zero) for l in range(split.m)]
            wm = [sum((elems[k][3][l] for k in subset), f.zero) for l in range(split.m)]
            if all(f.eq(x, y) for x, y in zip(wl, target[0])) and all(f.eq(x, y) for x, y in zip(wm, target[1])):
                prod = (Form.monomial(n, [], 1, f), Form.zero(n, 0, f))
                for k in subset:
                    prod = _complex_wedge(prod, (elems[k][0], elems[k][1]))
                cols.append((prod[0].to_vector(), prod[1].to_vector()))
        spaces.append(cols)
    if not any(spaces):
        raise CharacterNotRealizable(f"character {character.name!r} is not a weight of Lambda g*")

    theta_re = Form(n, 1, {mask_of([i]): lam[i] for i in range(n)}, f)
    theta_im = Form(n, 1, {mask_of([i]): mu[i] for i in range(n)}, f)
    ranks = []
    for p in range(n + 1):
        cols = spaces[p]
        if not cols:
            ranks.append(0)
            continue
        X = np.column_stack([c[0] for c in cols])
        Y = np.column_stack([c[1] for c in cols])
        P = ce_differential(g, p) + wedge_matrix(theta_re, p)
        Q = wedge_matrix(theta_im, p)
        if P.shape[0] == 0:
            ranks.append(0)
            continue
        re = P.dot(X) - Q.dot(Y)
        im = P.dot(Y) + Q.dot(X)
        ranks.append(linalg.complex_rank(re, im, f))
    dims = [len(s) for s in spaces]
    return [dims[p] - ranks[p] - (ranks[p - 1] if p else 0) for p in range(n + 1)]


def character_cohomology(g: LieAlgebra, split: MetaAbelianSplit,
                      characters: Sequence[CharacterWeight]) -> list[int]:
    """Sum over the given characters of the weight-restricted twisted complexes' cohomology.

    The characters are taken to be exactly those trivial on the lattice;
    that is the caller's claim and is not checked here.
    """
    total = [0] * (g.dim + 1)
    for ch in characters:
        for p, h in enumerate(character_complex_dims(g, split, ch)):
            total[p] += h
    return total
