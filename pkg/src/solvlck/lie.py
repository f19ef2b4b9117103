"""Lie algebras by structure constants and their Chevalley-Eilenberg differential.

Convention: [e_i, e_j] = sum_k c[i, j, k] e_k, and on 1-forms
d eta(X, Y) = -eta([X, Y]), i.e. d e^k = -sum_{i<j} c[i, j, k] e^i ^ e^j,
extended to all grades as a degree +1 derivation. With this sign a real
weight [X, Y] = Y gives d y* = -x* ^ y*, which is how the Oeljeklaus-Toma
structure equations are usually written.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import comb
from typing import Mapping, Sequence

import numpy as np

from . import linalg
from .errors import (AntisymmetryViolation, DimensionMismatch, JacobiViolation, MalformedBlock,
                     SplitInconsistent, ValidationError)
from .exterior import Form, basis, basis_index, indices_of, mask_of
from .scalars import RATIONAL, Field


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    dim: int
    brackets: np.ndarray
    basis_names: tuple[str, ...]
    field: Field = RATIONAL

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, basis={list(self.basis_names)}, backend={self.field.kind})"

    @cached_property
    def _d_cache(self) -> dict:
        return {}

    def bracket(self, x, y) -> np.ndarray:
        """Bracket of two coordinate vectors."""
        x = np.asarray(x, dtype=self.brackets.dtype)
        y = np.asarray(y, dtype=self.brackets.dtype)
        return np.tensordot(np.tensordot(x, self.brackets, axes=1), y, axes=([0], [0]))

    def ad(self, i: int) -> np.ndarray:
        """Matrix of ad(e_i); column j holds [e_i, e_j]."""
        return np.array(self.brackets[i].T)

    @cached_property
    def d_basis(self) -> tuple[Form, ...]:
        """d e^k for each k."""
        out = []
        n = self.dim
        for k in range(n):
            terms = {}
            for i in range(n):
                for j in range(i + 1, n):
                    c = self.brackets[i, j, k]
                    if not self.field.is_zero(c):
                        terms[mask_of((i, j))] = -c
            out.append(Form(n, 2, terms, self.field))
        return tuple(out)

    def d_monomial(self, mask: int) -> Form:
        idx = indices_of(mask)
        n = self.dim
        out = Form.zero(n, len(idx) + 1, self.field)
        one = self.field.one
        for r, i in enumerate(idx):
            head = Form(n, r, {mask_of(idx[:r]): one}, self.field)
            tail = Form(n, len(idx) - r - 1, {mask_of(idx[r + 1:]): one}, self.field)
            term = head ^ self.d_basis[i] ^ tail
            out = out + (term if r % 2 == 0 else -term)
        return out

    def d(self, form: Form) -> Form:
        if form.dim != self.dim:
            raise DimensionMismatch(f"form of dimension {form.dim} on a {self.dim}-dimensional algebra")
        self.field.check_same(form.field)
        out = Form.zero(self.dim, form.grade + 1, self.field)
        for m, c in form.terms.items():
            out = out + self.d_monomial(m).scale(c)
        return out


def _dense_brackets(dim: int, brackets, field: Field) -> np.ndarray:
    if isinstance(brackets, Mapping):
        c = field.zeros((dim, dim, dim))
        given = set()
        for (i, j), terms in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValidationError(f"brackets: pair ({i},{j}) outside dimension {dim}")
            if (i, j) in given:
                raise ValidationError(f"brackets: pair ({i},{j}) given twice")
            given.add((i, j))
            for k, v in terms.items():
                k = int(k)
                if not 0 <= k < dim:
                    raise ValidationError(f"brackets: index {k} outside dimension {dim}")
                c[i, j, k] = field.coerce(v)
        for (i, j) in given:
            if (j, i) not in given and i != j:
                c[j, i, :] = -c[i, j, :]
        return c
    arr = field.array(brackets)
    if arr.shape != (dim, dim, dim):
        raise DimensionMismatch(f"brackets: expected shape {(dim, dim, dim)}, got {arr.shape}")
    return arr


def new_lie_algebra(dim: int, brackets, field: Field = RATIONAL,
                    basis_names: Sequence[str] | None = None) -> LieAlgebra:
    """Validate structure constants and build a :class:`LieAlgebra`.

    `brackets` is either a dense dim x dim x dim array or a mapping
    {(i, j): {k: c_ijk}}; in the mapping form a pair whose reverse is not
    listed gets the antisymmetric counterpart filled in.
    """
    if dim < 0:
        raise ValidationError("negative dimension")
    c = _dense_brackets(dim, brackets, field)
    scale = 0.0 if c.size == 0 else max(abs(float(v)) for v in c.flat)
    for i in range(dim):
        for j in range(i, dim):
            for k in range(dim):
                if not field.is_zero(c[i, j, k] + c[j, i, k], scale):
                    raise AntisymmetryViolation(i, j)
    if dim:
        # T[i, j, k, l] = [e_i, [e_j, e_k]]_l
        T = np.tensordot(c, c, axes=([2], [1])).transpose(2, 0, 1, 3)
        jac = T + T.transpose(1, 2, 0, 3) + T.transpose(2, 0, 1, 3)
        for i in range(dim):
            for j in range(i + 1, dim):
                for k in range(j + 1, dim):
                    res = jac[i, j, k]
                    worst = max(abs(v) for v in res)
                    if not field.is_zero(worst, scale):
                        raise JacobiViolation(i, j, k, float(worst))
    if basis_names is None:
        basis_names = [f"e{i + 1}" for i in range(dim)]
    if len(basis_names) != dim:
        raise ValidationError(f"{len(basis_names)} basis names for dimension {dim}")
    c.setflags(write=False)
    return LieAlgebra(dim, c, tuple(basis_names), field)


def ce_differential(g: LieAlgebra, p: int) -> np.ndarray:
    """Matrix of d from grade p to grade p + 1 in the lexicographic monomial bases."""
    n = g.dim
    if not 0 <= p <= n:
        raise ValidationError(f"grade {p} outside [0, {n}]")
    cache = g._d_cache
    if p not in cache:
        rows = basis_index(n, p + 1) if p < n else {}
        D = g.field.zeros((len(rows), comb(n, p)))
        if rows:
            for col, m in enumerate(basis(n, p)):
                for mm, v in g.d_monomial(m).terms.items():
                    D[rows[mm], col] = v
        D.setflags(write=False)
        cache[p] = D
    return cache[p]


def derived_dim(g: LieAlgebra) -> int:
    rows = [g.brackets[i, j] for i in range(g.dim) for j in range(i + 1, g.dim)]
    if not rows:
        return 0
    return linalg.rank(np.array(rows), g.field)


def derived_basis(g: LieAlgebra) -> np.ndarray:
    """Rows spanning [g, g], in reduced echelon form."""
    rows = [g.brackets[i, j] for i in range(g.dim) for j in range(i + 1, g.dim)]
    if not rows:
        return g.field.zeros((0, g.dim))
    R, piv = linalg.rref(np.array(rows), g.field)
    return R[:len(piv)]


def is_unimodular(g: LieAlgebra) -> bool:
    return all(g.field.is_zero(sum(g.brackets[i, k, k] for k in range(g.dim))) for i in range(g.dim))


def is_nilpotent(g: LieAlgebra) -> bool:
    """Lower central series g, [g, g], [g, [g, g]], ... reaches zero."""
    n = g.dim
    span = g.field.identity(n)
    r = n
    for _ in range(n + 1):
        if r == 0:
            return True
        rows = [g.bracket(g.field.identity(n)[i], v) for i in range(n) for v in span]
        M = np.array(rows) if rows else g.field.zeros((0, n))
        R, piv = linalg.rref(M, g.field)
        if len(piv) == r:
            return False
        span, r = R[:len(piv)], len(piv)
    return r == 0


# standard algebras

def abelian(n: int, field: Field = RATIONAL) -> LieAlgebra:
    return new_lie_algebra(n, field.zeros((n, n, n)), field)


def heisenberg(n: int = 1, field: Field = RATIONAL) -> LieAlgebra:
    """h(n): basis x1..xn, y1..yn, z with [x_i, y_i] = z."""
    dim = 2 * n + 1
    br = {(i, n + i): {dim - 1: 1} for i in range(n)}
    names = [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)] + ["z"]
    if n == 1:
        names = ["x", "y", "z"]
    return new_lie_algebra(dim, br, field, names)


def direct_sum(g: LieAlgebra, h: LieAlgebra) -> LieAlgebra:
    g.field.check_same(h.field)
    n = g.dim + h.dim
    c = g.field.zeros((n, n, n))
    c[:g.dim, :g.dim, :g.dim] = g.brackets
    c[g.dim:, g.dim:, g.dim:] = h.brackets
    return new_lie_algebra(n, c, g.field, g.basis_names + h.basis_names)


def semidirect(matrices: Sequence, field: Field = RATIONAL,
               basis_names: Sequence[str] | None = None) -> LieAlgebra:
    """R^m semidirect R^n with [A_l, e_j] = sum_i D_l[i, j] e_i for commuting matrices D_l."""
    Ds = [field.array(D) for D in matrices]
    m = len(Ds)
    k = Ds[0].shape[0] if Ds else 0
    n = m + k
    c = field.zeros((n, n, n))
    for l, D in enumerate(Ds):
        if D.shape != (k, k):
            raise DimensionMismatch("all derivation matrices must be square of one size")
        for j in range(k):
            for i in range(k):
                c[l, m + j, m + i] = D[i, j]
                c[m + j, l, m + i] = -D[i, j]
    return new_lie_algebra(n, c, field, basis_names)


# meta-abelian splittings

@dataclass(frozen=True)
class WeightBlock:
    """One ad(a)-invariant block of the normal factor.

    For a real block [X, v] = lam(X) v; for a complex block on (v1, v2),
    ad X acts by lam(X) I + mu(X) R with R v1 = v2, R v2 = -v1.
    lam and mu are coefficient tuples over the abelian factor's basis.
    """

    kind: str
    indices: tuple[int, ...]
    lam: tuple
    mu: tuple


@dataclass(frozen=True)
class MetaAbelianSplit:
    a_indices: tuple[int, ...]
    blocks: tuple[WeightBlock, ...] = dc_field(default_factory=tuple)

    @property
    def n_indices(self) -> tuple[int, ...]:
        return tuple(i for b in self.blocks for i in b.indices)

    @property
    def m(self) -> int:
        return len(self.a_indices)

    @property
    def n(self) -> int:
        return len(self.n_indices)


def _check_block(kind: str, lam, mu, m: int, field: Field) -> tuple[tuple, tuple]:
    if kind not in ("real", "complex"):
        raise MalformedBlock(f"block kind must be 'real' or 'complex', got {kind!r}")
    lam = tuple(field.coerce(v) for v in lam)
    mu = tuple(field.coerce(v) for v in (mu if mu is not None else [0] * m))
    if len(lam) != m or len(mu) != m:
        raise MalformedBlock(f"block weights must have length {m}")
    if kind == "real" and any(not field.is_zero(v) for v in mu):
        raise MalformedBlock("real blocks carry no rotation part (mu must be 0)")
    return lam, mu


def split_brackets(dim: int, split: MetaAbelianSplit, field: Field) -> np.ndarray:
    """Dense structure constants determined by a split."""
    c = field.zeros((dim, dim, dim))
    for b in split.blocks:
        for l, a in enumerate(split.a_indices):
            lam, mu = b.lam[l], b.mu[l]
            if b.kind == "real":
                (v,) = b.indices
                c[a, v, v] = lam
                c[v, a, v] = -lam
            else:
                v1, v2 = b.indices
                c[a, v1, v1] = lam
                c[a, v1, v2] = mu
                c[a, v2, v1] = -mu
                c[a, v2, v2] = lam
                c[v1, a] = -c[a, v1]
                c[v2, a] = -c[a, v2]
    return c


def build_meta_abelian(m: int, blocks: Sequence, field: Field = RATIONAL,
                       basis_names: Sequence[str] | None = None) -> tuple[LieAlgebra, MetaAbelianSplit]:
    """a semidirect n with a = R^m on the first m basis vectors, blocks following in order.

    Each block is a mapping with keys 'kind', 'lam', 'mu' (mu optional for
    real blocks) or an object with those attributes.
    """
    out = []
    nxt = m
    for spec in blocks:
        get = spec.get if isinstance(spec, Mapping) else (lambda k, d=None, s=spec: getattr(s, k, d))
        kind = get("kind")
        lam, mu = _check_block(kind, get("lam"), get("mu"), m, field)
        width = 1 if kind == "real" else 2
        out.append(WeightBlock(kind, tuple(range(nxt, nxt + width)), lam, mu))
        nxt += width
    split = MetaAbelianSplit(tuple(range(m)), tuple(out))
    if basis_names is None:
        basis_names = [f"a{i + 1}" for i in range(m)] + [f"n{i + 1}" for i in range(nxt - m)]
    g = new_lie_algebra(nxt, split_brackets(nxt, split, field), field, basis_names)
    return g, split


def validate_split(g: LieAlgebra, split: MetaAbelianSplit) -> None:
    idx = list(split.a_indices) + list(split.n_indices)
    if sorted(idx) != list(range(g.dim)):
        raise SplitInconsistent("split indices do not partition the basis")
    for b in split.blocks:
        _check_block(b.kind, b.lam, b.mu, split.m, g.field)
        if len(b.indices) != (1 if b.kind == "real" else 2):
            raise SplitInconsistent(f"{b.kind} block with {len(b.indices)} indices")
    c = split_brackets(g.dim, split, g.field)
    scale = max([abs(float(v)) for v in g.brackets.flat] + [0.0])
    for idx3 in np.ndindex(c.shape):
        if not g.field.is_zero(c[idx3] - g.brackets[idx3], scale):
            i, j, _ = idx3
            raise SplitInconsistent(f"split disagrees with the bracket [e{i},e{j}]")


@dataclass(frozen=True)
class SplitCheck:
    reduced: MetaAbelianSplit
    trivial_part_dim: int
    derived_dim: int


def split_check(g: LieAlgebra, split: MetaAbelianSplit) -> SplitCheck:
    """Move zero-weight blocks into the abelian factor so that [a, n] = n."""
    validate_split(g, split)
    zero = [b for b in split.blocks
            if all(g.field.is_zero(v) for v in b.lam) and all(g.field.is_zero(v) for v in b.mu)]
    keep = [b for b in split.blocks if b not in zero]
    moved = tuple(i for b in zero for i in b.indices)
    pad = (g.field.zero,) * len(moved)
    reduced = MetaAbelianSplit(split.a_indices + moved,
                               tuple(WeightBlock(b.kind, b.indices, b.lam + pad, b.mu + pad) for b in keep))
    dd = derived_dim(g)
    if dd != reduced.n:
        raise SplitInconsistent(f"reduced normal factor has dimension {reduced.n} but dim [g,g] = {dd}")
    return SplitCheck(reduced, len(moved), dd)


def inoue_s0(c=1, field: Field = RATIONAL) -> tuple[LieAlgebra, MetaAbelianSplit]:
    """R semidirect (R x C) with weights e^t and e^(-t/2 + i c t)."""
    half = field.coerce(-1) / 2
    return build_meta_abelian(1, [{"kind": "real", "lam": [1]},
                                  {"kind": "complex", "lam": [half], "mu": [c]}],
                              field, ["alpha", "beta", "gamma1", "gamma2"])
