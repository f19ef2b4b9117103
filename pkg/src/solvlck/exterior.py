"""Sparse exterior algebra on the dual of an n-dimensional space.

Monomials e^{i_1} ^ ... ^ e^{i_p} (i_1 < ... < i_p) are stored as bitmasks,
so n is limited to 64. Grade-p monomials are ordered lexicographically by
their index tuples; that order fixes the coordinates of every matrix built
on top of this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import linalg
from .errors import DimensionMismatch, NotPositiveDefinite, ValidationError
from .scalars import RATIONAL, Field

MAX_DIM = 64


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def grade_of(mask: int) -> int:
    return bin(mask).count("1")


def wedge_sign(a: int, b: int) -> int:
    """Sign of e^A ^ e^B relative to e^(A|B) for disjoint masks: parity of pairs i in A, j in B with i > j."""
    inversions = 0
    rest = b
    while rest:
        low = rest & -rest
        j = low.bit_length() - 1
        inversions += grade_of(a >> (j + 1))
        rest ^= low
    return -1 if inversions & 1 else 1


@lru_cache(maxsize=None)
def basis(n: int, p: int) -> tuple[int, ...]:
    """Grade-p monomial masks in lexicographic order of index tuples."""
    return tuple(mask_of(c) for c in combinations(range(n), p))


@lru_cache(maxsize=None)
def basis_index(n: int, p: int) -> dict[int, int]:
    return {m: r for r, m in enumerate(basis(n, p))}


def monomial_rank(indices: Sequence[int], n: int) -> int:
    """Lexicographic rank of a strictly increasing index set among grade-len(indices) monomials."""
    idx = tuple(indices)
    p = len(idx)
    if any(b <= a for a, b in zip(idx, idx[1:])) or any(not 0 <= i < n for i in idx):
        raise ValidationError(f"{list(idx)} is not a strictly increasing subset of range({n})")
    return comb(n, p) - 1 - sum(comb(n - 1 - c, p - k) for k, c in enumerate(idx))


def monomial_unrank(rank: int, n: int, p: int) -> tuple[int, ...]:
    total = comb(n, p)
    if not 0 <= rank < total:
        raise ValidationError(f"rank {rank} out of range for grade {p} in dimension {n}")
    # complement trick: colex rank of the reversed-index set
    r = total - 1 - rank
    out = []
    k = p
    for _ in range(p):
        c = k - 1
        while comb(c + 1, k) <= r:
            c += 1
        r -= comb(c, k)
        out.append(n - 1 - c)
        k -= 1
    return tuple(out)


@dataclass(frozen=True, eq=False)
class Form:
    """Homogeneous element of the exterior algebra; `terms` maps monomial masks to nonzero coefficients."""

    dim: int
    grade: int
    terms: Mapping[int, object] = dc_field(default_factory=dict)
    field: Field = RATIONAL

    def __post_init__(self):
        if not 0 <= self.dim <= MAX_DIM:
            raise ValidationError(f"dimension {self.dim} outside [0, {MAX_DIM}]")
        if not 0 <= self.grade:
            raise ValidationError(f"negative grade {self.grade}")
        clean = {}
        top = 1 << self.dim
        for m, c in self.terms.items():
            if m >= top or m < 0:
                raise ValidationError(f"monomial {indices_of(m)} outside dimension {self.dim}")
            if grade_of(m) != self.grade:
                raise ValidationError(f"monomial {indices_of(m)} does not have grade {self.grade}")
            c = self.field.coerce(c)
            if not self.field.is_zero(c):
                clean[m] = c
        object.__setattr__(self, "terms", clean)

    # construction

    @classmethod
    def zero(cls, dim: int, grade: int, field: Field = RATIONAL) -> "Form":
        return cls(dim, grade, {}, field)

    @classmethod
    def monomial(cls, dim: int, indices: Sequence[int], coeff=1, field: Field = RATIONAL) -> "Form":
        idx = list(indices)
        if len(set(idx)) != len(idx):
            return cls.zero(dim, len(idx), field)
        order = sorted(range(len(idx)), key=lambda k: idx[k])
        # parity of the sorting permutation
        sign = 1
        seen = [False] * len(idx)
        for start in range(len(idx)):
            if seen[start]:
                continue
            length = 0
            k = start
            while not seen[k]:
                seen[k] = True
                k = order[k]
                length += 1
            if length % 2 == 0:
                sign = -sign
        c = field.coerce(coeff)
        return cls(dim, len(idx), {mask_of(idx): c if sign > 0 else -c}, field)

    @classmethod
    def from_terms(cls, dim: int, grade: int, items: Iterable[tuple[Sequence[int], object]],
                   field: Field = RATIONAL) -> "Form":
        out = cls.zero(dim, grade, field)
        for indices, coeff in items:
            out = out + cls.monomial(dim, indices, coeff, field)
        return out

    @classmethod
    def from_vector(cls, dim: int, grade: int, vec, field: Field = RATIONAL) -> "Form":
        masks = basis(dim, grade)
        if len(vec) != len(masks):
            raise DimensionMismatch(f"vector of length {len(vec)} for grade {grade} in dimension {dim}")
        return cls(dim, grade, {m: c for m, c in zip(masks, vec)}, field)

    # access

    def to_vector(self) -> np.ndarray:
        idx = basis_index(self.dim, self.grade)
        v = self.field.zeros(len(idx))
        for m, c in self.terms.items():
            v[idx[m]] = c
        return v

    def coeff(self, indices: Sequence[int]):
        m = Form.monomial(self.dim, indices, 1, self.field)
        if not m.terms:
            return self.field.zero
        (mask, sign), = m.terms.items()
        return sign * self.terms.get(mask, self.field.zero)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def support(self) -> tuple[tuple[int, ...], ...]:
        return tuple(indices_of(m) for m in sorted(self.terms, key=basis_index(self.dim, self.grade).get))

    def restrict(self, allowed_mask: int) -> "Form":
        """Keep only the monomials lying inside `allowed_mask`."""
        return Form(self.dim, self.grade, {m: c for m, c in self.terms.items() if m & ~allowed_mask == 0},
                    self.field)

    # arithmetic

    def _check(self, other: "Form") -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"forms live in dimensions {self.dim} and {other.dim}")
        self.field.check_same(other.field)

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        if self.grade != other.grade and self.terms and other.terms:
            raise ValidationError(f"cannot add forms of grades {self.grade} and {other.grade}")
        grade = self.grade if self.terms or not other.terms else other.grade
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, self.field.zero) + c
        return Form(self.dim, grade, out, self.field)

    def __neg__(self) -> "Form":
        return Form(self.dim, self.grade, {m: -c for m, c in self.terms.items()}, self.field)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, c) -> "Form":
        c = self.field.coerce(c)
        return Form(self.dim, self.grade, {m: c * v for m, v in self.terms.items()}, self.field)

    def __rmul__(self, c) -> "Form":
        return self.scale(c)

    def wedge(self, other: "Form") -> "Form":
        self._check(other)
        out: dict[int, object] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                if ma & mb:
                    continue
                m = ma | mb
                v = ca * cb
                out[m] = out.get(m, self.field.zero) + (v if wedge_sign(ma, mb) > 0 else -v)
        return Form(self.dim, self.grade + other.grade, out, self.field)

    __xor__ = wedge

    def power(self, k: int) -> "Form":
        out = Form.monomial(self.dim, (), 1, self.field)
        for _ in range(k):
            out = out ^ self
        return out

    def equals(self, other: "Form") -> bool:
        """Equality up to the field tolerance; zero forms of different grade compare equal."""
        self._check(other)
        if self.grade != other.grade and (self.terms or other.terms):
            return False
        keys = set(self.terms) | set(other.terms)
        z = self.field.zero
        return all(self.field.eq(self.terms.get(m, z), other.terms.get(m, z)) for m in keys)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return self.dim == other.dim and self.field.kind == other.field.kind and self.equals(other)

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return f"Form(0, grade={self.grade})"
        parts = [f"{c}*e{list(idx)}" for idx, c in zip(self.support, (self.coeff(i) for i in self.support))]
        return "Form(" + " + ".join(parts) + ")"


def wedge(a: Form, b: Form) -> Form:
    return a.wedge(b)


def wedge_matrix(theta: Form, p: int) -> np.ndarray:
    """Matrix of x -> theta ^ x from grade p to grade p + |theta|."""
    n = theta.dim
    q = p + theta.grade
    rows = basis_index(n, q) if q <= n else {}
    M = theta.field.zeros((len(rows), comb(n, p)))
    if not rows:
        return M
    for col, mb in enumerate(basis(n, p)):
        for ma, ca in theta.terms.items():
            if ma & mb:
                continue
            M[rows[ma | mb], col] += ca if wedge_sign(ma, mb) > 0 else -ca
    return M


def gram_matrix(metric, p: int, field: Field = RATIONAL) -> np.ndarray:
    """Gram matrix on grade-p monomials of the inner product induced by `metric` on grade 1.

    Entry (I, J) is det(metric[I, J]). The metric is checked to be symmetric
    positive definite first.
    """
    G = field.array(metric)
    n = G.shape[0]
    if G.shape != (n, n):
        raise DimensionMismatch("metric must be square")
    if field.exact:
        symmetric = all(G[i, j] == G[j, i] for i in range(n) for j in range(i))
    else:
        symmetric = np.allclose(G, G.T, rtol=0, atol=field.tol * max(1.0, float(np.max(np.abs(G))) if n else 1.0))
    if not symmetric or not linalg.is_positive_definite(G, field):
        raise NotPositiveDefinite("metric is not symmetric positive definite")
    masks = [indices_of(m) for m in basis(n, p)]
    out = field.zeros((len(masks), len(masks)))
    for a, I in enumerate(masks):
        for b in range(a, len(masks)):
            J = masks[b]
            v = linalg.det(G[np.ix_(I, J)], field) if p else field.one
            out[a, b] = out[b, a] = v
    return out
