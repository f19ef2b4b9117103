"""From a defining polynomial to an Oeljeklaus-Toma Lie algebra.

Units are searched in the equation order Z[x]/(f), not the full ring of
integers; any finite-index unit subgroup of full rank yields the same Lie
algebra up to the choice of generators, and the output records the caveat.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field, replace
from itertools import product
from typing import Sequence

import numpy as np

from . import linalg
from .errors import (InsufficientUnits, SignatureMismatch, SingularProjection, ValidationError,
                     ZeroEmbedding)
from .exterior import Form
from .lck import ComplexStructure, complex_structure_from_pairs
from .lie import LieAlgebra, MetaAbelianSplit, build_meta_abelian
from .scalars import RATIONAL, Field, approx

log = logging.getLogger(__name__)

ROOT_RESIDUAL = 1e-12
NORM_TOL = 1e-6
RANK_TOL = 1e-8
ORDER_NOTE = "units taken in the equation order Z[x]/(f), which may be a proper suborder of O_K"


@dataclass(frozen=True)
class OTFieldData:
    poly: tuple[int, ...]                 # c0, c1, ..., 1 (constant term first)
    s: int
    t: int
    real_embeddings: tuple[float, ...] = ()
    complex_embeddings: tuple[complex, ...] = ()
    units: tuple[tuple[int, ...], ...] = ()
    U_generators: tuple[tuple[int, ...], ...] = ()
    v_basis: tuple[tuple[float, ...], ...] = ()
    b: tuple[tuple[float, ...], ...] = ()
    c: tuple[tuple[float, ...], ...] = ()
    irreducibility: str = ""
    notes: tuple[str, ...] = dc_field(default_factory=tuple)

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    @property
    def roots(self) -> tuple[complex, ...]:
        """All embeddings: reals, then each complex representative followed by its conjugate."""
        out = [complex(r) for r in self.real_embeddings]
        for z in self.complex_embeddings:
            out += [z, z.conjugate()]
        return tuple(out)


# polynomial helpers

def _check_poly(poly: Sequence[int]) -> tuple[int, ...]:
    p = tuple(int(c) for c in poly)
    if any(int(c) != c for c in poly):
        raise ValidationError("polynomial coefficients must be integers")
    if len(p) < 2 or p[-1] != 1:
        raise ValidationError("polynomial must be monic of degree >= 1 (coefficients constant term first)")
    return p


def _divisors(n: int) -> list[int]:
    n = abs(n)
    ds = [d for d in range(1, n + 1) if n % d == 0]
    return ds + [-d for d in ds]


def _eval_int(poly: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def irreducibility_status(poly: Sequence[int]) -> str:
    """'irreducible' or 'reducible' for degree <= 4, else 'attested' (not checked)."""
    p = _check_poly(poly)
    deg = len(p) - 1
    if deg > 4:
        return "attested"
    if deg == 1:
        return "irreducible"
    if p[0] == 0 or any(_eval_int(p, r) == 0 for r in _divisors(p[0])):
        return "reducible"
    if deg == 4:
        c0, c1, c2, c3 = p[:4]
        # (x^2 + a x + b)(x^2 + c x + d) with b d = c0, a + c = c3, b + d + a c = c2, a d + b c = c1
        for b in _divisors(c0):
            d = c0 // b
            s_, q = c3, c2 - b - d
            disc = s_ * s_ - 4 * q
            if disc < 0:
                continue
            r = int(round(disc ** 0.5))
            while r * r > disc:
                r -= 1
            while (r + 1) * (r + 1) <= disc:
                r += 1
            if r * r != disc or (s_ + r) % 2:
                continue
            for a in {(s_ + r) // 2, (s_ - r) // 2}:
                c = s_ - a
                if a * d + b * c == c1:
                    return "reducible"
    return "irreducible"


def mul_mod(a: Sequence[int], b: Sequence[int], poly: Sequence[int]) -> tuple[int, ...]:
    """Product in Z[x]/(poly) on coefficient vectors (constant term first)."""
    d = len(poly) - 1
    prod = [0] * (2 * d - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] += x * y
    for k in range(len(prod) - 1, d - 1, -1):
        lead = prod[k]
        if lead:
            for i in range(d + 1):
                prod[k - d + i] -= lead * poly[i]
    return tuple(prod[:d])


def exact_norm(a: Sequence[int], poly: Sequence[int]) -> int:
    """Norm of a(theta) as the determinant of multiplication by a on Z[theta]."""
    d = len(poly) - 1
    cols = []
    for j in range(d):
        e = [0] * d
        e[j] = 1
        cols.append(mul_mod(a, e, poly))
    M = RATIONAL.array(np.array(cols, dtype=object).T)
    return int(linalg.det(M, RATIONAL))


def _polish(poly: Sequence[int], z: complex) -> complex:
    coeffs = list(reversed(poly))
    dcoeffs = np.polyder(coeffs)
    dz = np.polyval(dcoeffs, z)
    return z - np.polyval(coeffs, z) / dz if dz != 0 else z


# pipeline steps

def embeddings(poly: Sequence[int], s: int, t: int) -> tuple[tuple[float, ...], tuple[complex, ...]]:
    """Real roots ascending and upper-half-plane representatives of the complex pairs.

    Roots come from the companion-matrix eigenvalues (numpy.roots) followed by
    one Newton step.
    """
    p = _check_poly(poly)
    deg = len(p) - 1
    if s < 0 or t < 0 or s + 2 * t != deg:
        raise SignatureMismatch(f"signature ({s}, {t}) impossible for degree {deg}")
    roots = [_polish(p, complex(z)) for z in np.roots(list(reversed(p)))]
    scale = max(1.0, max(abs(z) for z in roots))
    real = sorted(z.real for z in roots if abs(z.imag) <= 1e-9 * scale)
    upper = sorted((z for z in roots if z.imag > 1e-9 * scale), key=lambda z: (z.real, z.imag))
    if len(real) != s or len(upper) != t:
        raise SignatureMismatch(f"polynomial has {len(real)} real roots, expected {s}")
    for z in list(real) + upper:
        if abs(np.polyval(list(reversed(p)), z)) > ROOT_RESIDUAL * scale ** deg:
            log.warning("root %s has residual above %g", z, ROOT_RESIDUAL)
    return tuple(float(r) for r in real), tuple(complex(z) for z in upper)


def field_data(poly: Sequence[int], s: int, t: int) -> OTFieldData:
    p = _check_poly(poly)
    real, cplx = embeddings(p, s, t)
    status = irreducibility_status(p)
    if status == "reducible":
        raise ValidationError("polynomial is reducible over Q")
    return OTFieldData(p, s, t, real, cplx, irreducibility=status, notes=(ORDER_NOTE,))


def embedding_values(data: OTFieldData, u: Sequence[int]) -> np.ndarray:
    """sigma_i(u) for every root in `data.roots` order."""
    r = np.array(data.roots)
    return np.array([sum(c * z ** k for k, c in enumerate(u)) for z in r])


def unit_search(data: OTFieldData, coeff_bound: int) -> list[tuple[int, ...]]:
    """Units of Z[theta] with coefficients bounded by `coeff_bound`, up to sign, excluding +-1.

    Candidates are screened with floating norms and confirmed with the exact
    integer norm; the result is sorted lexicographically.
    """
    d = data.degree
    if coeff_bound <= 0:
        return []
    vecs = np.array(list(product(range(-coeff_bound, coeff_bound + 1), repeat=d)), dtype=float)
    powers = np.array([[z ** k for z in data.roots] for k in range(d)])
    vals = vecs @ powers
    norms = np.prod(vals, axis=1).real
    found = set()
    for row in np.nonzero(np.abs(np.abs(norms) - 1.0) < NORM_TOL)[0]:
        u = tuple(int(v) for v in vecs[row])
        first = next(v for v in u if v)
        if first < 0:
            u = tuple(-v for v in u)
        if u == (1,) + (0,) * (d - 1):
            continue
        if abs(exact_norm(u, data.poly)) == 1:
            found.add(u)
    return sorted(found)


def totally_positive(data: OTFieldData, units: Sequence[Sequence[int]]) -> tuple[list[tuple[int, ...]], dict]:
    """Units positive at every real embedding.

    A unit failing that test is replaced by its negative when that fixes
    every sign, otherwise by its square. Returns (units, {replacement: original}).
    """
    out: list[tuple[int, ...]] = []
    replaced = {}
    s = data.s
    for u in units:
        u = tuple(u)
        re = embedding_values(data, u)[:s].real
        if np.all(re > 0):
            cand = u
        elif np.all(re < 0):
            cand = tuple(-v for v in u)
            replaced[cand] = u
        else:
            cand = mul_mod(u, u, data.poly)
            replaced[cand] = u
        if cand not in out:
            out.append(cand)
    return out, replaced


def log_embedding(data: OTFieldData, u: Sequence[int]) -> np.ndarray:
    """(log|sigma_1|, ..., log|sigma_s|, 2 log|sigma_{s+1}|, ..., 2 log|sigma_{s+t}|)."""
    if data.t < 1:
        raise SignatureMismatch("the Oeljeklaus-Toma pipeline needs t >= 1")
    vals = embedding_values(data, u)
    s, t = data.s, data.t
    picked = np.concatenate([vals[:s], vals[s::2][:t]])
    mags = np.abs(picked)
    if np.any(mags == 0):
        raise ZeroEmbedding(f"{tuple(u)} has a zero embedding")
    out = np.log(mags)
    out[s:] *= 2
    return out


def select_U(data: OTFieldData, candidates: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Greedily pick s units whose projected log vectors are independent.

    Candidates are tried shortest log vector first, preferring a positive
    first projected coordinate, then lexicographically.
    """
    s = data.s
    scored = []
    for u in candidates:
        v = log_embedding(data, u)
        norm = float(np.linalg.norm(v))
        if norm <= RANK_TOL:
            continue  # torsion
        lead = next((x for x in v[:s] if abs(x) > RANK_TOL), 0.0)
        scored.append((round(norm, 8), 0 if lead > 0 else 1, tuple(u), v[:s]))
    scored.sort(key=lambda r: r[:3])
    chosen: list[tuple[int, ...]] = []
    rows: list[np.ndarray] = []
    for *_, u, proj in scored:
        trial = np.array(rows + [proj])
        if np.linalg.matrix_rank(trial, tol=RANK_TOL * max(1.0, float(np.max(np.abs(trial))))) == len(rows) + 1:
            chosen.append(u)
            rows.append(proj)
            if len(chosen) == s:
                return chosen
    raise InsufficientUnits(f"found {len(chosen)} independent totally positive units, need {s}")


def compute_bc(data: OTFieldData) -> tuple[np.ndarray, np.ndarray]:
    """Solve sum_j a_ij v_j = e_i + sum_k b_ik e_{s+k} and read c from the complex arguments.

    Arguments are taken on the branch (-pi, pi]; c is therefore the solution
    for these particular generators only.
    """
    s, t = data.s, data.t
    if len(data.U_generators) != s:
        raise InsufficientUnits("U must have s generators before computing b and c")
    V = np.array([log_embedding(data, u) for u in data.U_generators])
    P = V[:, :s]
    if abs(np.linalg.det(P)) <= RANK_TOL * max(1.0, float(np.max(np.abs(P)))) ** s:
        raise SingularProjection("projected log vectors of U are linearly dependent")
    A = np.linalg.inv(P)              # row i of A expresses e_i through the v_j
    b = A @ V[:, s:]
    R = np.empty((s, t))
    for j, u in enumerate(data.U_generators):
        vals = embedding_values(data, u)[s::2][:t]
        ang = np.angle(vals)
        ang[ang <= -np.pi] = np.pi
        R[j] = ang
    c = A @ R
    return b, c


def run_pipeline(poly: Sequence[int], s: int, t: int, coeff_bound: int) -> OTFieldData:
    data = field_data(poly, s, t)
    found = unit_search(data, coeff_bound)
    positive, replaced = totally_positive(data, found)
    notes = list(data.notes)
    for new, old in sorted(replaced.items()):
        notes.append(f"unit {list(old)} replaced by {list(new)} for total positivity")
    data = replace(data, units=tuple(sorted(positive)), notes=tuple(notes))
    gens = select_U(data, positive)
    v = tuple(tuple(float(x) for x in log_embedding(data, u)) for u in gens)
    data = replace(data, U_generators=tuple(gens), v_basis=v)
    b, c = compute_bc(data)
    return replace(data, b=tuple(map(tuple, b.tolist())), c=tuple(map(tuple, c.tolist())))


# the Lie algebra

@dataclass(frozen=True, eq=False)
class OTBuild:
    algebra: LieAlgebra
    split: MetaAbelianSplit
    J: ComplexStructure
    omega: Form | None
    theta: Form | None


def ot_basis_names(s: int, t: int) -> list[str]:
    return ([f"alpha{i + 1}" for i in range(s)] + [f"beta{i + 1}" for i in range(s)]
            + [f"gamma{i + 1}" for i in range(2 * t)])


def ot_algebra(b, c, field: Field = RATIONAL) -> OTBuild:
    """OT Lie algebra from s x t matrices b, c.

    Basis alpha_1..alpha_s, beta_1..beta_s, gamma_1..gamma_2t. Real blocks
    have weights e_i, complex block k has lam = b[:, k] / 2, mu = c[:, k].
    J is given by the (1,0)-forms alpha_i + i beta_i and gamma_{2k-1} + i gamma_{2k}.
    For t = 1 the LCK form and its Lee form sum(alpha_i) are attached.
    """
    b = [[field.coerce(x) for x in row] for row in b]
    c = [[field.coerce(x) for x in row] for row in c]
    s = len(b)
    t = len(b[0]) if s else 0
    if s == 0 or t == 0 or len(c) != s or any(len(r) != t for r in b + c):
        raise ValidationError("b and c must both be s x t with s, t >= 1")
    blocks = []
    for i in range(s):
        blocks.append({"kind": "real", "lam": [field.one if l == i else field.zero for l in range(s)]})
    for k in range(t):
        blocks.append({"kind": "complex", "lam": [b[i][k] / 2 for i in range(s)], "mu": [c[i][k] for i in range(s)]})
    g, split = build_meta_abelian(s, blocks, field, ot_basis_names(s, t))
    n = g.dim
    pairs = [(i, s + i) for i in range(s)] + [(2 * s + 2 * k, 2 * s + 2 * k + 1) for k in range(t)]
    J = complex_structure_from_pairs(n, pairs, field)
    omega = theta = None
    if t == 1:
        omega, theta = ot_lck_form(s, field)
    return OTBuild(g, split, J, omega, theta)


def ot_lck_form(s: int, field: Field = RATIONAL) -> tuple[Form, Form]:
    """sum_i 2 alpha_i ^ beta_i + sum_{i != j} alpha_i ^ beta_j + gamma_1 ^ gamma_2, with theta = sum alpha_i."""
    n = 2 * s + 2
    items = [([i, s + j], 2 if i == j else 1) for i in range(s) for j in range(s)]
    items.append(([2 * s, 2 * s + 1], 1))
    omega = Form.from_terms(n, 2, items, field)
    theta = Form.from_terms(n, 1, [([i], 1) for i in range(s)], field)
    return omega, theta


def build_ot(data: OTFieldData, field: Field | None = None) -> OTBuild:
    if not data.b or not data.c:
        raise ValidationError("run compute_bc before build_ot")
    return ot_algebra(data.b, data.c, field or approx())
