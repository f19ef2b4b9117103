from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from solvlck.errors import AntisymmetryViolation, JacobiViolation, MalformedBlock, SplitInconsistent
from solvlck.exterior import Form
from solvlck.lie import (MetaAbelianSplit, WeightBlock, abelian, build_meta_abelian, ce_differential, derived_dim,
                         direct_sum, heisenberg, inoue_s0, is_nilpotent, is_unimodular, new_lie_algebra,
                         split_check, validate_split)
from solvlck.scalars import RATIONAL

from conftest import semidirect_algebras
from oracles import ce_matrix_by_evaluation


def test_heisenberg_differential():
    h = heisenberg(1)
    z = Form.monomial(3, [2])
    assert h.d(z).equals(Form.monomial(3, [0, 1], -1))
    assert h.d(Form.monomial(3, [0])).is_zero()


@pytest.mark.parametrize("c", [1, Fraction(-3, 2), 0])
def test_inoue_structure_equations(c):
    g, _ = inoue_s0(c)
    e = lambda *ix: Form.monomial(4, ix)
    assert g.d(e(1)).equals(-e(0, 1))
    assert g.d(e(2)).equals(e(0, 2).scale(Fraction(1, 2)) + e(0, 3).scale(c))
    assert g.d(e(3)).equals(e(0, 3).scale(Fraction(1, 2)) - e(0, 2).scale(c))


def test_antisymmetry_violation_names_pair():
    with pytest.raises(AntisymmetryViolation, match=r"\(1,2\)"):
        new_lie_algebra(3, {(1, 2): {0: 1}, (2, 1): {0: 1}})


def test_jacobi_violation():
    with pytest.raises(JacobiViolation):
        new_lie_algebra(3, {(0, 1): {1: 1}, (0, 2): {2: 1}, (1, 2): {0: 1}})


def test_reverse_pair_is_filled():
    g = new_lie_algebra(2, {(0, 1): {1: 1}})
    assert g.brackets[1, 0, 1] == -1


@pytest.mark.parametrize("g", [heisenberg(1), heisenberg(2), inoue_s0(2)[0], abelian(3),
                               direct_sum(heisenberg(1), abelian(1))], ids=repr)
def test_differential_matches_evaluation_formula(g):
    for p in range(g.dim):
        assert (ce_differential(g, p) == ce_matrix_by_evaluation(g.brackets, p)).all()


@given(semidirect_algebras())
def test_differential_matches_evaluation_formula_random(g):
    for p in range(g.dim):
        assert (ce_differential(g, p) == ce_matrix_by_evaluation(g.brackets, p)).all()


@given(semidirect_algebras())
def test_d_squared_zero(g):
    for p in range(g.dim - 1):
        assert not ce_differential(g, p + 1).dot(ce_differential(g, p)).any()


@pytest.mark.parametrize("g,unimod,nilp,dd", [
    (heisenberg(1), True, True, 1),
    (heisenberg(2), True, True, 1),
    (abelian(4), True, True, 0),
    (inoue_s0(1)[0], True, False, 3),
    (build_meta_abelian(1, [{"kind": "real", "lam": [1]}])[0], False, False, 1),
], ids=["h1", "h2", "R4", "inoue", "aff"])
def test_structural_predicates(g, unimod, nilp, dd):
    assert is_unimodular(g) is unimod
    assert is_nilpotent(g) is nilp
    assert derived_dim(g) == dd


def test_split_check_moves_zero_weights():
    g, split = build_meta_abelian(1, [{"kind": "real", "lam": [1]}, {"kind": "real", "lam": [0]}])
    sc = split_check(g, split)
    assert (sc.reduced.m, sc.reduced.n, sc.trivial_part_dim, sc.derived_dim) == (2, 1, 1, 1)


def test_inconsistent_split():
    g, split = inoue_s0(1)
    bad = MetaAbelianSplit(split.a_indices, (WeightBlock("real", (1,), (Fraction(2),), (Fraction(0),)),)
                           + split.blocks[1:])
    with pytest.raises(SplitInconsistent):
        validate_split(g, bad)


@pytest.mark.parametrize("block", [
    {"kind": "real", "lam": [1, 2]},
    {"kind": "real", "lam": [1], "mu": [1]},
    {"kind": "spiral", "lam": [1]},
])
def test_malformed_blocks(block):
    with pytest.raises(MalformedBlock):
        build_meta_abelian(1, [block])


def test_float_backend_absorbs_rounding_noise():
    from solvlck.scalars import approx
    g, _ = inoue_s0(1, approx())
    c = np.array(g.brackets, dtype=float)
    c[0, 2, 2] += 1e-13
    c[2, 0, 2] -= 1e-13
    assert new_lie_algebra(4, c, approx()).dim == 4
    with pytest.raises(AntisymmetryViolation):
        bad = c.copy()
        bad[0, 2, 2] += 1e-3
        new_lie_algebra(4, bad, approx())


@pytest.mark.parametrize("s,t", [(1, 1), (2, 1), (1, 2), (3, 1)])
def test_ot_derived_dimension(s, t):
    from solvlck.ot import ot_algebra
    b = [[Fraction(-1, t)] * t for _ in range(s)]
    c = [[Fraction(i + k + 1) for k in range(t)] for i in range(s)]
    ot = ot_algebra(b, c)
    assert derived_dim(ot.algebra) == 2 * t + s
    sc = split_check(ot.algebra, ot.split)
    assert sc.reduced.n == 2 * t + s and sc.trivial_part_dim == 0
    assert is_unimodular(ot.algebra)


def test_inoue_split_unchanged():
    g, split = inoue_s0(1)
    sc = split_check(g, split)
    assert sc.reduced == split and sc.trivial_part_dim == 0


def test_no_blocks_is_abelian():
    g, split = build_meta_abelian(3, [])
    assert not g.brackets.any() and split.n == 0


def test_two_dim_nonunimodular():
    g = new_lie_algebra(2, {(0, 1): {1: 1}})
    assert not is_unimodular(g)
