from __future__ import annotations

from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from solvlck.cohomology import (CharacterWeight, betti, character_complex_dims, is_weakly_completely_solvable,
                                character_cohomology, trivial_character, twisted_cohomology, twisted_differential,
                                twisted_exactness)
from solvlck.errors import CharacterNotRealizable, OmegaNotDThetaClosed, ThetaNotClosed, ValidationError
from solvlck.exterior import Form
from solvlck.lie import abelian, build_meta_abelian, direct_sum, heisenberg, inoue_s0, is_unimodular
from solvlck.scalars import RATIONAL

from conftest import semidirect_algebras, small_q
from oracles import betti_numpy

h1r = direct_sum(heisenberg(1), abelian(1))
h2r = direct_sum(heisenberg(2), abelian(1))


@pytest.mark.parametrize("g,want", [
    (heisenberg(1), [1, 2, 2, 1]),
    (heisenberg(2), [1, 4, 5, 5, 4, 1]),
    (abelian(4), [1, 4, 6, 4, 1]),
    (inoue_s0(1)[0], [1, 1, 0, 1, 1]),
], ids=["h1", "h2", "R4", "inoue"])
def test_known_betti(g, want):
    assert betti(g) == want
    assert betti_numpy(g.brackets) == want


def test_ot21_betti(ot21):
    assert betti(ot21.algebra) == [1, 2, 1, 0, 1, 2, 1]


@given(semidirect_algebras())
def test_betti_matches_numpy_oracle(g):
    assert betti(g) == betti_numpy(g.brackets)


@given(semidirect_algebras(unimodular=True))
def test_poincare_duality_when_unimodular(g):
    assert is_unimodular(g)
    b = betti(g)
    assert b == b[::-1]


@given(semidirect_algebras(), st.data())
def test_twisted_euler_characteristic_vanishes(g, data):
    # closed 1-forms vanish on [g, g]: draw theta from the annihilator of the derived algebra
    theta = _random_closed_theta(g, data)
    h = twisted_cohomology(g, theta)
    assert sum((-1) ** p * x for p, x in enumerate(h)) == 0


@given(semidirect_algebras())
def test_zero_twist_is_ordinary_cohomology(g):
    assert twisted_cohomology(g, Form.zero(g.dim, 1)) == betti(g)


def _random_closed_theta(g, data):
    from solvlck import linalg
    from solvlck.lie import ce_differential
    N = linalg.nullspace(ce_differential(g, 1), RATIONAL)
    coeffs = [data.draw(small_q) for _ in range(N.shape[1])]
    v = N.dot(np.array(coeffs, dtype=object)) if N.shape[1] else np.zeros(g.dim, dtype=object)
    return Form.from_vector(g.dim, 1, v)


THETA_GRID = [t for t in product([-1, 0, Fraction(1, 2), 2], repeat=2) if any(t)][:10]


@pytest.mark.parametrize("g", [h1r, h2r], ids=["h1+R", "h2+R"])
@pytest.mark.parametrize("tx,tt", THETA_GRID)
def test_dixmier_vanishing(g, tx, tt):
    n = g.dim
    theta = Form.from_terms(n, 1, [([0], tx), ([n - 1], tt)])
    assert twisted_cohomology(g, theta) == [0] * (n + 1)


def test_non_closed_theta():
    with pytest.raises(ThetaNotClosed):
        twisted_cohomology(heisenberg(1), Form.monomial(3, [2]))


def test_exact_twisted_form_has_minimal_witness():
    g = h1r
    theta = Form.monomial(4, [0])
    eta = Form.monomial(4, [2]).scale(3)
    omega = Form.from_vector(4, 2, twisted_differential(g, theta, 1).dot(eta.to_vector()))
    res = twisted_exactness(g, theta, omega)
    assert res.exact and len(res.witness.support) == 1
    again = Form.from_vector(4, 2, twisted_differential(g, theta, 1).dot(res.witness.to_vector()))
    assert again.equals(omega)


def test_lck_form_not_exact(ot21):
    res = twisted_exactness(ot21.algebra, ot21.theta, ot21.omega)
    assert not res.exact and res.witness is None


def test_twisted_exactness_requires_closed_omega():
    with pytest.raises(OmegaNotDThetaClosed):
        twisted_exactness(h1r, Form.monomial(4, [0]), Form.monomial(4, [2, 3]))


# weight-restricted complexes

def wcs_algebras():
    return [
        inoue_s0(1),
        inoue_s0(Fraction(5, 3)),
        build_meta_abelian(1, [{"kind": "real", "lam": [1]}, {"kind": "real", "lam": [-1]}]),
        build_meta_abelian(2, [{"kind": "real", "lam": [1, 0]}, {"kind": "real", "lam": [0, 1]},
                               {"kind": "complex", "lam": [-Fraction(1, 2), -Fraction(1, 2)], "mu": [1, 2]}]),
        build_meta_abelian(1, [{"kind": "real", "lam": [1]}, {"kind": "real", "lam": [0]}]),
    ]


@pytest.mark.parametrize("gs", wcs_algebras(), ids=["inoue1", "inoue5/3", "sol", "ot21", "aff+R"])
def test_trivial_character_degree_one(gs):
    g, split = gs
    assert is_weakly_completely_solvable(split)
    h = character_complex_dims(g, split, trivial_character(g.dim, RATIONAL))
    assert h[1] == betti(g)[1]


def test_trivial_character_full_ot21(ot21):
    h = character_complex_dims(ot21.algebra, ot21.split, trivial_character(6, RATIONAL))
    assert h == [1, 2, 1, 0, 1, 2, 1]


def e2_type():
    return build_meta_abelian(1, [{"kind": "complex", "lam": [0], "mu": [1]}], RATIONAL, ["t", "x", "y"])


def test_unitary_weights_are_not_wcs():
    _, split = e2_type()
    assert not is_weakly_completely_solvable(split)


def test_character_weights_match_numpy_eigenvalues():
    g, split = e2_type()
    ad_t = np.array(g.ad(0), dtype=float)[1:, 1:]
    eig = sorted(np.linalg.eigvals(ad_t), key=lambda z: z.imag)
    assert np.allclose(eig, [-1j, 1j])


def test_e2_characters_recover_torus_cohomology():
    # the lattice containing t = 2 pi makes both e^{+-it} trivial on it; the quotient is a 3-torus
    g, split = e2_type()
    chars = [trivial_character(3, RATIONAL),
             CharacterWeight((0, 0, 0), (1, 0, 0), "e^{it}"),
             CharacterWeight((0, 0, 0), (-1, 0, 0), "e^{-it}")]
    assert betti(g) == [1, 1, 1, 1]
    assert [character_complex_dims(g, split, c) for c in chars[1:]] == [[0, 1, 1, 0]] * 2
    assert character_cohomology(g, split, chars) == [1, 3, 3, 1]


def test_character_must_vanish_on_derived_algebra():
    g, split = e2_type()
    with pytest.raises(ValidationError):
        character_complex_dims(g, split, CharacterWeight((0, 1, 0), (0, 0, 0)))


def test_unrealizable_character():
    g, split = inoue_s0(1)
    with pytest.raises(CharacterNotRealizable):
        character_complex_dims(g, split, CharacterWeight((7, 0, 0, 0), (0, 0, 0, 0)))


def test_sol_with_unitary_characters_is_not_realizable():
    # real blocks carry mu = 0, so no product of block weights has a nonzero imaginary part
    g, split = build_meta_abelian(1, [{"kind": "real", "lam": [1]}, {"kind": "real", "lam": [-1]}])
    for mu in (2, -2):
        with pytest.raises(CharacterNotRealizable):
            character_complex_dims(g, split, CharacterWeight((0, 0, 0), (mu, 0, 0)))


def test_abelian_trivial_character_is_betti():
    g, split = build_meta_abelian(2, [])
    assert is_weakly_completely_solvable(split)
    assert character_cohomology(g, split, [trivial_character(2, RATIONAL)]) == betti(g) == [1, 2, 1]


@pytest.mark.parametrize("coeffs", [(2, 1), (1, 1), (3, -2)])
def test_inoue_lck_variants_not_exact(coeffs):
    g, _ = inoue_s0(1)
    a, gg = coeffs
    omega = Form.from_terms(4, 2, [([0, 1], a), ([2, 3], gg)])
    theta = Form.monomial(4, [0])
    res = twisted_exactness(g, theta, omega)
    assert not res.exact


def test_koszul_twist_on_plane():
    assert twisted_cohomology(abelian(2), Form.monomial(2, [0])) == [0, 0, 0]
