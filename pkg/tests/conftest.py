from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from solvlck.lie import semidirect
from solvlck.ot import ot_algebra
from solvlck.scalars import RATIONAL

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

DATA = Path(__file__).resolve().parent.parent / "data"

small_q = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def ot21():
    return ot_algebra([[-1], [-1]], [[1], [2]])


# unimodular integer change of basis; conjugating diagonal derivations by it
# gives commuting non-diagonal ones
_P = np.array([[1, 1, 0], [0, 1, 1], [0, 0, 1]], dtype=object)
_Pinv = np.array([[1, -1, 1], [0, 1, -1], [0, 0, 1]], dtype=object)


@st.composite
def semidirect_algebras(draw, max_m: int = 2, max_k: int = 3, unimodular: bool = False):
    """R^m semidirect R^k with commuting (possibly conjugated) diagonal derivations.

    With unimodular=True every derivation is made traceless.
    """
    m = draw(st.integers(1, max_m))
    k = draw(st.integers(1, max_k))
    diags = [draw(st.lists(small_q, min_size=k, max_size=k)) for _ in range(m)]
    if unimodular:
        diags = [d[:-1] + [-sum(d[:-1], Fraction(0))] for d in diags]
    Ds = [np.diag([Fraction(x) for x in d]).astype(object) for d in diags]
    if k == 3 and draw(st.booleans()):
        Ds = [_P.dot(D).dot(_Pinv) for D in Ds]
    return semidirect(Ds, RATIONAL)


def random_ot_surrogate(rng: np.random.Generator, s: int):
    """Rational (b, c) for t = 1. The unit-norm identity forces every b_i1 = -1; only c is free."""
    b = [[Fraction(-1)] for _ in range(s)]
    c = [[Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5)))] for _ in range(s)]
    return b, c


def random_semidirect(rng: np.random.Generator):
    """numpy-seeded twin of `semidirect_algebras` for fixed-size batches."""
    m = int(rng.integers(1, 3))
    k = int(rng.integers(1, 4))
    Ds = [np.diag([Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 4))) for _ in range(k)]).astype(object)
          for _ in range(m)]
    if k == 3 and rng.random() < 0.5:
        Ds = [_P.dot(D).dot(_Pinv) for D in Ds]
    return semidirect(Ds, RATIONAL)


def random_wcs(rng: np.random.Generator):
    """Meta-abelian algebra whose complex blocks all have a nonzero real weight."""
    from solvlck.lie import build_meta_abelian
    m = int(rng.integers(1, 3))

    def q():
        return Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 3)))

    blocks = []
    for _ in range(int(rng.integers(1, 4))):
        lam = [q() for _ in range(m)]
        if rng.random() < 0.4 and any(lam):
            blocks.append({"kind": "complex", "lam": lam, "mu": [q() for _ in range(m)]})
        else:
            blocks.append({"kind": "real", "lam": lam})
    return build_meta_abelian(m, blocks, RATIONAL)


# acceptance lines collected by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
