"""Scan closed 1-forms on h(n) + R and report any nonvanishing twisted cohomology."""

from __future__ import annotations

import argparse
from fractions import Fraction

import numpy as np

from solvlck import Form, abelian, direct_sum, heisenberg, twisted_cohomology


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    g = direct_sum(heisenberg(args.n), abelian(1))
    closed = [i for i in range(g.dim) if g.d(Form.monomial(g.dim, [i])).is_zero()]
    rng = np.random.default_rng(args.seed)
    hits = 0
    for _ in range(args.samples):
        coeffs = [Fraction(int(a), int(b)) for a, b in zip(rng.integers(-4, 5, len(closed)),
                                                           rng.integers(1, 4, len(closed)))]
        if not any(coeffs):
            continue
        theta = Form.from_terms(g.dim, 1, list(zip([[i] for i in closed], coeffs)))
        h = twisted_cohomology(g, theta)
        hits += any(h)
        print(theta, h)
    print(f"{hits} nonvanishing cases out of {args.samples}")
    # theta = 0 for contrast
    print("theta = 0:", twisted_cohomology(g, Form.zero(g.dim, 1)))


if __name__ == "__main__":
    main()
