"""OT(2,1) with rational surrogates: cohomology, Lee form, metric, harmonic forms, obstruction."""

from __future__ import annotations

import argparse
from fractions import Fraction

from solvlck import (betti, formality_check, is_integrable, lee_form, metric_from, ot_algebra, twisted_cohomology,
                     vaisman_obstruction)
from solvlck.scalars import RATIONAL


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--c", nargs=2, default=["1", "2"], help="the two entries of c (rationals)")
    args = ap.parse_args()
    c = [[Fraction(x)] for x in args.c]
    ot = ot_algebra([[-1], [-1]], c, RATIONAL)
    g = ot.algebra
    print("basis      ", list(g.basis_names))
    print("betti      ", betti(g))
    print("J integrable", is_integrable(g, ot.J))
    print("Lee form   ", lee_form(g, ot.omega))
    print("H_theta    ", twisted_cohomology(g, ot.theta))
    metric = metric_from(g, ot.omega, ot.J)
    print("metric\n", metric.G)
    res = formality_check(g, metric)
    print("formal     ", res.formal)
    for p, hs in enumerate(res.harmonic):
        for h in hs:
            print(f"  H^{p}: {h}")
    cert = vaisman_obstruction(g, ot.split, ot.omega, ot.theta)
    print("verdict    ", cert.verdict, "| omega'' =", cert.omega_double_prime, "| checks agree:", cert.checks_agree)


if __name__ == "__main__":
    main()
