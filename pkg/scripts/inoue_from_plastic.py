"""Run the number-field pipeline on a polynomial and compare the result with Inoue S0 constants."""

from __future__ import annotations

import argparse

import numpy as np

from solvlck import betti, build_ot, inoue_s0, is_integrable, is_lcs, run_pipeline
from solvlck.lck import nijenhuis
from solvlck.scalars import approx


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--poly", type=int, nargs="+", default=[-1, -1, 0, 1], help="coefficients, constant term first")
    ap.add_argument("--s", type=int, default=1)
    ap.add_argument("--t", type=int, default=1)
    ap.add_argument("--bound", type=int, default=2)
    args = ap.parse_args()
    data = run_pipeline(args.poly, args.s, args.t, args.bound)
    print("real embeddings   ", data.real_embeddings)
    print("complex embeddings", data.complex_embeddings)
    print("units found       ", len(data.units), "| U =", data.U_generators)
    print("b =", data.b)
    print("c =", data.c)
    ot = build_ot(data)
    g = ot.algebra
    print("betti", betti(g), "| integrable", is_integrable(g, ot.J),
          "| max |N|", float(np.max(np.abs(nijenhuis(g, ot.J).astype(float)))))
    if ot.omega is not None:
        print("LCS with theta = sum alpha_i:", is_lcs(g, ot.omega, ot.theta))
    if args.s == 1 and args.t == 1:
        ref, _ = inoue_s0(data.c[0][0], approx())
        diff = np.max(np.abs(np.array(g.brackets, dtype=float) - np.array(ref.brackets, dtype=float)))
        print(f"max deviation from Inoue S0 structure constants: {diff:.2e}")


if __name__ == "__main__":
    main()
