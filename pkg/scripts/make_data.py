"""Regenerate the sample inputs in data/ from the library builders."""

from __future__ import annotations

import argparse
from pathlib import Path

from solvlck import io
from solvlck.exterior import Form
from solvlck.lck import metric_from
from solvlck.lie import abelian, build_meta_abelian, direct_sum, heisenberg, inoue_s0
from solvlck.ot import ot_algebra, ot_lck_form
from solvlck.scalars import RATIONAL

F = RATIONAL


def samples() -> dict[str, dict]:
    out: dict[str, dict] = {}
    h = heisenberg(1)
    out["heisenberg.json"] = io.algebra_to_json(h)
    hr = direct_sum(h, abelian(1))
    hr = type(hr)(hr.dim, hr.brackets, ("x", "y", "z", "t"), F)
    out["heisenberg_r.json"] = io.algebra_to_json(hr)
    out["theta_x.json"] = io.form_to_json(Form.monomial(4, [0], 1, F))
    out["theta_zero.json"] = io.form_to_json(Form.zero(4, 1, F))
    out["theta_z.json"] = io.form_to_json(Form.monomial(4, [2], 1, F))
    out["abelian4.json"] = io.algebra_to_json(abelian(4))
    out["identity3.json"] = io.metric_to_json(F.identity(3))
    out["identity4.json"] = io.metric_to_json(F.identity(4))

    g, split = inoue_s0(1)
    omega, theta = ot_lck_form(1)
    J = ot_algebra([[-1]], [[1]]).J
    out["inoue_s0.json"] = io.algebra_to_json(g, split, complex_structure=J.J, omega=omega, theta=theta)

    ot = ot_algebra([[-1], [-1]], [[1], [2]])
    out["ot21.json"] = io.algebra_to_json(ot.algebra, ot.split, complex_structure=ot.J.J,
                                          omega=ot.omega, theta=ot.theta)
    out["ot21_omega.json"] = io.form_to_json(ot.omega)
    out["ot21_theta.json"] = io.form_to_json(ot.theta)
    out["ot21_metric.json"] = io.metric_to_json(metric_from(ot.algebra, ot.omega, ot.J).G)

    # aff(R) + aff(R): split with m = n, symplectic form, obstruction does not apply
    aff, asplit = build_meta_abelian(2, [{"kind": "real", "lam": [1, 0]}, {"kind": "real", "lam": [0, 1]}],
                                     F, ["a1", "a2", "v1", "v2"])
    w = Form.from_terms(4, 2, [([0, 2], 1), ([1, 3], 1)], F)
    out["aff2.json"] = io.algebra_to_json(aff, asplit, omega=w)

    out["malformed.json"] = {"kind": "lie_algebra", "dim": 3, "scalar": "rational", "basis": ["x", "y", "z"],
                             "brackets": [{"i": 1, "j": 2, "terms": {"0": 1}},
                                          {"i": 2, "j": 1, "terms": {"0": 1}}]}
    out["plastic.json"] = {"kind": "field_input", "poly": [-1, -1, 0, 1], "s": 1, "t": 1, "coeff_bound": 2}
    out["plastic_bound0.json"] = {"kind": "field_input", "poly": [-1, -1, 0, 1], "s": 1, "t": 1,
                                  "coeff_bound": 0}
    out["quartic.json"] = {"kind": "field_input", "poly": [-1, 0, 0, -1, 1], "s": 2, "t": 1, "coeff_bound": 2}
    # x^3 - 3x + 1 is totally real
    out["signature_mismatch.json"] = {"kind": "field_input", "poly": [1, -3, 0, 1], "s": 1, "t": 1,
                                      "coeff_bound": 2}
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dir", default=str(Path(__file__).resolve().parent.parent / "data"))
    args = ap.parse_args()
    d = Path(args.dir)
    d.mkdir(parents=True, exist_ok=True)
    for name, obj in samples().items():
        io.write_atomic(str(d / name), obj)
        print(d / name)


if __name__ == "__main__":
    main()
