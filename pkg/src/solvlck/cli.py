"""Command-line front end: solvlck {betti,twisted,check-vaisman,build-ot,formality}.

Every command reads JSON envelopes, writes one JSON report (to --out or
stdout) that embeds the run configuration, and exits with 0 on success,
2 on invalid input, 3 on a failed mathematical precondition and 4 on a
number-field pipeline failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass
from typing import Sequence

from . import io
from .cohomology import betti, twisted_cohomology
from .errors import SolvLckError, ValidationError
from .lck import ComplexStructure, InvariantMetric, formality_check, lee_form, metric_from, vaisman_obstruction
from .ot import build_ot, run_pipeline
from .scalars import DEFAULT_TOL, RATIONAL, Field, approx

log = logging.getLogger("solvlck")

TOL_ENV = "SOLV_LCK_TOL"
BACKENDS = ("rational", "float")


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...]
    backend: str
    tol: float
    out: str | None = None
    verbosity: int = 0

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise ValidationError(f"backend must be one of {BACKENDS}, got {self.backend!r}")
        if not self.tol > 0:
            raise ValidationError(f"tolerance must be positive, got {self.tol!r}")

    @property
    def field(self) -> Field:
        return RATIONAL if self.backend == "rational" else approx(self.tol)

    def to_json(self) -> dict:
        d = asdict(self)
        d["inputs"] = list(self.inputs)
        d["tol"] = float(f"{self.tol:.12g}")
        return d


def default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise ValidationError(f"{TOL_ENV}={raw!r} is not a number") from None


def make_config(command: str, inputs: Sequence[str], backend: str | None = None, tol: float | None = None,
                out: str | None = None, verbosity: int = 0, spec: dict | None = None) -> RunConfig:
    """Resolve the backend (flag, then the algebra file's "scalar" entry, then rational) and the tolerance."""
    if backend is None:
        backend = spec.get("scalar", "rational") if isinstance(spec, dict) else "rational"
    return RunConfig(command, tuple(str(p) for p in inputs), backend,
                     default_tol() if tol is None else tol, out, verbosity)


def _load_algebra(path: str, backend: str | None, tol: float | None, command: str, inputs, out, verbosity):
    spec = io.load(path)
    cfg = make_config(command, inputs, backend, tol, out, verbosity, spec)
    g, split, extras = io.algebra_from_json(spec, cfg.field)
    return cfg, g, split, extras


def _header(kind: str, cfg: RunConfig, g) -> dict:
    return {"kind": kind, "config": cfg.to_json(), "algebra": {"dim": g.dim, "basis": list(g.basis_names)}}


# commands; each returns the report dictionary

def cmd_betti(spec_file: str, backend=None, tol=None, out=None, verbosity=0) -> dict:
    cfg, g, _, _ = _load_algebra(spec_file, backend, tol, "betti", [spec_file], out, verbosity)
    rep = _header("cohomology_report", cfg, g)
    rep["dims"] = betti(g)
    return rep


def cmd_twisted(spec_file: str, theta_file: str, backend=None, tol=None, out=None, verbosity=0) -> dict:
    cfg, g, _, _ = _load_algebra(spec_file, backend, tol, "twisted", [spec_file, theta_file], out, verbosity)
    theta = io.form_from_json(io.load(theta_file), cfg.field, g.dim)
    rep = _header("cohomology_report", cfg, g)
    rep["theta"] = io.form_to_json(theta)
    rep["dims"] = twisted_cohomology(g, theta)
    return rep


def cmd_check_vaisman(spec_file: str, omega_file: str | None = None, theta_file: str | None = None,
                      backend=None, tol=None, out=None, verbosity=0) -> dict:
    """Obstruction certificate; omega and theta default to the algebra file's own entries, theta then to the Lee form."""
    inputs = [p for p in (spec_file, omega_file, theta_file) if p]
    cfg, g, split, extras = _load_algebra(spec_file, backend, tol, "check-vaisman", inputs, out, verbosity)
    if split is None:
        raise ValidationError("check-vaisman needs a spec with a meta-abelian split")
    omega = io.form_from_json(io.load(omega_file), cfg.field, g.dim) if omega_file else extras.get("omega")
    if omega is None:
        raise ValidationError("no omega: pass an omega file or put one in the algebra file")
    if theta_file:
        theta = io.form_from_json(io.load(theta_file), cfg.field, g.dim)
    else:
        theta = extras.get("theta")
        if theta is None:
            theta = lee_form(g, omega)
    cert = vaisman_obstruction(g, split, omega, theta)
    red = cert.split
    rep = _header("obstruction_certificate", cfg, g)
    rep.update({
        "verdict": cert.verdict,
        "hypothesis": {"dim_derived": cert.dim_derived, "dim_g": cert.dim_g, "m": red.m, "n": red.n,
                       "ok": cert.hypothesis_ok},
        "split": io.split_to_json(red),
        "theta": io.form_to_json(cert.theta),
        "omega_prime": io.form_to_json(cert.omega_prime),
        "omega_double_prime": io.form_to_json(cert.omega_double_prime),
        "omega_double_prime_nonzero": cert.omega_dpp_nonzero,
        "theta_in_a": cert.theta_in_a,
        "containment_ok": cert.containment_ok,
        "d_theta_exact": cert.d_theta_exact,
        "witness": io.form_to_json(cert.witness) if cert.witness is not None else None,
        "checks_agree": cert.checks_agree,
    })
    return rep


def _int(obj: dict, key: str, minimum: int) -> int:
    v = obj.get(key)
    if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
        raise ValidationError(f"field input: {key!r} must be an integer >= {minimum}, got {v!r}")
    return v


def cmd_build_ot(field_file: str, backend=None, tol=None, out=None, verbosity=0) -> dict:
    """Run the number-field pipeline; returns {"spec": ..., "field_data": ...} plus the config."""
    if backend not in (None, "float"):
        raise ValidationError("build-ot produces irrational data and runs on the float backend only")
    cfg = make_config("build-ot", [field_file], "float", tol, out, verbosity)
    obj = io.load(field_file)
    poly = obj.get("poly") if isinstance(obj, dict) else None
    if not isinstance(poly, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in poly):
        raise ValidationError("field input: 'poly' must be a list of integers, constant term first")
    s, t, bound = _int(obj, "s", 1), _int(obj, "t", 1), _int(obj, "coeff_bound", 0)
    data = run_pipeline(poly, s, t, bound)
    built = build_ot(data, cfg.field)
    spec = io.algebra_to_json(built.algebra, built.split, complex_structure=built.J.J,
                              omega=built.omega, theta=built.theta)
    spec["config"] = cfg.to_json()
    fd = io.field_data_to_json(data)
    fd["config"] = cfg.to_json()
    return {"kind": "ot_build", "config": cfg.to_json(), "spec": spec, "field_data": fd}


def cmd_formality(spec_file: str, metric_file: str | None = None, backend=None, tol=None, out=None,
                  verbosity=0) -> dict:
    """Formality of a metric; without a metric file, G(X, Y) = omega(X, JY) from the algebra file's own data."""
    inputs = [p for p in (spec_file, metric_file) if p]
    cfg, g, _, extras = _load_algebra(spec_file, backend, tol, "formality", inputs, out, verbosity)
    if metric_file:
        metric = InvariantMetric(io.metric_from_json(io.load(metric_file), cfg.field), cfg.field)
    elif "omega" in extras and "complex_structure" in extras:
        metric = metric_from(g, extras["omega"], ComplexStructure(extras["complex_structure"], cfg.field))
    else:
        raise ValidationError("no metric: pass a metric file or give omega and complex_structure in the algebra file")
    res = formality_check(g, metric)
    rep = _header("formality_report", cfg, g)
    rep["formal"] = res.formal
    rep["failing_pair"] = [io.form_to_json(x) for x in res.failing_pair] if res.failing_pair else None
    rep["harmonic_dims"] = [len(h) for h in res.harmonic]
    rep["harmonic"] = [[io.form_to_json(x) for x in h] for h in res.harmonic]
    return rep


def field_data_path(out: str) -> str:
    root = out[:-5] if out.endswith(".json") else out
    return root + ".field.json"


def _summary(rep: dict) -> str:
    kind = rep["kind"]
    if kind == "cohomology_report":
        return f"dims {rep['dims']}"
    if kind == "obstruction_certificate":
        return f"{rep['verdict']} (checks agree: {rep['checks_agree']})"
    if kind == "formality_report":
        return f"formal: {rep['formal']}, harmonic dims {rep['harmonic_dims']}"
    fd = rep["field_data"]
    return f"b = {fd['b']}, c = {fd['c']}, U = {fd['U_generators']}"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=BACKENDS, default=None,
                        help="scalar backend (default: the algebra file's 'scalar' entry, else rational)")
    common.add_argument("--tol", type=float, default=None,
                        help=f"relative tolerance for the float backend (default ${TOL_ENV} or {DEFAULT_TOL})")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--quiet", action="store_true", help="no summary line on stderr")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="solvlck", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("betti", parents=[common], help="Betti numbers of the invariant complex")
    c.add_argument("spec")
    c = sub.add_parser("twisted", parents=[common], help="cohomology of d - theta ^ .")
    c.add_argument("spec")
    c.add_argument("theta")
    c = sub.add_parser("check-vaisman", parents=[common], help="invariant obstruction to Vaisman metrics")
    c.add_argument("spec")
    c.add_argument("omega", nargs="?")
    c.add_argument("theta", nargs="?")
    c = sub.add_parser("build-ot", parents=[common], help="OT Lie algebra from a number field")
    c.add_argument("field")
    c = sub.add_parser("formality", parents=[common], help="is every product of harmonic forms harmonic")
    c.add_argument("spec")
    c.add_argument("metric", nargs="?")
    return p


def _dispatch(args) -> dict:
    kw = dict(backend=args.backend, tol=args.tol, out=args.out, verbosity=args.verbose)
    if args.command == "betti":
        return cmd_betti(args.spec, **kw)
    if args.command == "twisted":
        return cmd_twisted(args.spec, args.theta, **kw)
    if args.command == "check-vaisman":
        return cmd_check_vaisman(args.spec, args.omega, args.theta, **kw)
    if args.command == "build-ot":
        return cmd_build_ot(args.field, **kw)
    return cmd_formality(args.spec, args.metric, **kw)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    try:
        rep = _dispatch(args)
        if args.out and rep["kind"] == "ot_build":
            io.write_atomic(args.out, rep["spec"])
            io.write_atomic(field_data_path(args.out), rep["field_data"])
        elif args.out:
            io.write_atomic(args.out, rep)
        else:
            sys.stdout.write(io.dumps(rep))
    except SolvLckError as exc:
        return _fail(type(exc).__name__, str(exc), exc.exit_code)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        # malformed input that slipped past the schema checks
        return _fail(type(exc).__name__, str(exc), ValidationError.exit_code)
    if not args.quiet:
        print(_summary(rep), file=sys.stderr)
    return 0


def _fail(name: str, message: str, code: int) -> int:
    diag = {"kind": "error", "error": name, "exit_code": code, "message": message}
    sys.stderr.write(json.dumps(diag) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
