"""JSON envelopes for algebras, forms, metrics, field data and reports.

Every file is a JSON object with a "kind" discriminator. Output is
canonical: terms in monomial-rank order, rationals as "num/den" strings,
floats rounded to 12 significant digits.
"""

from __future__ import annotations

import json
import os
import tempfile
from typing import Any

import numpy as np

from .errors import ValidationError
from .exterior import Form, basis_index, mask_of
from .lie import LieAlgebra, MetaAbelianSplit, WeightBlock, new_lie_algebra, validate_split
from .ot import OTFieldData
from .scalars import Field, format_scalar


def _require(obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise ValidationError(f"{where}: missing required key {key!r}")
    return obj[key]


def _check_kind(obj: dict, kind: str) -> None:
    if not isinstance(obj, dict):
        raise ValidationError(f"expected a JSON object of kind {kind!r}")
    got = obj.get("kind", kind)
    if got != kind:
        raise ValidationError(f"expected kind {kind!r}, got {got!r}")


# forms

def form_to_json(form: Form) -> dict:
    order = basis_index(form.dim, form.grade)
    terms = [{"indices": list(idx), "coeff": format_scalar(form.coeff(idx))}
             for idx in sorted((tuple(i for i in range(form.dim) if m >> i & 1) for m in form.terms),
                               key=lambda ix: order[mask_of(ix)])]
    return {"kind": "form", "dim": form.dim, "grade": form.grade, "terms": terms}


def form_from_json(obj: dict, field: Field, dim: int | None = None) -> Form:
    _check_kind(obj, "form")
    grade = _require(obj, "grade", "form")
    n = obj.get("dim", dim)
    if n is None:
        raise ValidationError("form: dimension unknown")
    if dim is not None and n != dim:
        raise ValidationError(f"form: dimension {n} does not match algebra dimension {dim}")
    items = []
    for t in _require(obj, "terms", "form"):
        idx = _require(t, "indices", "form term")
        if len(idx) != grade:
            raise ValidationError(f"form: term {idx} does not have grade {grade}")
        items.append((idx, field.coerce(_require(t, "coeff", "form term"))))
    return Form.from_terms(n, grade, items, field)


# splits and algebras

def split_to_json(split: MetaAbelianSplit) -> dict:
    return {"a_indices": list(split.a_indices),
            "blocks": [{"kind": b.kind, "indices": list(b.indices),
                        "lambda": [format_scalar(x) for x in b.lam],
                        "mu": [format_scalar(x) for x in b.mu]} for b in split.blocks]}


def split_from_json(obj: dict, field: Field) -> MetaAbelianSplit:
    a = tuple(int(i) for i in _require(obj, "a_indices", "split"))
    blocks = []
    for b in _require(obj, "blocks", "split"):
        kind = _require(b, "kind", "split block")
        lam = tuple(field.coerce(x) for x in b.get("lambda", b.get("lam", [])))
        mu = tuple(field.coerce(x) for x in b.get("mu", [0] * len(a)))
        blocks.append(WeightBlock(kind, tuple(int(i) for i in _require(b, "indices", "split block")), lam, mu))
    return MetaAbelianSplit(a, tuple(blocks))


def _matrix_to_json(M) -> list:
    return [[format_scalar(x) for x in row] for row in np.asarray(M)]


def algebra_to_json(g: LieAlgebra, split: MetaAbelianSplit | None = None, **extras) -> dict:
    """LieAlgebraSpec envelope; extras may carry omega, theta (Forms) and complex_structure (matrix)."""
    br = []
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            terms = {str(k): format_scalar(g.brackets[i, j, k])
                     for k in range(g.dim) if not g.field.is_zero(g.brackets[i, j, k])}
            if terms:
                br.append({"i": i, "j": j, "terms": terms})
    out: dict[str, Any] = {"kind": "lie_algebra", "dim": g.dim, "scalar": g.field.kind,
                           "basis": list(g.basis_names), "brackets": br}
    if split is not None:
        out["split"] = split_to_json(split)
    for key in ("complex_structure", "omega", "theta"):
        v = extras.get(key)
        if v is None:
            continue
        out[key] = form_to_json(v) if isinstance(v, Form) else _matrix_to_json(v)
    return out


def algebra_from_json(obj: dict, field: Field) -> tuple[LieAlgebra, MetaAbelianSplit | None, dict]:
    """Parse a LieAlgebraSpec into (algebra, split or None, extras)."""
    _check_kind(obj, "lie_algebra")
    n = _require(obj, "dim", "lie_algebra")
    if not isinstance(n, int) or n < 0:
        raise ValidationError("lie_algebra: dim must be a nonnegative integer")
    sparse: dict[tuple[int, int], dict] = {}
    for entry in obj.get("brackets", []):
        i, j = int(_require(entry, "i", "bracket")), int(_require(entry, "j", "bracket"))
        if (i, j) in sparse:
            raise ValidationError(f"brackets: pair ({i},{j}) given twice")
        sparse[(i, j)] = {int(k): field.coerce(v) for k, v in _require(entry, "terms", "bracket").items()}
    g = new_lie_algebra(n, sparse, field, obj.get("basis"))
    split = None
    if obj.get("split") is not None:
        split = split_from_json(obj["split"], field)
        validate_split(g, split)
    extras: dict[str, Any] = {}
    for key in ("omega", "theta"):
        if obj.get(key) is not None:
            extras[key] = form_from_json(obj[key], field, n)
    if obj.get("complex_structure") is not None:
        extras["complex_structure"] = field.array(obj["complex_structure"])
    return g, split, extras


def metric_from_json(obj: dict, field: Field):
    _check_kind(obj, "metric")
    return field.array(_require(obj, "matrix", "metric"))


def metric_to_json(G) -> dict:
    return {"kind": "metric", "matrix": _matrix_to_json(G)}


def field_data_to_json(data: OTFieldData) -> dict:
    return {
        "kind": "ot_field_data",
        "poly": list(data.poly), "s": data.s, "t": data.t,
        "irreducibility": data.irreducibility,
        "real_embeddings": [format_scalar(x) for x in data.real_embeddings],
        "complex_embeddings": [[format_scalar(z.real), format_scalar(z.imag)] for z in data.complex_embeddings],
        "units": [list(u) for u in data.units],
        "U_generators": [list(u) for u in data.U_generators],
        "v_basis": _matrix_to_json(data.v_basis),
        "b": _matrix_to_json(data.b),
        "c": _matrix_to_json(data.c),
        "arg_branch": "(-pi, pi]",
        "notes": list(data.notes),
    }


# files

def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def write_atomic(path: str, obj) -> None:
    """Write JSON through a temporary file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", suffix=".json", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(dumps(obj))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror}") from None
