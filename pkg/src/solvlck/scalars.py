"""Scalar backends.

A computation runs wholly over one :class:`Field`: either exact rationals
(:class:`fractions.Fraction`) or floats compared with a relative tolerance.
Values themselves are plain Python numbers; the field decides how they are
coerced and when they count as zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real

import numpy as np

from .errors import BackendMismatch, ValidationError

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Field:
    kind: str = "rational"
    tol: float = 0.0

    def __post_init__(self):
        if self.kind not in ("rational", "float"):
            raise ValidationError(f"unknown scalar backend {self.kind!r}")
        if self.kind == "float" and not self.tol > 0:
            raise ValidationError("float backend needs a positive tolerance")

    @property
    def exact(self) -> bool:
        return self.kind == "rational"

    @property
    def zero(self):
        return Fraction(0) if self.exact else 0.0

    @property
    def one(self):
        return Fraction(1) if self.exact else 1.0

    def coerce(self, x):
        if self.exact:
            if isinstance(x, Fraction):
                return x
            if isinstance(x, (Rational, int)):
                return Fraction(x)
            if isinstance(x, str):
                return Fraction(x.strip())
            if isinstance(x, float):
                if not math.isfinite(x):
                    raise ValidationError(f"non-finite coefficient {x!r}")
                # decimal reading: 0.1 -> 1/10, not the binary expansion
                return Fraction(repr(x))
            if isinstance(x, np.integer):
                return Fraction(int(x))
            raise ValidationError(f"cannot read {x!r} as an exact rational")
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, (Real, np.floating, np.integer)):
            v = float(x)
            if not math.isfinite(v):
                raise ValidationError(f"non-finite coefficient {x!r}")
            return v
        raise ValidationError(f"cannot read {x!r} as a real number")

    def is_zero(self, x, scale: float = 1.0) -> bool:
        if self.exact:
            return x == 0
        return abs(x) <= self.tol * max(1.0, scale)

    def eq(self, a, b) -> bool:
        if self.exact:
            return a == b
        return abs(a - b) <= self.tol * max(1.0, abs(a), abs(b))

    def array(self, data, shape=None) -> np.ndarray:
        """Matrix over this field; object dtype holding Fractions when exact."""
        if self.exact:
            arr = np.array(data, dtype=object)
            if shape is not None:
                arr = arr.reshape(shape)
            out = np.empty(arr.shape, dtype=object)
            for idx, v in np.ndenumerate(arr):
                out[idx] = self.coerce(v)
            return out
        arr = np.array(data, dtype=float)
        return arr.reshape(shape) if shape is not None else arr

    def zeros(self, shape) -> np.ndarray:
        if self.exact:
            out = np.empty(shape, dtype=object)
            out.fill(Fraction(0))
            return out
        return np.zeros(shape, dtype=float)

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def check_same(self, other: "Field") -> None:
        if self.kind != other.kind:
            raise BackendMismatch(f"cannot mix {self.kind} and {other.kind} scalars")


RATIONAL = Field("rational")


def approx(tol: float = DEFAULT_TOL) -> Field:
    return Field("float", tol)


def format_scalar(x):
    """JSON-ready scalar: 'num/den' strings for rationals, 12 significant digits for floats."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    v = float(format(float(x), ".12g"))
    return 0.0 if v == 0 else v
