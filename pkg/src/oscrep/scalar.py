"""Mode-tagged real scalars.

A scalar is either a :class:`fractions.Fraction` (exact mode) or a ``float``
(float mode).  Python ints are accepted everywhere and promoted to
``Fraction``.  Mixing the two kinds follows ordinary Python coercion, so any
float contaminates a computation into float mode.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Union

from .errors import DomainError

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

EPS_CMP = 1e-12
EPS_ZERO = 1e-10

MODE_ENV_VAR = "OSCREP_MODE"


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def mode_of(*values) -> str:
    return EXACT if all(is_exact(v) for v in values) else FLOAT


def exact(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        # shortest decimal round-trip, so 0.1 -> 1/10 rather than the binary expansion
        return Fraction(repr(x))
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def coerce(x, mode: str) -> Scalar:
    if mode == EXACT:
        return exact(x)
    if mode == FLOAT:
        return float(x)
    raise ValueError(f"unknown arithmetic mode {mode!r}")


def resolve_mode(requested: str | None = None, default: str = EXACT) -> str:
    """Explicit request beats the environment variable, which beats the default."""
    mode = requested or os.environ.get(MODE_ENV_VAR) or default
    mode = mode.strip().lower()
    if mode not in MODES:
        raise ValueError(f"arithmetic mode must be one of {MODES}, got {mode!r}")
    return mode


def as_int(x) -> int | None:
    """Return ``x`` as an int when it is integral, else None."""
    if isinstance(x, bool):
        return None
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else None
    if isinstance(x, float):
        return int(x) if math.isfinite(x) and x.is_integer() else None
    return None


def real_power(base: Scalar, exponent) -> Scalar:
    """``base ** exponent`` restricted to real results.

    Integer exponents stay exact for exact bases.  Non-integer exponents need a
    positive base and always produce a float (base 1 excepted).
    """
    if base == 0:
        raise DomainError("zero base in an exponential")
    k = as_int(exponent)
    if k is not None:
        return base ** k
    if base < 0:
        raise DomainError(f"{base}**{exponent} is not real: negative base needs an integer exponent")
    if base == 1:
        return base
    return float(base) ** float(exponent)


def approx_equal(a: Scalar, b: Scalar, eps: float = EPS_CMP) -> bool:
    if is_exact(a) and is_exact(b):
        return a == b
    return math.isclose(float(a), float(b), rel_tol=eps, abs_tol=eps)


def is_zero(value: Scalar, scale: float = 1.0, eps: float = EPS_ZERO, floor: float = 1.0) -> bool:
    """Exact zero test in exact mode; scale-aware tolerance in float mode.

    The tolerance is ``eps * max(floor, |scale|)``.
    """
    if is_exact(value):
        return value == 0
    return abs(value) <= eps * max(floor, abs(scale))


def fmt(x: Scalar) -> str:
    """Deterministic text for a scalar: ``p/q`` when exact, ``repr`` when float."""
    if is_exact(x):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def parse_scalar(text: str, mode: str = EXACT) -> Scalar:
    from .exppoly import parse_constant

    return parse_constant(text, mode=mode)


def to_json(x: Scalar | None):
    if x is None:
        return None
    return fmt(x) if is_exact(x) else float(x)


def from_json(value) -> Scalar | None:
    if value is None:
        return None
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, int):
        return Fraction(value)
    return float(value)
