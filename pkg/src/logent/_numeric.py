"""Dual exact-rational / float number handling shared by all modules."""

import math
from fractions import Fraction
from numbers import Rational

from .errors import SchemaError

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)


def as_exact(x):
    """Fraction from int, Fraction, decimal string, ``[num, den]`` or float.

    Floats are read through their shortest repr, so ``0.1`` becomes ``1/10``
    rather than the binary expansion.
    """
    if isinstance(x, bool):
        raise SchemaError(f"not a number: {x!r}")
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise SchemaError(f"non-finite value {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"cannot parse {x!r} as a rational") from exc
    if isinstance(x, (list, tuple)) and len(x) == 2:
        num, den = x
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (num, den)) or den == 0:
            raise SchemaError(f"bad [num, den] pair {x!r}")
        return Fraction(num, den)
    try:
        return Fraction(x)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"not a number: {x!r}") from exc


def as_float(x):
    if isinstance(x, (list, tuple)):
        return float(as_exact(x))
    if isinstance(x, str):
        return float(as_exact(x))
    return float(x)


def infer_mode(values):
    """``exact`` unless some value is a float."""
    return FLOAT if any(isinstance(v, float) for v in values) else EXACT


def coerce(values, mode=None):
    values = list(values)
    mode = mode or infer_mode(values)
    if mode not in MODES:
        raise SchemaError(f"unknown numeric mode {mode!r}")
    conv = as_exact if mode == EXACT else as_float
    return tuple(conv(v) for v in values), mode


def render(x):
    """JSON-safe value: Fractions become ``[num, den]`` (ints stay ints)."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else [x.numerator, x.denominator]
    if isinstance(x, int):
        return x
    return float(x)


def fmt(x):
    """Short human form used by tables."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return f"{float(x):.6g}"


def log(x, base=2):
    if base == 2:
        return math.log2(x)
    if base == "e" or base == math.e:
        return math.log(x)
    return math.log(x, base)
