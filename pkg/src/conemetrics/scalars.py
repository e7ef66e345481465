"""Scalar plumbing shared by every module.

Entries are either exact rationals (:class:`fractions.Fraction`) or floats.
Exact inputs stay exact; floats are compared with a tolerance.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[Fraction, float]

DEFAULT_TOLERANCE = 1e-9


class DomainError(ValueError):
    """Raised when an input violates a mathematical precondition."""

    code = "domain_error"


def parse_scalar(value) -> Scalar:
    """Turn JSON-ish input into a scalar.

    Strings ("3/2", "0.25", "-1") and ints parse exactly; floats stay floats.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not angles")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite entry {value!r}")
        return value
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse {value!r} as a rational") from exc
    raise TypeError(f"unsupported entry {value!r}")


def parse_vector(values: Iterable) -> tuple:
    return tuple(parse_scalar(v) for v in values)


def is_exact(values: Iterable) -> bool:
    return all(isinstance(v, (Fraction, int)) for v in values)


def to_exact(x: Scalar) -> Fraction:
    """Exact rational for ``x``; floats go through their shortest repr."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(parse_scalar(x)) if isinstance(x, str) else Fraction(x)
    return Fraction(repr(float(x)))


def exact_vector(values: Iterable) -> tuple:
    return tuple(to_exact(v) for v in values)


def format_scalar(x):
    """JSON form: exact values as "p/q" strings, floats as numbers."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return float(x)


def format_vector(values: Iterable) -> list:
    return [format_scalar(v) for v in values]


def near(a: Scalar, b: Scalar, tol: float = DEFAULT_TOLERANCE) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return abs(float(a) - float(b)) <= tol


def is_integral(x: Scalar, tol: float = DEFAULT_TOLERANCE) -> bool:
    if isinstance(x, Fraction):
        return x.denominator == 1
    return abs(x - round(x)) <= tol


def floor(x: Scalar) -> int:
    return math.floor(x)


def half() -> Fraction:
    return Fraction(1, 2)


def total(values: Sequence) -> Scalar:
    """Sum that keeps Fractions exact (``sum`` would start from int 0, fine too)."""
    acc = Fraction(0)
    for v in values:
        acc = acc + v
    return acc
