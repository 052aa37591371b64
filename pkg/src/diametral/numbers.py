"""Scalar helpers shared by the exact (rational) and floating paths."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational, Real

TOL = 1e-9
INF = math.inf


def is_exact(*values) -> bool:
    return all(isinstance(v, Rational) for v in values)


def close(x, y, tol: float = TOL) -> bool:
    """Equality, exact for rationals and tolerance-based otherwise."""
    if is_exact(x, y):
        return x == y
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


def leq(x, y, tol: float = TOL) -> bool:
    if is_exact(x, y):
        return x <= y
    return x <= y + tol * max(1.0, abs(x), abs(y))


def sign(x) -> int:
    return (x > 0) - (x < 0)


def to_number(value):
    """Parse a JSON scalar: ``"3/5"``, ``"inf"``, ints and decimal literals.

    Decimal literals become exact fractions (``0.1 -> 1/10``).
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        if math.isinf(value):
            return INF
        return Fraction(repr(value))
    if isinstance(value, str):
        s = value.strip().lower()
        if s in ("inf", "+inf", "infinity", "oo"):
            return INF
        return Fraction(s)
    raise TypeError(f"cannot parse number from {value!r}")


def to_json(value):
    """Inverse of :func:`to_number` for report output."""
    if isinstance(value, bool):
        return value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Real):
        v = float(value)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(value, dict):
        return {str(k): to_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json(v) for v in value]
    return value


def exact_sqrt(x):
    """Square root, exact when ``x`` is the square of a rational."""
    if isinstance(x, Rational) and x >= 0:
        x = Fraction(x)
        n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if n * n == x.numerator and d * d == x.denominator:
            return Fraction(n, d)
    return math.sqrt(x)


def exact_root(x, p):
    """``x ** (1/p)``, exact for perfect powers with integer ``p``."""
    if p == 2:
        return exact_sqrt(x)
    return float(x) ** (1.0 / float(p))
