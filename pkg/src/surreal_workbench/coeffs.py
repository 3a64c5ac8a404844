"""Real coefficients in the two supported modes.

Exact mode uses :class:`fractions.Fraction`; numeric mode uses
:class:`decimal.Decimal` at the configured precision.  All arithmetic on
coefficients goes through the helpers here so the two types never mix.
"""

from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction
from typing import Union

from . import config
from .errors import CoefficientNotRepresentable, NotPositive

Coeff = Union[Fraction, Decimal]


def coerce(x) -> Coeff:
    if config.current().numeric:
        if isinstance(x, Decimal):
            return +x
        if isinstance(x, Fraction):
            return Decimal(x.numerator) / Decimal(x.denominator)
        if isinstance(x, str):
            return Decimal(x)
        return Decimal(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Decimal):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact coefficients")
    return Fraction(x)


def zero() -> Coeff:
    return coerce(0)


def one() -> Coeff:
    return coerce(1)


def _pair(a, b):
    if type(a) is type(b) and not isinstance(a, int):
        return a, b
    return coerce(a), coerce(b)


def add(a, b) -> Coeff:
    a, b = _pair(a, b)
    return a + b


def mul(a, b) -> Coeff:
    a, b = _pair(a, b)
    return a * b


def div(a, b) -> Coeff:
    a, b = _pair(a, b)
    return a / b


def sign(a) -> int:
    return (a > 0) - (a < 0)


def is_unit(a) -> bool:
    return a == 1 or a == -1


def factorial_inv(n: int) -> Coeff:
    return coerce(Fraction(1, math.factorial(n)))


def exp_real(r) -> Coeff:
    if r == 0:
        return one()
    if not config.current().numeric:
        raise CoefficientNotRepresentable(f"exp({fmt(r)}) is not an exact rational; use numeric mode")
    return coerce(r).exp()


def log_real(r) -> Coeff:
    if r == 1:
        return zero()
    if r <= 0:
        raise NotPositive(f"log of non-positive real {fmt(r)}")
    if not config.current().numeric:
        raise CoefficientNotRepresentable(f"log({fmt(r)}) is not an exact rational; use numeric mode")
    return coerce(r).ln()


def fmt(c) -> str:
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"
    if isinstance(c, Decimal):
        if c == c.to_integral_value():
            return str(c.quantize(Decimal(1)))
        return format(c.normalize(), "f")
    return str(c)


def parse(text: str) -> Coeff:
    text = text.strip()
    if "/" in text:
        p, q = text.split("/")
        return coerce(Fraction(int(p), int(q)))
    if any(ch in text for ch in ".eE"):
        return coerce(Decimal(text))
    return coerce(int(text))


def to_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)
