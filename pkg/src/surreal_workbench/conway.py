"""Hereditarily finite Conway normal forms ``sum w^(x_i) * r_i``."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Iterable

from . import coeffs, config
from .errors import DepthExceeded
from .hahn import (
    Series,
    TruncatedResult,
    analytic_extend,
    asymp,
    divide_truncated,
    inverse_truncated,
    is_truncation,
    prec,
    preceq,
    sim,
    sum_family,
)

__all__ = [
    "Monomial",
    "Surreal",
    "TruncatedResult",
    "surreal_compare",
    "preceq",
    "prec",
    "asymp",
    "sim",
    "add",
    "neg",
    "mul",
    "decompose",
    "omega_pow",
    "monomial_rpow",
    "inverse_truncated",
    "divide_truncated",
    "analytic_extend",
    "is_truncation",
    "sum_family",
    "format_text",
    "to_json",
    "from_json",
]


class Monomial:
    """``w^exponent``; multiplying monomials adds exponents."""

    __slots__ = ("exponent", "_hash")
    ONE: Monomial

    def __init__(self, exponent: Surreal):
        self.exponent = exponent
        self._hash = hash(("w", exponent))

    def __lt__(self, other: Monomial) -> bool:
        return self.exponent.cmp(other.exponent) < 0

    def __gt__(self, other: Monomial) -> bool:
        return other < self

    def __le__(self, other: Monomial) -> bool:
        return not other < self

    def __ge__(self, other: Monomial) -> bool:
        return not self < other

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.exponent == other.exponent

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(self.exponent + other.exponent)

    def __truediv__(self, other: Monomial) -> Monomial:
        return Monomial(self.exponent - other.exponent)

    def __pow__(self, n) -> Monomial:
        return Monomial(self.exponent * n)

    def inverse(self) -> Monomial:
        return Monomial(-self.exponent)

    @property
    def is_one(self) -> bool:
        return self.exponent.is_zero

    def as_surreal(self) -> Surreal:
        return Surreal(((self, coeffs.one()),))

    def __str__(self) -> str:
        return format_text(self.as_surreal())

    __repr__ = __str__


class Surreal(Series[Monomial]):
    MONO = Monomial
    __slots__ = ("depth",)

    def __init__(self, terms: tuple = ()):
        super().__init__(terms)
        d = 1 + max((m.exponent.depth for m, _ in self.terms), default=-1) if self.terms else 0
        if d > config.current().depth_limit:
            raise DepthExceeded(f"nesting depth {d} exceeds limit {config.current().depth_limit}")
        object.__setattr__(self, "depth", d)

    @classmethod
    def omega(cls) -> Surreal:
        return omega_pow(cls.const(1))

    def __truediv__(self, other):
        if isinstance(other, Series):
            if other.is_term:
                return self * other ** -1
            raise TypeError("division by a multi-term series is truncated; use divide_truncated")
        return self * coeffs.div(1, other)

    @property
    def ind(self) -> Surreal:
        return self.terms[0][0].exponent

    def __str__(self) -> str:
        return format_text(self)

    def __repr__(self) -> str:
        return f"Surreal({format_text(self)})"


Monomial.ONE = Monomial(Surreal(()))


def surreal_compare(f: Surreal, g: Surreal) -> int:
    return Surreal.lift(f).cmp(g)


def add(f: Surreal, g: Surreal) -> Surreal:
    return f + g


def neg(f: Surreal) -> Surreal:
    return -f


def mul(f: Surreal, g: Surreal) -> Surreal:
    return f * g


def decompose(f: Surreal):
    return f.decompose()


def omega_pow(x) -> Surreal:
    """The single-term series ``w^x``."""
    return Monomial(Surreal.lift(x)).as_surreal()


def monomial_rpow(m: Monomial, r) -> Monomial:
    """``(w^x)^r = w^(x r)``."""
    return Monomial(m.exponent * coeffs.coerce(r))


def from_rational(q) -> Surreal:
    return Surreal.const(q)


# formats --------------------------------------------------------------------


def format_coeff(c, wrap: bool) -> str:
    s = coeffs.fmt(c)
    return f"({s})" if wrap and s.startswith("-") else s


def format_text(f: Surreal) -> str:
    if f.is_zero:
        return "0"
    parts = []
    for m, c in f.terms:
        if m.is_one:
            parts.append(coeffs.fmt(c))
            continue
        e = m.exponent
        base = "w" if e == 1 else f"w^({format_text(e)})"
        parts.append(base if c == 1 else f"{base}*{format_coeff(c, True)}")
    return " + ".join(parts)


def to_obj(f: Surreal) -> dict[str, Any]:
    return {"terms": [{"exp": to_obj(m.exponent), "coeff": coeffs.fmt(c)} for m, c in f.terms]}


def to_json(f: Surreal) -> str:
    return json.dumps(to_obj(f), separators=(",", ":"))


def from_obj(obj: dict[str, Any]) -> Surreal:
    return Surreal.from_terms((Monomial(from_obj(t["exp"])), coeffs.parse(t["coeff"])) for t in obj["terms"])


def from_json(text: str) -> Surreal:
    return from_obj(json.loads(text))


def ensure(x) -> Surreal:
    if isinstance(x, Surreal):
        return x
    if isinstance(x, (int, Fraction)):
        return Surreal.const(x)
    raise TypeError(f"not a surreal: {x!r}")


def terms_of(pairs: Iterable[tuple[Surreal, Any]]) -> Surreal:
    """Build from (exponent, coefficient) pairs."""
    return Surreal.from_terms((Monomial(e), c) for e, c in pairs)


Surreal.from_exponents = staticmethod(terms_of)  # type: ignore[attr-defined]
