"""Ordinals below epsilon_0 in Cantor normal form, with natural operations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import TYPE_CHECKING, Iterable

from . import config
from .errors import OrdinalOverflow

if TYPE_CHECKING:
    from .conway import Surreal


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    """``sum w^(e_i) * c_i`` with strictly decreasing exponents and ``c_i >= 1``."""

    terms: tuple[tuple[Ordinal, int], ...] = ()

    def __post_init__(self) -> None:
        prev = None
        for e, c in self.terms:
            if not isinstance(c, int) or c < 1:
                raise ValueError("CNF coefficients must be positive integers")
            if prev is not None and not e < prev:
                raise ValueError("CNF exponents must be strictly decreasing")
            prev = e
        if self.depth > config.current().depth_limit:
            raise OrdinalOverflow(
                f"ordinal nesting depth {self.depth} exceeds limit {config.current().depth_limit}"
            )

    @classmethod
    def of(cls, n: int) -> Ordinal:
        if n < 0:
            raise ValueError("ordinals are non-negative")
        return cls(((ZERO, n),)) if n else ZERO

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[Ordinal, int]]) -> Ordinal:
        """Collect arbitrary (exponent, coefficient) pairs into normal form."""
        acc: dict[Ordinal, int] = {}
        for e, c in pairs:
            if c:
                acc[e] = acc.get(e, 0) + c
        return cls(tuple(sorted(((e, c) for e, c in acc.items() if c), key=lambda t: t[0], reverse=True)))

    @property
    def depth(self) -> int:
        return 1 + max((e.depth for e, _ in self.terms), default=-1) if self.terms else 0

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return all(e.is_zero for e, _ in self.terms)

    @property
    def finite_part(self) -> int:
        if self.terms and self.terms[-1][0].is_zero:
            return self.terms[-1][1]
        return 0

    def __int__(self) -> int:
        if not self.is_finite:
            raise ValueError("infinite ordinal has no integer value")
        return self.finite_part

    def __lt__(self, other: Ordinal) -> bool:
        return ord_compare(self, other) < 0

    def __add__(self, other: Ordinal) -> Ordinal:
        return hess_add(self, other)

    def __mul__(self, other: Ordinal) -> Ordinal:
        return hess_mul(self, other)

    def __str__(self) -> str:
        return format_ordinal(self)


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def ord_compare(a: Ordinal, b: Ordinal) -> int:
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = ord_compare(ea, eb)
        if c:
            return c
        if ca != cb:
            return 1 if ca > cb else -1
    return (len(a.terms) > len(b.terms)) - (len(a.terms) < len(b.terms))


def hess_add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Natural sum: merge the normal forms, adding coefficients of equal exponents."""
    return Ordinal.from_terms(a.terms + b.terms)


def hess_mul(a: Ordinal, b: Ordinal) -> Ordinal:
    """Natural product: distribute, combining exponents with the natural sum."""
    return Ordinal.from_terms((hess_add(ea, eb), ca * cb) for ea, ca in a.terms for eb, cb in b.terms)


def omega_power(e: Ordinal, c: int = 1) -> Ordinal:
    return Ordinal(((e, c),)) if c else ZERO


def embed(a: Ordinal) -> Surreal:
    """The ordinal as a Conway normal form with integer coefficients."""
    from fractions import Fraction

    from .conway import Monomial, Surreal

    return Surreal.from_terms((Monomial(embed(e)), Fraction(c)) for e, c in a.terms)


def from_surreal(x: Surreal) -> Ordinal | None:
    """Inverse of :func:`embed`; ``None`` when ``x`` is not an ordinal."""
    pairs = []
    for m, c in x.terms:
        if c <= 0 or c != int(c):
            return None
        e = from_surreal(m.exponent)
        if e is None:
            return None
        pairs.append((e, int(c)))
    try:
        return Ordinal(tuple(pairs))
    except ValueError:
        return None


def format_ordinal(a: Ordinal) -> str:
    if a.is_zero:
        return "0"
    parts = []
    for e, c in a.terms:
        if e.is_zero:
            parts.append(str(c))
            continue
        base = "w" if e == ONE else f"w^({format_ordinal(e)})"
        parts.append(base if c == 1 else f"{base}*{c}")
    return " + ".join(parts)
