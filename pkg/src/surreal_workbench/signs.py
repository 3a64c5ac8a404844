"""The dyadic layer of No: finite sign expansions and option recursion."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Union

from .errors import GapViolation, NotDyadic


class Sign(enum.Enum):
    PLUS = "+"
    MINUS = "-"

    @property
    def weight(self) -> int:
        return 1 if self is Sign.PLUS else -1

    def flipped(self) -> Sign:
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS


PLUS, MINUS = Sign.PLUS, Sign.MINUS


@dataclass(frozen=True, order=False)
class Dyadic:
    """``numerator / 2**exponent`` in lowest terms."""

    numerator: int
    exponent: int = 0

    def __post_init__(self) -> None:
        if self.exponent < 0:
            raise ValueError("exponent must be a natural number")
        n, e = self.numerator, self.exponent
        while e > 0 and n % 2 == 0:
            n //= 2
            e -= 1
        if n == 0:
            e = 0
        object.__setattr__(self, "numerator", n)
        object.__setattr__(self, "exponent", e)

    @classmethod
    def of(cls, value: DyadicLike) -> Dyadic:
        if isinstance(value, Dyadic):
            return value
        q = Fraction(value)
        den = q.denominator
        if den & (den - 1):
            raise NotDyadic(f"{q} is not a dyadic rational")
        return cls(q.numerator, den.bit_length() - 1)

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __str__(self) -> str:
        v = self.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


DyadicLike = Union[Dyadic, Fraction, int, str]


@dataclass(frozen=True)
class SignExpansion:
    signs: tuple[Sign, ...] = ()

    @classmethod
    def parse(cls, text: str) -> SignExpansion:
        text = text.replace("−", "-")
        if any(ch not in "+-" for ch in text):
            raise ValueError(f"not a sign expansion: {text!r}")
        return cls(tuple(Sign(ch) for ch in text))

    def __str__(self) -> str:
        return "".join(s.value for s in self.signs)

    def __len__(self) -> int:
        return len(self.signs)

    def __iter__(self) -> Iterator[Sign]:
        return iter(self.signs)

    def __lt__(self, other: SignExpansion) -> bool:
        return compare(self, other) < 0

    def __le__(self, other: SignExpansion) -> bool:
        return compare(self, other) <= 0

    def __gt__(self, other: SignExpansion) -> bool:
        return compare(self, other) > 0

    def __ge__(self, other: SignExpansion) -> bool:
        return compare(self, other) >= 0

    def __neg__(self) -> SignExpansion:
        return neg(self)

    def __add__(self, other: SignExpansion) -> SignExpansion:
        return add(self, other)

    def __mul__(self, other: SignExpansion) -> SignExpansion:
        return mul(self, other)

    def prefixes(self) -> Iterator[SignExpansion]:
        """Proper prefixes, i.e. all strictly simpler numbers, root first."""
        for k in range(len(self.signs)):
            yield SignExpansion(self.signs[:k])

    def append(self, sign: Sign) -> SignExpansion:
        return SignExpansion(self.signs + (sign,))

    @property
    def value(self) -> Fraction:
        return to_dyadic(self).value


ZERO = SignExpansion()


def compare(a: SignExpansion, b: SignExpansion) -> int:
    """Total order: project the tree onto a line (missing sign counts as 0)."""
    for x, y in zip(a.signs, b.signs):
        if x is not y:
            return 1 if x.weight > y.weight else -1
    la, lb = len(a.signs), len(b.signs)
    if la == lb:
        return 0
    if la < lb:
        return -b.signs[la].weight
    return a.signs[lb].weight


def is_simpler(a: SignExpansion, b: SignExpansion) -> bool:
    return len(a.signs) < len(b.signs) and b.signs[: len(a.signs)] == a.signs


def birthday(a: SignExpansion) -> int:
    return len(a.signs)


def to_dyadic(a: SignExpansion) -> Dyadic:
    value = Fraction(0)
    step = Fraction(1)
    halving = False
    first = a.signs[0] if a.signs else None
    for s in a.signs:
        if not halving and s is not first:
            halving = True
            step = Fraction(1, 2)
        value += step * s.weight
        if halving:
            step /= 2
    return Dyadic.of(value)


def _descend(lo: Fraction | None, hi: Fraction | None) -> SignExpansion:
    # Walk down from the root until the current node lies strictly in (lo, hi).
    signs: list[Sign] = []
    cur = Fraction(0)
    step = Fraction(1)
    halving = False
    while True:
        if lo is not None and cur <= lo:
            s = PLUS
        elif hi is not None and cur >= hi:
            s = MINUS
        else:
            return SignExpansion(tuple(signs))
        if signs and not halving and s is not signs[0]:
            halving = True
            step = Fraction(1, 2)
        cur += step * s.weight
        signs.append(s)
        if halving:
            step /= 2


def from_dyadic(d: DyadicLike) -> SignExpansion:
    target = Dyadic.of(d).value
    signs: list[Sign] = []
    cur = Fraction(0)
    step = Fraction(1)
    halving = False
    while cur != target:
        s = PLUS if target > cur else MINUS
        if signs and not halving and s is not signs[0]:
            halving = True
            step = Fraction(1, 2)
        cur += step * s.weight
        signs.append(s)
        if halving:
            step /= 2
    return SignExpansion(tuple(signs))


def simplest_in_gap(left: Iterable[DyadicLike], right: Iterable[DyadicLike]) -> SignExpansion:
    """The minimal-birthday sign expansion strictly between ``left`` and ``right``."""
    lo_vals = [Dyadic.of(x).value for x in left]
    hi_vals = [Dyadic.of(x).value for x in right]
    lo = max(lo_vals) if lo_vals else None
    hi = min(hi_vals) if hi_vals else None
    if lo is not None and hi is not None and lo >= hi:
        raise GapViolation(f"empty gap: max(L) = {lo} >= min(R) = {hi}")
    return _descend(lo, hi)


def options(x: SignExpansion) -> tuple[list[SignExpansion], list[SignExpansion]]:
    """Canonical left and right options: the simpler numbers below / above ``x``."""
    left, right = [], []
    for p in x.prefixes():
        (left if compare(p, x) < 0 else right).append(p)
    return left, right


def neg(x: SignExpansion) -> SignExpansion:
    return SignExpansion(tuple(s.flipped() for s in x.signs))


# The recursions below work on plain "+-" strings: hashing them is far
# cheaper than hashing tuples of enum members.


def _ordered(x: str, y: str) -> tuple[str, str]:
    return (y, x) if (len(x), x) > (len(y), y) else (x, y)


@lru_cache(maxsize=None)
def _value(x: str) -> Fraction:
    return to_dyadic(SignExpansion.parse(x)).value


@lru_cache(maxsize=None)
def _split(x: str) -> tuple[tuple[str, ...], tuple[str, ...]]:
    v = _value(x)
    left = tuple(x[:k] for k in range(len(x)) if _value(x[:k]) < v)
    right = tuple(x[:k] for k in range(len(x)) if _value(x[:k]) > v)
    return left, right


def _gap_value(left: list[Fraction], right: list[Fraction]) -> Fraction:
    lo = max(left, default=None)
    hi = min(right, default=None)
    if lo is not None and hi is not None and lo >= hi:
        raise GapViolation(f"empty gap: max(L) = {lo} >= min(R) = {hi}")
    return _descend(lo, hi).value


@lru_cache(maxsize=None)
def _add_value(x: str, y: str) -> Fraction:
    # Addition is strictly monotone, so only the extremal options matter:
    # the greatest left option drops the last plus, the least right option
    # drops the last minus.
    left, right = [], []
    for a, b in ((x, y), (y, x)):
        k = a.rfind("+")
        if k >= 0:
            left.append(_add_value(*_ordered(a[:k], b)))
        k = a.rfind("-")
        if k >= 0:
            right.append(_add_value(*_ordered(a[:k], b)))
    return _gap_value(left, right)


@lru_cache(maxsize=None)
def _mul_value(x: str, y: str) -> Fraction:
    xL, xR = _split(x)
    yL, yR = _split(y)

    def m(a: str, b: str) -> Fraction:
        return _mul_value(*_ordered(a, b))

    def term(a: str, b: str) -> Fraction:
        return m(a, y) + m(x, b) - m(a, b)

    left = [term(a, b) for a in xL for b in yL] + [term(a, b) for a in xR for b in yR]
    right = [term(a, b) for a in xL for b in yR] + [term(a, b) for a in xR for b in yL]
    return _gap_value(left, right)


def add(x: SignExpansion, y: SignExpansion) -> SignExpansion:
    """``{x^L + y, x + y^L} | {x^R + y, x + y^R}``.

    The recursion runs over pairs of prefixes. Intermediate results are kept
    as dyadic values and re-encoded once at the end.
    """
    return from_dyadic(_add_value(*_ordered(str(x), str(y))))


def sub(x: SignExpansion, y: SignExpansion) -> SignExpansion:
    return add(x, neg(y))


def mul(x: SignExpansion, y: SignExpansion) -> SignExpansion:
    """Conway's product over canonical options, normalized to the simplest form."""
    return from_dyadic(_mul_value(*_ordered(str(x), str(y))))
