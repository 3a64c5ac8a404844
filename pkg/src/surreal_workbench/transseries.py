"""Exponential normal forms over the log-atomic ladder.

A :class:`TSeries` is a finite sum ``sum r_i * e^(gamma_i)`` whose
monomials are either ladder atoms ``lambda_s`` (``lambda_0 = w``,
``lambda_-1 = log w``, ``lambda_1 = exp w``) or ``e^gamma`` for a purely
infinite ``gamma``.  Monomials compare through their logarithms, so every
ordering question reduces to a smaller one until two atoms meet.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterator, Optional

from . import coeffs, config
from . import explog
from . import ordinals as ords
from .conway import Monomial, Surreal, omega_pow
from .errors import (
    DepthExceeded,
    NoPath,
    NotInfinite,
    NotPositive,
    NotPurelyInfinite,
    OrdinalOverflow,
    UnsupportedExponent,
    ZeroArgument,
)
from .hahn import Series, TruncatedResult, analytic_extend, widen_exp, widen_log


class TMonomial:
    """Either the atom ``lambda_s`` or ``e^gamma`` (``gamma`` purely infinite)."""

    __slots__ = ("atom", "gamma", "_hash")
    ONE: TMonomial

    def __init__(self, atom: Optional[int] = None, gamma: Optional[TSeries] = None):
        self.atom = atom
        self.gamma = gamma
        self._hash = hash(("atom", atom)) if atom is not None else hash(("e", gamma))

    @staticmethod
    def of_atom(s: int) -> TMonomial:
        return _atom(s)

    @staticmethod
    def exp_of(gamma: TSeries) -> TMonomial:
        """``e^gamma`` in canonical form; ``gamma`` must be purely infinite."""
        if gamma.is_zero:
            return TMonomial.ONE
        if len(gamma.terms) == 1:
            m, c = gamma.terms[0]
            if c == 1 and m.atom is not None:
                _check_subscript(m.atom + 1)
                return _atom(m.atom + 1)
        return TMonomial(gamma=gamma)

    @property
    def is_atom(self) -> bool:
        return self.atom is not None

    @property
    def is_one(self) -> bool:
        return self.atom is None and self.gamma.is_zero

    def log(self) -> TSeries:
        if self.atom is not None:
            _check_subscript(self.atom - 1)
            return TSeries(((_atom(self.atom - 1), coeffs.one()),))
        return self.gamma

    def __lt__(self, other: TMonomial) -> bool:
        if self.atom is not None and other.atom is not None:
            return self.atom < other.atom
        return self.log().cmp(other.log()) < 0

    def __gt__(self, other: TMonomial) -> bool:
        return other < self

    def __le__(self, other: TMonomial) -> bool:
        return not other < self

    def __ge__(self, other: TMonomial) -> bool:
        return not self < other

    def __eq__(self, other) -> bool:
        if not isinstance(other, TMonomial):
            return False
        if self.atom is not None or other.atom is not None:
            return self.atom == other.atom
        return self.gamma == other.gamma

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: TMonomial) -> TMonomial:
        if self.is_one:
            return other
        if other.is_one:
            return self
        return TMonomial.exp_of(self.log() + other.log())

    def __truediv__(self, other: TMonomial) -> TMonomial:
        return self * other.inverse()

    def inverse(self) -> TMonomial:
        return TMonomial.exp_of(-self.log())

    def __pow__(self, r) -> TMonomial:
        if self.is_one or r == 1:
            return self
        return TMonomial.exp_of(self.log() * r)

    @property
    def depth(self) -> int:
        return 0 if self.atom is not None else self.gamma.depth

    def as_series(self) -> TSeries:
        return TSeries(((self, coeffs.one()),))

    def __str__(self) -> str:
        return format_monomial(self)

    __repr__ = __str__


@lru_cache(maxsize=None)
def _atom(s: int) -> TMonomial:
    return TMonomial(atom=s)


class TSeries(Series[TMonomial]):
    MONO = TMonomial
    __slots__ = ("depth",)

    def __init__(self, terms: tuple = ()):
        super().__init__(terms)
        d = 1 + max((m.depth for m, _ in self.terms), default=-1) if self.terms else 0
        if d > config.current().depth_limit:
            raise DepthExceeded(f"nesting depth {d} exceeds limit {config.current().depth_limit}")
        object.__setattr__(self, "depth", d)

    def __truediv__(self, other):
        if isinstance(other, Series):
            if other.is_term:
                return self * other ** -1
            raise TypeError("division by a multi-term series is truncated; use divide_truncated")
        return self * coeffs.div(1, other)

    def __str__(self) -> str:
        return format_text(self)

    def __repr__(self) -> str:
        return f"TSeries({format_text(self)})"


TMonomial.ONE = TMonomial(gamma=TSeries(()))


@dataclass(frozen=True)
class LadderAtom:
    """``lambda_index``: ``log_n(w)`` for index ``-n``, ``exp_n(w)`` for index ``n``."""

    index: int

    @property
    def monomial(self) -> TMonomial:
        return _atom(self.index)

    @property
    def series(self) -> TSeries:
        return self.monomial.as_series()

    def __str__(self) -> str:
        return format_monomial(self.monomial)


# ladder ---------------------------------------------------------------------


def _check_subscript(n: int) -> None:
    limit = config.current().depth_limit
    if abs(n) > limit:
        raise DepthExceeded(f"ladder subscript {n} exceeds depth limit {limit}")


def ladder(n: int) -> TSeries:
    _check_subscript(n)
    return _atom(n).as_series()


def omega() -> TSeries:
    return ladder(0)


def lambda_ordinal(alpha: ords.Ordinal) -> Surreal:
    """``lambda_(-alpha) = w^(w^(-alpha))`` on the Conway side."""
    limit = config.current().depth_limit
    if alpha.depth >= limit:
        raise OrdinalOverflow(f"ordinal depth {alpha.depth} reaches the limit {limit}")
    return omega_pow(omega_pow(-ords.embed(alpha)))


def _require_infinite(f: TSeries) -> None:
    if not (f.is_infinite and f.sign() > 0):
        raise NotInfinite(f"expected a positive infinite argument, got {f}")


def is_log_atomic(f: TSeries) -> bool:
    _require_infinite(f)
    while True:
        if not f.is_monomial:
            return False
        m = f.lead_monomial
        if m.is_atom:
            return True
        f = m.gamma


class Level(enum.Enum):
    LOWER = "lower"
    SAME = "same"
    HIGHER = "higher"


def level_compare(x: TSeries, y: TSeries) -> Level:
    """Compare levels through the leading monomials of iterated logarithms."""
    _require_infinite(x)
    _require_infinite(y)
    a, b = x.lead_monomial, y.lead_monomial
    for _ in range(config.current().depth_limit + 1):
        if a == b:
            return Level.SAME
        if a.is_atom and b.is_atom:
            # distinct atoms stay distinct under every further log
            return Level.LOWER if x < y else Level.HIGHER
        a, b = a.log().lead_monomial, b.log().lead_monomial
    raise DepthExceeded("level comparison undecided at the depth limit")


# paths ----------------------------------------------------------------------


@dataclass(frozen=True)
class Path:
    """Steps ``P_0, P_1, ...`` ending at the first unit-coefficient atom."""

    steps: tuple[tuple[Any, TMonomial], ...]
    terminal: LadderAtom

    def step(self, i: int) -> TSeries:
        c, m = self.steps[i]
        return TSeries(((m, c),))

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return " -> ".join(format_text(self.step(i)) for i in range(len(self.steps)))


def _paths_from(c, m: TMonomial) -> Iterator[tuple[tuple[Any, TMonomial], ...]]:
    if m.is_atom:
        if c == 1:
            yield ((c, m),)
        else:
            # r * lambda_s = r * e^(lambda_(s-1)) continues into lambda_(s-1)
            yield ((c, m), (coeffs.one(), _atom(m.atom - 1)))
        return
    for mm, cc in m.gamma.terms:
        for rest in _paths_from(cc, mm):
            yield ((c, m),) + rest


def paths(f: TSeries) -> list[Path]:
    out = []
    for m, c in f.terms:
        if m.is_one:
            continue
        for steps in _paths_from(c, m):
            out.append(Path(steps, LadderAtom(steps[-1][1].atom)))
    return out


def dominant_path(f: TSeries) -> Path:
    up = TSeries(tuple(t for t in f.terms if not t[0].is_one))
    if up.is_zero:
        raise NoPath(f"{f} is a real constant and has no paths")
    c, m = up.terms[0][1], up.terms[0][0]
    steps = []
    while True:
        steps.append((c, m))
        if m.is_atom:
            if c != 1:
                steps.append((coeffs.one(), _atom(m.atom - 1)))
            break
        m, c = m.gamma.terms[0]
    return Path(tuple(steps), LadderAtom(steps[-1][1].atom))


def verify_T4(p: Path) -> int:
    """Least ``n0`` with ``P_n = +-exp(x_n + P_(n+1))`` for all ``n >= n0``."""

    def good(i: int) -> bool:
        c, m = p.steps[i]
        if not coeffs.is_unit(c):
            return False
        if i + 1 == len(p.steps) or m.is_atom:
            return True
        nc, nm = p.steps[i + 1]
        # the next step must be the last term of the exponent
        return m.gamma.terms[-1] == (nm, nc)

    n0 = len(p.steps)
    while n0 > 0 and good(n0 - 1):
        n0 -= 1
    return n0


# nested truncation ----------------------------------------------------------


@lru_cache(maxsize=4096)
def nested_truncations(x: TSeries) -> frozenset:
    """All ``y`` with ``y`` a nested truncation of ``x`` (``x`` included)."""
    if x.is_zero:
        raise ZeroArgument("nested truncation is defined on nonzero numbers")
    out = {x}
    for k in range(1, len(x.terms)):
        out |= nested_truncations(TSeries(x.terms[:k]))
    m, r = x.terms[-1]
    if m.is_atom and coeffs.is_unit(r):
        return frozenset(out)  # +-lambda is minimal
    if m.is_one:
        return frozenset(out)
    prefix = TSeries(x.terms[:-1])
    sign = coeffs.coerce(coeffs.sign(r))
    for gsub in nested_truncations(m.log()):
        if not gsub.is_purely_infinite:
            continue
        e = TMonomial.exp_of(gsub)
        if any(not (e < pm) for pm, _ in prefix.terms):
            continue
        y = TSeries(prefix.terms + ((e, sign),))
        if y != x:
            out |= nested_truncations(y)
    return frozenset(out)


def nested_trunc_leq(f: TSeries, g: TSeries) -> bool:
    if f.is_zero or g.is_zero:
        raise ZeroArgument("nested truncation is defined on nonzero numbers")
    return f in nested_truncations(g)


@lru_cache(maxsize=4096)
def nr(x: TSeries) -> int:
    if x.is_zero:
        raise ZeroArgument("nr(0) is undefined")
    below = [nr(y) + 1 for y in nested_truncations(x) if y != x]
    return max(below, default=0)


# transseries membership -----------------------------------------------------


def branch_bounds(f: TSeries) -> tuple[int, int]:
    """``(m, n)``: longest path and largest ``|subscript|`` among terminals."""
    ps = paths(f)
    m = max((len(p) for p in ps), default=0)
    n = max((abs(p.terminal.index) for p in ps), default=0)
    return m, n


def in_T(f: TSeries) -> bool:
    # every branch of a finite representation ends at a ladder atom, and
    # there are finitely many branches, so a uniform bound always exists
    branch_bounds(f)
    return True


def in_TEL(f: TSeries) -> bool:
    return all(isinstance(p.terminal, LadderAtom) for p in paths(f))


# conversions ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _mono_to_conway(m: TMonomial) -> Monomial:
    if m.is_one:
        return Monomial.ONE
    if m.is_atom:
        if m.atom <= 0:
            return Monomial(omega_pow(Surreal.const(m.atom)))
        return Monomial(explog.G(to_conway(_atom(m.atom - 1).as_series())))
    return Monomial(explog.G(to_conway(m.gamma)))


def to_conway(f: TSeries) -> Surreal:
    """``e^gamma = w^G(gamma)`` termwise."""
    return Surreal.from_terms((_mono_to_conway(m), c) for m, c in f.terms)


@lru_cache(maxsize=None)
def _mono_from_conway(m: Monomial) -> TMonomial:
    y = m.exponent
    if y.is_zero:
        return TMonomial.ONE
    if y.is_monomial:
        z = y.ind
        if z.sign() < 0:
            if z.is_const and coeffs.to_fraction(z.real_part).denominator == 1:
                n = int(coeffs.to_fraction(z.real_part))
                _check_subscript(n)
                return _atom(n)
            if ords.from_surreal(-z) is not None:
                raise UnsupportedExponent(f"the log-atomic w^(w^({z})) lies below every ladder atom")
        elif z.is_zero:
            return _atom(0)
    gamma = from_conway(explog.H(y))
    return TMonomial.exp_of(gamma)


def from_conway(x: Surreal) -> TSeries:
    """``w^x = e^H(x)`` termwise."""
    return TSeries.from_terms((_mono_from_conway(m), c) for m, c in x.terms)


# exp and log in exponential normal form -------------------------------------


def exp_t(f: TSeries, order: int = 8) -> TruncatedResult:
    up, real, down = f.decompose()
    mono = TMonomial.exp_of(up)
    series = analytic_extend(explog.exp_taylor, real, down, order)
    bound = None if series.remainder_bound is None else series.remainder_bound * mono
    return TruncatedResult(series.value.times_monomial(mono), bound, order)


def log_t(f: TSeries, order: int = 8) -> TruncatedResult:
    if f.sign() <= 0:
        raise NotPositive(f"log needs a positive argument, got {f}")
    m, r = f.terms[0]
    eps = f.times_monomial(m.inverse()) - TSeries.const(r)
    tail = analytic_extend(explog.log_taylor, r, eps, order)
    return TruncatedResult(m.log() + tail.value, tail.remainder_bound, order)


def exp_tr(x: TruncatedResult, order: int = 8) -> TruncatedResult:
    return widen_exp(exp_t(x.value, order), x.remainder_bound, TMonomial.ONE)


def log_tr(x: TruncatedResult, order: int = 8) -> TruncatedResult:
    return widen_log(log_t(x.value, order), x.value, x.remainder_bound)


def monomial_rpow(m: TMonomial, r) -> TMonomial:
    return m ** coeffs.coerce(r)


# formats --------------------------------------------------------------------


def format_atom(s: int) -> str:
    if s == 0:
        return "w"
    if s == -1:
        return "log(w)"
    if s == 1:
        return "exp(w)"
    return f"log_{-s}(w)" if s < 0 else f"exp_{s}(w)"


def format_monomial(m: TMonomial) -> str:
    if m.is_one:
        return "1"
    if m.is_atom:
        return format_atom(m.atom)
    return f"E^({format_text(m.gamma)})"


def format_text(f: TSeries) -> str:
    if f.is_zero:
        return "0"
    parts = []
    for m, c in f.terms:
        if m.is_one:
            parts.append(coeffs.fmt(c))
        elif c == 1:
            parts.append(format_monomial(m))
        else:
            parts.append(f"{coeffs.fmt(c)}*{format_monomial(m)}")
    return " + ".join(parts)


def monomial_obj(m: TMonomial) -> dict[str, Any]:
    if m.is_atom:
        return {"atom": m.atom}
    return {"exp": to_obj(m.gamma)}


def to_obj(f: TSeries) -> dict[str, Any]:
    return {"terms": [{"mono": monomial_obj(m), "coeff": coeffs.fmt(c)} for m, c in f.terms]}


def to_json(f: TSeries) -> str:
    return json.dumps(to_obj(f), separators=(",", ":"))


def from_obj(obj: dict[str, Any]) -> TSeries:
    def mono(d):
        if "atom" in d:
            return _atom(int(d["atom"]))
        return TMonomial.exp_of(from_obj(d["exp"]))

    return TSeries.from_terms((mono(t["mono"]), coeffs.parse(t["coeff"])) for t in obj["terms"])


def from_json(text: str) -> TSeries:
    return from_obj(json.loads(text))


def path_obj(p: Path) -> dict[str, Any]:
    return {
        "steps": [format_text(p.step(i)) for i in range(len(p))],
        "terminal": p.terminal.index,
    }


def check_purely_infinite(gamma: TSeries) -> TSeries:
    if not gamma.is_purely_infinite:
        raise NotPurelyInfinite(f"exponent {gamma} is not purely infinite")
    return gamma


def exp_monomial(gamma: TSeries) -> TSeries:
    """``e^gamma`` as a one-term series, for purely infinite ``gamma``."""
    return TMonomial.exp_of(check_purely_infinite(gamma)).as_series()
