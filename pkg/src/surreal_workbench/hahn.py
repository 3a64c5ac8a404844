"""Finite Hahn series over an ordered monomial group.

Both number types of the workbench (Conway normal forms and exponential
normal forms) are finite sums ``sum c_i * m_i`` with strictly decreasing
monomials.  This module holds everything that does not care what a
monomial is: ring operations, order, dominance, truncation, and the
truncated inverse / analytic extension with remainder bounds.

A monomial class must provide ``__lt__``, ``__eq__``, ``__hash__``,
``__mul__``, ``inverse()``, ``is_one`` and a class attribute ``ONE``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Callable, ClassVar, Generic, Iterable, Optional, Sequence, TypeVar

from . import coeffs
from .errors import DivisionByZero, NotInfinitesimal, PrecisionLoss

M = TypeVar("M")
S = TypeVar("S", bound="Series")


def _mono_cmp(a, b) -> int:
    return -1 if a < b else (1 if b < a else 0)


_desc_key = cmp_to_key(lambda a, b: _mono_cmp(b[0], a[0]))


class Series(Generic[M]):
    """Immutable finite series; subclasses set ``MONO``."""

    MONO: ClassVar[type]
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: tuple = ()):
        object.__setattr__(self, "terms", tuple(terms))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):
        raise AttributeError("series are immutable")

    # construction ---------------------------------------------------------

    @classmethod
    def from_terms(cls: type[S], pairs: Iterable[tuple]) -> S:
        acc: dict = {}
        for m, c in pairs:
            c = coeffs.coerce(c)
            acc[m] = acc[m] + c if m in acc else c
        items = [(m, c) for m, c in acc.items() if c != 0]
        items.sort(key=_desc_key)
        return cls(tuple(items))

    @classmethod
    def zero(cls: type[S]) -> S:
        return cls(())

    @classmethod
    def const(cls: type[S], c) -> S:
        c = coeffs.coerce(c)
        return cls(((cls.MONO.ONE, c),)) if c != 0 else cls(())

    @classmethod
    def of_monomial(cls: type[S], m, c=1) -> S:
        c = coeffs.coerce(c)
        return cls(((m, c),)) if c != 0 else cls(())

    @classmethod
    def lift(cls: type[S], x) -> S:
        if isinstance(x, cls):
            return x
        if isinstance(x, Series):
            raise TypeError(f"cannot mix {type(x).__name__} and {cls.__name__}")
        return cls.const(x)

    # basic queries --------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def lead_monomial(self):
        return self.terms[0][0] if self.terms else None

    @property
    def lead_coeff(self):
        return self.terms[0][1] if self.terms else coeffs.zero()

    @property
    def lead_term(self: S) -> S:
        return type(self)(self.terms[:1])

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1 and self.terms[0][1] == 1

    @property
    def is_term(self) -> bool:
        return len(self.terms) == 1

    @property
    def is_const(self) -> bool:
        return all(m.is_one for m, _ in self.terms)

    def coeff_of(self, m):
        for mm, c in self.terms:
            if mm == m:
                return c
        return coeffs.zero()

    @property
    def real_part(self):
        return self.coeff_of(self.MONO.ONE)

    def monomials(self) -> list:
        return [m for m, _ in self.terms]

    # ring operations ------------------------------------------------------

    def __add__(self: S, other) -> S:
        other = self.lift(other)
        return self.from_terms(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self: S) -> S:
        return type(self)(tuple((m, -c) for m, c in self.terms))

    def __sub__(self: S, other) -> S:
        return self + (-self.lift(other))

    def __rsub__(self: S, other) -> S:
        return self.lift(other) - self

    def __mul__(self: S, other) -> S:
        if not isinstance(other, Series):
            c = coeffs.coerce(other)
            if c == 0:
                return type(self)(())
            return type(self)(tuple((m, coeffs.mul(a, c)) for m, a in self.terms))
        other = self.lift(other)
        return self.from_terms(
            (m1 * m2, coeffs.mul(c1, c2)) for m1, c1 in self.terms for m2, c2 in other.terms
        )

    __rmul__ = __mul__

    def scale(self: S, c) -> S:
        return self * c

    def times_monomial(self: S, m) -> S:
        # multiplication by a monomial preserves the order of terms
        return type(self)(tuple((mm * m, c) for mm, c in self.terms))

    def __pow__(self: S, n: int) -> S:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_term:
                raise ValueError("negative powers need a single-term series; use inverse_truncated")
            (m, c), = self.terms
            return type(self)(((m.inverse() ** (-n), coeffs.div(1, c) ** (-n)),))
        result = self.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # order ----------------------------------------------------------------

    def sign(self) -> int:
        return coeffs.sign(self.terms[0][1]) if self.terms else 0

    def cmp(self, other) -> int:
        """Walk both term lists in parallel; the first difference decides."""
        other = self.lift(other)
        a, b = self.terms, other.terms
        for (ma, ca), (mb, cb) in zip(a, b):
            if ma == mb:
                if ca != cb:
                    return 1 if ca > cb else -1
                continue
            # the larger monomial is present in only one of the two
            if mb < ma:
                return coeffs.sign(ca)
            return -coeffs.sign(cb)
        if len(a) > len(b):
            return coeffs.sign(a[len(b)][1])
        if len(b) > len(a):
            return -coeffs.sign(b[len(a)][1])
        return 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Series):
            return type(self) is type(other) and self.terms == other.terms
        try:
            return self.cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((type(self).__name__, self.terms))
            object.__setattr__(self, "_hash", h)
        return h

    def __lt__(self, other) -> bool:
        return self.cmp(other) < 0

    def __le__(self, other) -> bool:
        return self.cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self.cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self.cmp(other) >= 0

    def __abs__(self: S) -> S:
        return -self if self.sign() < 0 else self

    # truncation and decomposition -----------------------------------------

    def truncate(self: S, n: int) -> S:
        return type(self)(self.terms[:n])

    def above(self: S, m) -> S:
        """Terms whose monomial is strictly larger than ``m``."""
        if m is None:
            return self
        return type(self)(tuple(t for t in self.terms if m < t[0]))

    def decompose(self: S):
        """``(up, real, down)``: the purely infinite, real and infinitesimal parts."""
        one = self.MONO.ONE
        up = type(self)(tuple(t for t in self.terms if one < t[0]))
        down = type(self)(tuple(t for t in self.terms if t[0] < one))
        return up, self.real_part, down

    @property
    def is_purely_infinite(self) -> bool:
        one = self.MONO.ONE
        return all(one < m for m, _ in self.terms)

    @property
    def is_infinitesimal(self) -> bool:
        return not self.terms or self.terms[0][0] < self.MONO.ONE

    @property
    def is_infinite(self) -> bool:
        """Larger in absolute value than every natural number."""
        return bool(self.terms) and self.MONO.ONE < self.terms[0][0]


# dominance ------------------------------------------------------------------


def preceq(f: Series, g: Series) -> bool:
    if f.is_zero:
        return True
    if g.is_zero:
        return False
    return not (g.lead_monomial < f.lead_monomial)


def prec(f: Series, g: Series) -> bool:
    if g.is_zero:
        return False
    return f.is_zero or f.lead_monomial < g.lead_monomial


def asymp(f: Series, g: Series) -> bool:
    return preceq(f, g) and preceq(g, f)


def sim(f: Series, g: Series) -> bool:
    """``f - g`` is strictly dominated by ``f`` (equal leading terms)."""
    if f.is_zero or g.is_zero:
        return f.is_zero and g.is_zero
    return f.terms[0] == g.terms[0]


def mono_max(*ms):
    """Largest monomial, ignoring ``None``."""
    best = None
    for m in ms:
        if m is not None and (best is None or best < m):
            best = m
    return best


def is_truncation(g: Series, f: Series) -> bool:
    return g.terms == f.terms[: len(g.terms)]


def sum_family(fs: Sequence[Series], cls: type | None = None):
    fs = list(fs)
    if not fs:
        if cls is None:
            from .conway import Surreal

            cls = Surreal
        return cls.zero()
    cls = cls or type(fs[0])
    return cls.from_terms(t for f in fs for t in f.terms)


# truncated results ----------------------------------------------------------


@dataclass(frozen=True)
class TruncatedResult(Generic[S]):
    """A series value plus an optional remainder bound.

    When ``remainder_bound`` is set, the exact result minus ``value`` is
    dominated by it (``exact - value`` is ``O(remainder_bound)``), and
    every term of ``value`` lies strictly above it.
    """

    value: Series
    remainder_bound: Optional[object] = None
    order_used: int = 0

    @property
    def exact(self) -> bool:
        return self.remainder_bound is None

    @classmethod
    def of(cls, value: Series, bound=None, order: int = 0) -> TruncatedResult:
        value = value.above(bound) if bound is not None else value
        return cls(value, bound, order)

    def clip(self) -> TruncatedResult:
        return TruncatedResult.of(self.value, self.remainder_bound, self.order_used)

    def __add__(self, other) -> TruncatedResult:
        other = _as_tr(other, self.value)
        bound = mono_max(self.remainder_bound, other.remainder_bound)
        return TruncatedResult.of(self.value + other.value, bound, max(self.order_used, other.order_used))

    __radd__ = __add__

    def __neg__(self) -> TruncatedResult:
        return TruncatedResult(-self.value, self.remainder_bound, self.order_used)

    def __sub__(self, other) -> TruncatedResult:
        return self + (-_as_tr(other, self.value))

    def __rsub__(self, other) -> TruncatedResult:
        return _as_tr(other, self.value) - self

    def __mul__(self, other) -> TruncatedResult:
        other = _as_tr(other, self.value)
        b1, b2 = self.remainder_bound, other.remainder_bound
        l1, l2 = self.value.lead_monomial, other.value.lead_monomial
        cands = []
        if b2 is not None and l1 is not None:
            cands.append(l1 * b2)
        if b1 is not None and l2 is not None:
            cands.append(l2 * b1)
        if b1 is not None and b2 is not None:
            cands.append(b1 * b2)
        bound = mono_max(*cands)
        if (self.value.is_zero and b1 is None) or (other.value.is_zero and b2 is None):
            bound = None
        return TruncatedResult.of(self.value * other.value, bound, max(self.order_used, other.order_used))

    __rmul__ = __mul__

    def __str__(self) -> str:
        if self.remainder_bound is None:
            return str(self.value)
        return f"{self.value} + O({self.remainder_bound})"


def _as_tr(x, like: Series) -> TruncatedResult:
    if isinstance(x, TruncatedResult):
        return x
    return TruncatedResult(type(like).lift(x), None, 0)


def exact(value: Series) -> TruncatedResult:
    return TruncatedResult(value, None, 0)


# Neumann inversion ----------------------------------------------------------


def split_unit(f: Series):
    """``f = c * m * (1 + eps)`` with ``eps`` infinitesimal."""
    if f.is_zero:
        raise DivisionByZero("inverse of zero")
    m, c = f.terms[0]
    minv = m.inverse()
    eps = type(f)(tuple((mm * minv, coeffs.div(cc, c)) for mm, cc in f.terms[1:]))
    return c, m, eps


def _geometric(eps: Series, n_terms: int):
    """First ``n_terms`` terms of ``sum (-eps)^k`` plus the next monomial, if any."""
    cls = type(eps)
    delta = eps.lead_monomial
    n = max(2, n_terms)
    while True:
        cutoff = delta ** (n + 1)
        total = cls.const(1)
        power = cls.const(1)
        neg_eps = -eps
        for _ in range(n):
            power = (power * neg_eps).above(cutoff)
            if power.is_zero:
                break
            total = total + power
        # every term above delta^(n+1) is final
        if len(total.terms) > n_terms:
            return cls(total.terms[:n_terms]), total.terms[n_terms][0]
        n *= 2


def inverse_truncated(f: Series, order: int) -> TruncatedResult:
    """``1/f`` through the geometric series, cut after ``order`` terms."""
    if order < 1:
        raise ValueError("order must be >= 1")
    c, m, eps = split_unit(f)
    minv = m.inverse()
    cinv = coeffs.div(1, c)
    if eps.is_zero:
        return TruncatedResult(type(f).of_monomial(minv, cinv), None, order)
    head, nxt = _geometric(eps, order)
    return TruncatedResult(head.times_monomial(minv) * cinv, nxt * minv, order)


def divide_truncated(f: Series, g: Series, order: int) -> TruncatedResult:
    inv = inverse_truncated(g, order)
    res = exact(f) * inv
    if res.exact:
        return res
    # keep at most ``order`` terms, moving the cut up if needed
    if len(res.value.terms) > order:
        return TruncatedResult(type(f)(res.value.terms[:order]), res.value.terms[order][0], order)
    return TruncatedResult(res.value, res.remainder_bound, order)


def inverse_tr(x: TruncatedResult, order: int) -> TruncatedResult:
    """Inverse of an already truncated value, with the bound propagated."""
    v, b = x.value, x.remainder_bound
    if v.is_zero:
        raise DivisionByZero("inverse of a value that is zero to the available precision")
    inv = inverse_truncated(v, order)
    if b is None:
        return inv
    if not (b < v.lead_monomial):
        raise DivisionByZero("inverse of a value whose leading term is not determined")
    lead = v.lead_monomial
    extra = b * (lead * lead).inverse()
    return TruncatedResult.of(inv.value, mono_max(inv.remainder_bound, extra), order)


def widen_exp(base: TruncatedResult, b, one) -> TruncatedResult:
    """``exp(v + O(b)) = exp(v) * (1 + O(b))``; needs ``b`` infinitesimal."""

    if b is None:
        return base
    if not (b < one):
        raise PrecisionLoss("exponent known only up to a non-infinitesimal error")
    lead = base.value.lead_monomial
    return TruncatedResult.of(base.value, mono_max(base.remainder_bound, lead * b), base.order_used)


def widen_log(base: TruncatedResult, v: Series, b) -> TruncatedResult:
    """``log(v + O(b)) = log(v) + O(b / lead(v))``."""

    if b is None:
        return base
    lead = v.lead_monomial
    if not (b < lead):
        raise PrecisionLoss("argument of log known only up to its leading term")
    return TruncatedResult.of(base.value, mono_max(base.remainder_bound, b * lead.inverse()), base.order_used)


# restricted analytic functions ----------------------------------------------

Taylor = Callable[[object, int], object]


def analytic_extend(taylor: Taylor, r, eps: Series, order: int, *, search: int = 64) -> TruncatedResult:
    """``sum taylor(r, i) * eps^i`` over the first ``order`` nonzero summands.

    ``taylor(r, i)`` must return the i-th derivative at ``r`` divided by
    ``i!``.  The remainder bound is the leading monomial of ``eps`` raised
    to the index of the first omitted nonzero summand.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    cls = type(eps)
    if not eps.is_infinitesimal:
        raise NotInfinitesimal("analytic extension needs an infinitesimal argument")
    if eps.is_zero:
        return TruncatedResult(cls.const(taylor(r, 0)), None, order)
    # locate the summands first so the powers of eps can be pruned
    picked: list[tuple[int, object]] = []
    nxt_index = None
    i, limit = 0, search
    while i <= limit:
        a = taylor(r, i)
        if a != 0:
            if len(picked) == order:
                nxt_index = i
                break
            picked.append((i, a))
            limit = i + search
        i += 1
    if nxt_index is None:
        # polynomial: no further nonzero summands within the search window
        total = cls.zero()
        power, k = cls.const(1), 0
        for idx, a in picked:
            while k < idx:
                power, k = power * eps, k + 1
            total = total + power * a
        return TruncatedResult(total, None, order)
    bound = eps.lead_monomial ** nxt_index
    total = cls.zero()
    power, k = cls.const(1), 0
    for idx, a in picked:
        while k < idx:
            power, k = (power * eps).above(bound), k + 1
        total = total + power * a
    return TruncatedResult(total.above(bound), bound, order)


def refine(run: Callable[[int], TruncatedResult], order: int, max_order: Optional[int] = None) -> TruncatedResult:
    """Call ``run(work)`` with a doubling working order until ``order`` terms
    are known, the result is exact, or doubling stops adding terms.

    The working order is capped at ``max_order`` (default ``max(16, 2*order)``);
    a ``PrecisionLoss`` at the cap propagates.
    """
    cap = max_order if max_order is not None else max(16, 2 * order)
    work, seen = order, -1
    while True:
        try:
            res = run(work)
        except PrecisionLoss:
            if work >= cap:
                raise
            work = min(2 * work, cap)
            continue
        n = len(res.value.terms)
        if res.exact or n >= order or n == seen or work >= cap:
            return res
        seen = n
        work = min(2 * work, cap)

