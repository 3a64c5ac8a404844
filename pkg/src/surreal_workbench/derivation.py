"""The path-derivative derivation and composition on exponential normal forms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from . import config
from .errors import DepthExceeded, NotInfinite, PrecisionLoss
from .hahn import TruncatedResult, exact, mono_max, refine
from .transseries import (
    LadderAtom,
    Path,
    TMonomial,
    TSeries,
    exp_tr,
    log_tr,
    paths,
)

Value = Union[TSeries, TruncatedResult]


def _check(index: int) -> None:
    limit = config.current().depth_limit
    if abs(index) > limit:
        raise DepthExceeded(f"ladder subscript {index} exceeds depth limit {limit}")


def D_simplest(atom: LadderAtom) -> TSeries:
    """``D(lambda_-n) = 1 / prod_(m<n) log_m(w)`` and
    ``D(lambda_n) = prod_(m=1..n) exp_m(w)``."""
    s = atom.index
    _check(s)
    if s <= 0:
        gamma = TSeries.from_terms((TMonomial.of_atom(-k), -1) for k in range(1, -s + 1))
    else:
        gamma = TSeries.from_terms((TMonomial.of_atom(k), 1) for k in range(0, s))
    return TMonomial.exp_of(gamma).as_series()


@dataclass(frozen=True)
class Prederivation:
    """A rule on ladder atoms; the default is the simplest one."""

    rule: Callable[[LadderAtom], TSeries] = field(default=D_simplest)

    def __call__(self, atom: LadderAtom) -> TSeries:
        return self.rule(atom)


SIMPLEST = Prederivation()


def path_derivative(p: Path, D: Prederivation = SIMPLEST, cut: Optional[int] = None) -> TSeries:
    """``(prod_(m<n) P_m) * D(P_n)`` with ``n = cut`` (default: the terminal step).

    Cuts past the last stored step walk further down the ladder, where
    ``P_(k+j) = lambda_(s-j)``.
    """
    last = len(p.steps) - 1
    n = last if cut is None else cut
    if n < last:
        raise ValueError("the cut must be at or after the terminal step")
    prod = TSeries.const(1)
    for i in range(last):
        prod = prod * p.step(i)
    s = p.terminal.index
    for j in range(n - last):
        prod = prod * TMonomial.of_atom(s - j).as_series()
    return prod * D(LadderAtom(s - (n - last)))


def derive(f: TSeries, D: Prederivation = SIMPLEST) -> TSeries:
    """Sum of the path derivatives over all paths of ``f``."""
    total = TSeries.zero()
    for p in paths(f):
        total = total + path_derivative(p, D)
    return total


def derive_tr(x: Value, D: Prederivation = SIMPLEST) -> TruncatedResult:
    """Derivative of a truncated value; an ``O(B)`` error becomes ``O(lead(dB))``."""
    if isinstance(x, TSeries):
        return exact(derive(x, D))
    value = derive(x.value, D)
    b = x.remainder_bound
    if b is None:
        return TruncatedResult(value, None, x.order_used)
    if b.is_one:
        bound = TMonomial.ONE
    else:
        bound = derive(b.as_series(), D).lead_monomial
    return TruncatedResult.of(value, bound, x.order_used)


# composition ----------------------------------------------------------------


class _Substitution:
    """Memoized ``lambda_s -> lambda_s o x`` and monomial substitution."""

    def __init__(self, x: TruncatedResult, order: int):
        self.x = x
        self.order = order
        self.atoms: dict[int, TruncatedResult] = {0: x}
        self.monos: dict[TMonomial, TruncatedResult] = {}

    def atom(self, s: int) -> TruncatedResult:
        if s in self.atoms:
            return self.atoms[s]
        _check(s)
        if s < 0:
            val = log_tr(self.atom(s + 1), self.order)
        else:
            val = exp_tr(self.atom(s - 1), self.order)
        self.atoms[s] = val
        return val

    def mono(self, m: TMonomial) -> TruncatedResult:
        if m.is_one:
            return exact(TSeries.const(1))
        if m in self.monos:
            return self.monos[m]
        val = self.atom(m.atom) if m.is_atom else exp_tr(self.series(m.gamma), self.order)
        self.monos[m] = val
        return val

    def series(self, f: TSeries) -> TruncatedResult:
        total = exact(TSeries.zero())
        for m, c in f.terms:
            total = total + self.mono(m) * c
        return total


def _as_tr(v: Value) -> TruncatedResult:
    return v if isinstance(v, TruncatedResult) else exact(v)


def _compose_once(f: TruncatedResult, x: TruncatedResult, order: int) -> TruncatedResult:
    sub = _Substitution(x, order)
    res = sub.series(f.value)
    if f.remainder_bound is not None:
        b = sub.mono(f.remainder_bound)
        lead = b.value.lead_monomial if not b.value.is_zero else b.remainder_bound
        res = TruncatedResult.of(res.value, mono_max(res.remainder_bound, lead), order)
    return res


def _cut(res: TruncatedResult, order: int) -> TruncatedResult:
    if len(res.value.terms) > order:
        return TruncatedResult(TSeries(res.value.terms[:order]), res.value.terms[order][0], order)
    return TruncatedResult(res.value, res.remainder_bound, order)


def compose(f: Value, x: Value, order: int = 8, *, max_order: Optional[int] = None) -> TruncatedResult:
    """``f o x``: substitute ``x`` for ``w`` through the exponential normal form.

    The working order is doubled until ``order`` terms are reliable (see
    ``hahn.refine``); the answer is then cut to ``order`` terms.
    """
    f, x = _as_tr(f), _as_tr(x)
    xv = x.value
    if not (xv.is_infinite and xv.sign() > 0):
        raise NotInfinite(f"composition needs a positive infinite argument, got {xv}")
    if x.remainder_bound is not None and not (x.remainder_bound < xv.lead_monomial):
        raise PrecisionLoss("the argument's leading term is not determined")
    return _cut(refine(lambda work: _compose_once(f, x, work), order, max_order), order)


def agree(a: TruncatedResult, b: TruncatedResult, order: int) -> bool:
    """True when ``a`` and ``b`` coincide on every term both determine."""
    bound = mono_max(a.remainder_bound, b.remainder_bound)
    da = a.value.above(bound)
    db = b.value.above(bound)
    n = min(order, len(da.terms), len(db.terms))
    if bound is None:
        return da == db
    return da.terms[:n] == db.terms[:n] and (len(da.terms) >= n and len(db.terms) >= n)


def check_chain_rule(f: TSeries, g: TSeries, order: int = 8) -> bool:
    """``d(f o g) == (df o g) * dg`` on the first ``order`` terms."""
    lhs = derive_tr(compose(f, g, order))
    rhs = compose(derive(f), g, order) * exact(derive(g))
    return agree(_cut(lhs, order), _cut(rhs, order), order)
