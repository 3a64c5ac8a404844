"""Evaluate parsed expressions in exponential normal form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from . import coeffs, config, conway
from . import parser as P
from . import signs
from . import transseries as ts
from .derivation import compose, derive_tr
from .errors import DepthExceeded, NotDyadic, PrecisionLoss, UnsupportedError, UnsupportedExponent
from .hahn import TruncatedResult, exact, inverse_tr, refine
from .transseries import TMonomial, TSeries


def _const(v) -> TruncatedResult:
    return exact(TSeries.const(coeffs.coerce(v)))


def _power(a: TruncatedResult, n: int) -> TruncatedResult:
    result = _const(1)
    for _ in range(n):
        result = result * a
    return result


class Evaluator:
    def __init__(self, order: Optional[int] = None):
        self.order = order or config.current().order

    def __call__(self, e: P.Expr) -> TruncatedResult:
        return self.eval(e)

    def eval(self, e: P.Expr) -> TruncatedResult:
        method = getattr(self, "_" + type(e).__name__)
        return method(e)

    def _Number(self, e: P.Number) -> TruncatedResult:
        return _const(e.value)

    def _Omega(self, e: P.Omega) -> TruncatedResult:
        return exact(ts.ladder(0))

    def _EConst(self, e: P.EConst) -> TruncatedResult:
        return ts.exp_tr(_const(1), self.order)

    def _Atom(self, e: P.Atom) -> TruncatedResult:
        return exact(ts.ladder(e.index))

    def _Add(self, e: P.Add) -> TruncatedResult:
        return self.eval(e.left) + self.eval(e.right)

    def _Neg(self, e: P.Neg) -> TruncatedResult:
        return -self.eval(e.arg)

    def _Mul(self, e: P.Mul) -> TruncatedResult:
        return self.eval(e.left) * self.eval(e.right)

    def _Div(self, e: P.Div) -> TruncatedResult:
        return self.eval(e.left) * inverse_tr(self.eval(e.right), self.order)

    def _Pow(self, e: P.Pow) -> TruncatedResult:
        if isinstance(e.base, P.EConst):
            return ts.exp_tr(self.eval(e.exponent), self.order)
        r = P.rational_literal(e.exponent)
        base = self.eval(e.base)
        if r is not None and r.denominator == 1:
            # integer powers by repeated multiplication stay exact
            n = int(r)
            if n < 0:
                base = inverse_tr(base, self.order)
            return _power(base, abs(n))
        if r is not None and base.exact and base.value.is_monomial:
            return exact(ts.monomial_rpow(base.value.lead_monomial, r).as_series())
        return ts.exp_tr(self.eval(e.exponent) * ts.log_tr(base, self.order), self.order)

    def _Exp(self, e: P.Exp) -> TruncatedResult:
        return ts.exp_tr(self.eval(e.arg), self.order)

    def _Log(self, e: P.Log) -> TruncatedResult:
        return ts.log_tr(self.eval(e.arg), self.order)

    @staticmethod
    def _check_iterations(k: int) -> None:
        limit = config.current().depth_limit
        if k > limit:
            raise DepthExceeded(f"{k} iterations exceed depth limit {limit}")

    def _ExpIter(self, e: P.ExpIter) -> TruncatedResult:
        self._check_iterations(e.k)
        v = self.eval(e.arg)
        for _ in range(e.k):
            v = ts.exp_tr(v, self.order)
        return v

    def _LogIter(self, e: P.LogIter) -> TruncatedResult:
        self._check_iterations(e.k)
        v = self.eval(e.arg)
        for _ in range(e.k):
            v = ts.log_tr(v, self.order)
        return v

    def _Derive(self, e: P.Derive) -> TruncatedResult:
        return derive_tr(self.eval(e.arg))

    def _Compose(self, e: P.Compose) -> TruncatedResult:
        return compose(self.eval(e.f), self.eval(e.x), self.order)

    def _dyadic(self, e: P.Expr) -> Fraction:
        v = self.eval(e)
        if not v.exact or not v.value.is_const:
            raise UnsupportedError("simplest() only accepts real constants")
        q = coeffs.to_fraction(v.value.real_part)
        if q.denominator & (q.denominator - 1):
            raise NotDyadic(f"{coeffs.fmt(q)} is not a dyadic rational")
        return q

    def _Simplest(self, e: P.Simplest) -> TruncatedResult:
        left = [self._dyadic(x) for x in e.left]
        right = [self._dyadic(x) for x in e.right]
        return _const(signs.simplest_in_gap(left, right).value)

    def _OmegaPow(self, e: P.OmegaPow) -> TruncatedResult:
        x = self.eval(e.arg)
        if not x.exact:
            raise PrecisionLoss("the omega-map needs an exactly known argument")
        return exact(ts.from_conway(conway.omega_pow(ts.to_conway(x.value))))


def cut(res: TruncatedResult, order: int) -> TruncatedResult:
    if res.exact or len(res.value.terms) <= order:
        return res
    return TruncatedResult(TSeries(res.value.terms[:order]), res.value.terms[order][0], order)


def evaluate(text_or_expr, order: Optional[int] = None) -> TruncatedResult:
    e = P.parse(text_or_expr) if isinstance(text_or_expr, str) else text_or_expr
    order = order or config.current().order
    return cut(Evaluator(order)(e), order)


def evaluate_reliable(e: P.Expr, order: int, max_order: Optional[int] = None) -> TruncatedResult:
    """Evaluate, doubling the working order until ``order`` terms are known."""
    return cut(refine(lambda work: Evaluator(work)(e), order, max_order), order)


# rendering --------------------------------------------------------------------


@dataclass(frozen=True)
class Rendered:
    kind: str  # "conway" or "transseries"
    text: str
    bound: Optional[str]
    obj: Any
    bound_obj: Any


def render(res: TruncatedResult) -> Rendered:
    """Conway normal form when every exponent converts, otherwise the
    exponential normal form."""
    try:
        value = ts.to_conway(res.value)
        bound = None
        if res.remainder_bound is not None:
            bound = ts.to_conway(res.remainder_bound.as_series())
        return Rendered(
            "conway",
            conway.format_text(value),
            None if bound is None else conway.format_text(bound),
            conway.to_obj(value),
            None if bound is None else conway.to_obj(bound),
        )
    except (UnsupportedExponent, DepthExceeded):
        pass
    b = res.remainder_bound
    return Rendered(
        "transseries",
        ts.format_text(res.value),
        None if b is None else ts.format_monomial(b),
        ts.to_obj(res.value),
        None if b is None else ts.to_obj(b.as_series()),
    )


def format_omega_form(f: conway.Surreal) -> str:
    """Conway normal form written with ``W(...)`` so that it re-parses exactly."""
    if f.is_zero:
        return "0"
    parts = []
    for m, c in f.terms:
        cs = coeffs.fmt(c)
        if m.is_one:
            parts.append(f"({cs})")
        else:
            parts.append(f"W({format_omega_form(m.exponent)})*({cs})")
    return " + ".join(parts)


# variable rendering ---------------------------------------------------------------


def _power_text(exponent: TSeries) -> str:
    if exponent == 1:
        return "x"
    return f"x^({render_in_x(exponent)})"


def _split_power(gamma: TSeries) -> tuple[TSeries, TSeries]:
    """``gamma = L * log(w) + R`` where ``L`` collects the pure powers of ``w``."""
    log_w = TMonomial.of_atom(-1)
    inv = log_w.inverse()
    pw, rest = [], []
    for m, c in gamma.terms:
        q = m * inv
        if q.is_one or q == TMonomial.of_atom(0) or (
            not q.is_atom and q.gamma.is_term and q.gamma.lead_monomial == log_w
        ):
            pw.append((q, c))
        else:
            rest.append((m, c))
    return TSeries.from_terms(pw), TSeries.from_terms(rest)


def monomial_in_x(m: TMonomial) -> str:
    if m.is_one:
        return "1"
    if m.is_atom:
        return ts.format_atom(m.atom).replace("w", "x")
    L, R = _split_power(m.gamma)
    parts = []
    if not L.is_zero:
        parts.append(_power_text(L))
    rest = []
    for mm, c in R.terms:
        if mm.is_atom:
            # e^(c * lambda_s) = lambda_(s+1)^c
            base = monomial_in_x(TMonomial.of_atom(mm.atom + 1))
            parts.append(base if c == 1 else f"{base}^({coeffs.fmt(c)})")
        else:
            rest.append((mm, c))
    if rest:
        parts.append(f"exp({render_in_x(TSeries(tuple(rest)))})")
    return "*".join(parts)


def render_in_x(f: TSeries, bound: Optional[TMonomial] = None) -> str:
    """Asymptotic-expansion style: ``a*x^(x) - b*x^(x - 1) + O(...)``."""
    out = ""
    for m, c in f.terms:
        neg = c < 0
        a = -c if neg else c
        if m.is_one:
            body = coeffs.fmt(a)
        elif a == 1:
            body = monomial_in_x(m)
        else:
            body = f"{coeffs.fmt(a)}*{monomial_in_x(m)}"
        if not out:
            out = f"-{body}" if neg else body
        else:
            out += f" - {body}" if neg else f" + {body}"
    if bound is not None:
        tail = f"O({monomial_in_x(bound)})"
        out = f"{out} + {tail}" if out else tail
    return out or "0"


def expand(text_or_expr, n_terms: int) -> tuple[TruncatedResult, str]:
    """First ``n_terms`` terms of the normal form and their rendering in ``x``."""
    e = P.parse(text_or_expr) if isinstance(text_or_expr, str) else text_or_expr
    res = evaluate_reliable(e, n_terms)
    return res, render_in_x(res.value, res.remainder_bound)
