"""Gonshor's exponential and logarithm on the supported fragment.

``exp`` sends ``w^x`` to ``w^(w^g(x))`` and ``log`` sends ``w^(w^x)`` to
``w^h(x)``.  Both ``g`` and ``h`` are only computed where their values are
known in closed form: positive dyadics, ordinals below epsilon_0, and the
monomials ``w^(-b-1)`` that ``h`` produces from non-positive ordinals.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from . import coeffs
from . import ordinals as ords
from . import signs
from .conway import Monomial, Surreal, omega_pow
from .errors import NotPositive, NotPurelyInfinite, UnsupportedExponent, ZeroArgument
from .hahn import TruncatedResult, analytic_extend, widen_exp, widen_log


class GhSupport(enum.Enum):
    POSITIVE_DYADIC = "positive-dyadic"
    ORDINAL = "ordinal"
    NEGATED_ORDINAL_MONOMIAL = "negated-ordinal-monomial"


def ind(x: Surreal) -> Surreal:
    """The exponent of the leading monomial."""
    if x.is_zero:
        raise ZeroArgument("ind(0) is undefined")
    return x.terms[0][0].exponent


def _dyadic_value(x: Surreal) -> Optional[Fraction]:
    if not x.is_const:
        return None
    v = coeffs.to_fraction(x.real_part)
    den = v.denominator
    return v if den & (den - 1) == 0 else None


def _negated_ordinal(x: Surreal) -> Optional[ords.Ordinal]:
    return ords.from_surreal(-x)


def classify(x: Surreal) -> Optional[GhSupport]:
    """Which closed-form case of ``g`` applies to ``x``, if any."""
    if x.sign() <= 0:
        return None
    v = _dyadic_value(x)
    if v is not None:
        return GhSupport.POSITIVE_DYADIC
    if ords.from_surreal(x) is not None:
        return GhSupport.ORDINAL
    if x.is_monomial:
        beta = _negated_ordinal(x.ind)
        if beta is not None and beta.finite_part >= 1:
            return GhSupport.NEGATED_ORDINAL_MONOMIAL
    return None


@lru_cache(maxsize=None)
def _g_dyadic(code: str) -> Fraction:
    # g(x) = {ind(x), g(x')} | {g(x'')} over the canonical options of x,
    # keeping only positive left options (g is defined on positive numbers).
    x = signs.SignExpansion.parse(code)
    left_opts, right_opts = signs.options(x)
    left = [Fraction(0)] + [_g_dyadic(str(p)) for p in left_opts if p.value > 0]
    right = [_g_dyadic(str(p)) for p in right_opts]
    return signs.simplest_in_gap(left, right).value


def g(x: Surreal) -> Surreal:
    kind = classify(x)
    if kind is GhSupport.POSITIVE_DYADIC:
        v = _dyadic_value(x)
        return Surreal.const(_g_dyadic(str(signs.from_dyadic(v))))
    if kind is GhSupport.ORDINAL:
        return x
    if kind is GhSupport.NEGATED_ORDINAL_MONOMIAL:
        return x.ind + 1
    raise UnsupportedExponent(f"g is not available at {x}")


def h(x: Surreal) -> Surreal:
    """Inverse of ``g``: identity on positive dyadics and ordinals,
    ``h(0) = w^(-1)`` and ``h(-b) = w^(-b-1)``."""
    if x.is_zero:
        return omega_pow(Surreal.const(-1))
    if x.sign() > 0:
        if _dyadic_value(x) is not None or ords.from_surreal(x) is not None:
            return x
        raise UnsupportedExponent(f"h is not available at {x}")
    beta = _negated_ordinal(x)
    if beta is None:
        raise UnsupportedExponent(f"h is not available at {x}")
    return omega_pow(-ords.embed(ords.hess_add(beta, ords.ONE)))


def G(gamma: Surreal) -> Surreal:
    if not gamma.is_purely_infinite:
        raise NotPurelyInfinite(f"G needs a purely infinite argument, got {gamma}")
    return Surreal.from_terms((Monomial(g(m.exponent)), c) for m, c in gamma.terms)


def H(x: Surreal) -> Surreal:
    return Surreal.from_terms((Monomial(h(m.exponent)), c) for m, c in x.terms)


def exp_taylor(r, i: int):
    return coeffs.mul(coeffs.exp_real(r), coeffs.factorial_inv(i))


def log_taylor(r, i: int):
    if i == 0:
        return coeffs.log_real(r)
    num = coeffs.coerce(1 if i % 2 else -1)
    return coeffs.div(num, coeffs.mul(i, coeffs.coerce(r) ** i))


def exp(f: Surreal, order: int = 8) -> TruncatedResult:
    """``exp(f) = exp(f_up) * exp(f_real) * exp(f_down)``."""
    up, real, down = f.decompose()
    mono = Monomial(G(up))
    series = analytic_extend(exp_taylor, real, down, order)
    bound = None if series.remainder_bound is None else series.remainder_bound * mono
    return TruncatedResult(series.value.times_monomial(mono), bound, order)


def log(f: Surreal, order: int = 8) -> TruncatedResult:
    """``log(r * m * (1 + eps)) = log(m) + log(r + r eps)``."""
    if f.sign() <= 0:
        raise NotPositive(f"log needs a positive argument, got {f}")
    m, r = f.terms[0]
    eps = f.times_monomial(m.inverse()) - Surreal.const(r)
    tail = analytic_extend(log_taylor, r, eps, order)
    return TruncatedResult(H(m.exponent) + tail.value, tail.remainder_bound, order)


def exp_tr(x: TruncatedResult, order: int = 8) -> TruncatedResult:
    """``exp`` of a truncated value, with the bound carried through."""
    return widen_exp(exp(x.value, order), x.remainder_bound, Monomial.ONE)


def log_tr(x: TruncatedResult, order: int = 8) -> TruncatedResult:
    return widen_log(log(x.value, order), x.value, x.remainder_bound)


def prod_monomials(ms: Iterable[Monomial]) -> Monomial:
    total = Surreal.zero()
    for m in ms:
        total = total + m.exponent
    return Monomial(total)


def is_supported(x: Surreal) -> bool:
    return classify(x) is not None
