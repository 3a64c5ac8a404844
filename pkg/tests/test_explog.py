from __future__ import annotations

import random
from fractions import Fraction

import pytest

import generators as gen
from oracles import exp_coeffs, log1p_coeffs
from surreal_workbench import config, explog, hahn
from surreal_workbench.conway import Monomial, Surreal, omega_pow
from surreal_workbench.errors import (
    CoefficientNotRepresentable,
    NotPositive,
    NotPurelyInfinite,
    UnsupportedExponent,
    ZeroArgument,
)
from surreal_workbench.explog import G, H, GhSupport, g, h

w = Surreal.omega()
c = Surreal.const


def mono(e) -> Monomial:
    return Monomial(Surreal.lift(e))


def within(value: Surreal, exact: Surreal, bound) -> bool:
    diff = exact - value
    return diff.is_zero or (bound is not None and hahn.preceq(diff, bound.as_surreal()))


def test_ind():
    assert explog.ind(w * w * 3 + w) == 2
    with pytest.raises(ZeroArgument):
        explog.ind(Surreal.zero())


def test_g_examples():
    assert g(c(3)) == 3
    assert g(c(Fraction(1, 2))) == Fraction(1, 2)
    assert g(w) == w
    assert g(omega_pow(-1)) == 0
    assert g(omega_pow(-w - 1)) == -w


def test_g_is_increasing_on_dyadics():
    vals = [Fraction(k, 8) for k in range(1, 40)]
    gs = [g(c(v)) for v in vals]
    assert all(a < b for a, b in zip(gs, gs[1:]))


def test_g_unsupported():
    for x in (w + Fraction(1, 2), c(Fraction(1, 3)), c(-1), w - 1):
        with pytest.raises(UnsupportedExponent):
            g(x)
    assert explog.classify(w + 1) is GhSupport.ORDINAL
    assert explog.classify(c(Fraction(3, 4))) is GhSupport.POSITIVE_DYADIC
    assert explog.classify(omega_pow(-2)) is GhSupport.NEGATED_ORDINAL_MONOMIAL


def test_h_examples_and_inverse():
    assert h(c(1)) == 1
    assert h(Surreal.zero()) == omega_pow(-1)
    assert h(-w) == omega_pow(-w - 1)
    rng = random.Random(1)
    for _ in range(50):
        x = gen.supported_exponent(rng)
        assert h(g(x)) == x
        assert g(h(g(x))) == g(x)


def test_G_H():
    assert G(w) == w
    assert H(w) == w
    assert H(c(1)) == omega_pow(omega_pow(-1))
    with pytest.raises(NotPurelyInfinite):
        G(w + 1)


def test_exp_examples():
    assert explog.exp(w).value == omega_pow(w)
    assert explog.exp(Surreal.zero()).value == 1
    res = explog.exp(omega_pow(-1), 3)
    assert res.value == 1 + omega_pow(-1) + omega_pow(-2) * Fraction(1, 2)
    assert res.remainder_bound == mono(-3)


def test_log_examples():
    assert explog.log(w).value == omega_pow(omega_pow(-1))
    assert explog.log(c(1)).value == 0
    res = explog.log(w + 1, 2)
    assert res.value == omega_pow(omega_pow(-1)) + omega_pow(-1) - omega_pow(-2) * Fraction(1, 2)
    assert res.remainder_bound == mono(-3)


def test_exp_log_errors():
    with pytest.raises(NotPositive):
        explog.log(-w)
    with pytest.raises(NotPositive):
        explog.log(Surreal.zero())
    with pytest.raises(CoefficientNotRepresentable):
        explog.exp(w + 1)
    with pytest.raises(CoefficientNotRepresentable):
        explog.log(w * 2)
    with pytest.raises(UnsupportedExponent):
        explog.exp(omega_pow(Fraction(1, 3)))


def test_taylor_coefficients_match_oracle():
    eps = omega_pow(-1)
    res = explog.exp(eps, 8)
    assert [cf for _, cf in res.value.terms] == exp_coeffs(8)
    res = explog.log(1 + eps, 8)
    assert [cf for _, cf in res.value.terms] == [x for x in log1p_coeffs(9) if x != 0][:8]


def test_numeric_mode_real_parts():
    with config.using(coeff_mode=config.NUMERIC, precision=30):
        v = explog.exp(w + 1).value
        assert abs(float(v.lead_coeff) - 2.718281828459045) < 1e-12
        v = explog.log(w * 2).value
        assert abs(float(v.real_part) - 0.6931471805599453) < 1e-12


def test_prod_monomials():
    assert explog.prod_monomials([mono(1), mono(1)]) == mono(2)
    assert explog.prod_monomials([]) == Monomial.ONE
    assert explog.prod_monomials([mono(w), mono(-w)]) == Monomial.ONE


def test_exp_additive_and_monomial_valued():
    rng = random.Random(4)
    for _ in range(40):
        a, b = gen.purely_infinite(rng), gen.purely_infinite(rng)
        ea, eb = explog.exp(a), explog.exp(b)
        assert ea.value.is_monomial
        assert explog.exp(a + b).value == ea.value * eb.value
        if a < b:
            assert ea.value < eb.value


def test_log_exp_roundtrip():
    rng = random.Random(5)
    for _ in range(100):
        f = gen.purely_infinite(rng) + gen.infinitesimal(rng)
        e = explog.exp(f, 6)
        back = explog.log_tr(e, 6)
        assert within(back.value, f, back.remainder_bound)


def test_exp_log_roundtrip():
    rng = random.Random(6)
    for _ in range(100):
        m = explog.exp(gen.purely_infinite(rng)).value.lead_monomial
        f = m.as_surreal() * (1 + gen.infinitesimal(rng))
        back = explog.exp_tr(explog.log(f, 6), 6)
        assert within(back.value, f, back.remainder_bound)


def test_exp_beats_powers():
    rng = random.Random(7)
    for _ in range(30):
        x = gen.purely_infinite(rng)
        if x < 0:
            x = -x
        e = explog.exp(x).value
        p = Surreal.const(1)
        for _n in range(5):
            p = p * x
            assert e > p


def test_ind_asymptotic():
    rng = random.Random(8)
    for _ in range(30):
        x = gen.surreal(rng)
        if x.is_zero:
            continue
        assert hahn.asymp(x, omega_pow(explog.ind(x)))
