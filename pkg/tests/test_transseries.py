from __future__ import annotations

import random
from fractions import Fraction

import pytest

import generators as gen
from surreal_workbench import config, hahn
from surreal_workbench import ordinals as ords
from surreal_workbench import transseries as ts
from surreal_workbench.conway import Surreal, omega_pow
from surreal_workbench.errors import DepthExceeded, NoPath, NotInfinite, UnsupportedExponent, ZeroArgument
from surreal_workbench.transseries import Level, TMonomial, TSeries, ladder

w = ladder(0)
logw = ladder(-1)
expw = ladder(1)
E = ts.exp_monomial


def test_ladder():
    assert str(w) == "w"
    assert str(logw) == "log(w)"
    assert str(expw) == "exp(w)"
    assert str(ladder(-3)) == "log_3(w)"
    assert str(ladder(2)) == "exp_2(w)"
    assert logw.lead_monomial.log() == ladder(-2)
    # e^(lambda_s) is lambda_(s+1)
    assert E(w) == expw and E(logw) == w
    with config.using(depth_limit=4):
        with pytest.raises(DepthExceeded):
            ladder(5)


def test_monomial_order():
    assert logw < w < w * w < E(w * 2) < expw * 0 + E(w * 3)
    assert E(w) > E(logw * 5) > w
    assert ladder(-3) < ladder(-2)


def test_lambda_ordinal():
    assert ts.lambda_ordinal(ords.ZERO) == Surreal.omega()
    assert ts.lambda_ordinal(ords.ONE) == omega_pow(omega_pow(-1))
    assert ts.lambda_ordinal(ords.OMEGA) == omega_pow(omega_pow(-Surreal.omega()))


def test_is_log_atomic():
    assert ts.is_log_atomic(expw)
    assert ts.is_log_atomic(ladder(-4))
    assert not ts.is_log_atomic(w * w)
    assert not ts.is_log_atomic(w + 1)
    with pytest.raises(NotInfinite):
        ts.is_log_atomic(TSeries.const(3))


def test_level_compare():
    assert ts.level_compare(w, w * w) is Level.SAME
    assert ts.level_compare(w, expw) is Level.LOWER
    assert ts.level_compare(expw, w) is Level.HIGHER
    assert ts.level_compare(w, w) is Level.SAME
    assert ts.level_compare(logw, w * 3 + 1) is Level.LOWER
    assert ts.level_compare(E(w * 2), expw) is Level.SAME


def test_paths():
    assert ts.paths(TSeries.const(5)) == []
    ps = ts.paths(expw)
    assert len(ps) == 1 and ps[0].terminal.index == 1
    f = E(w) * 1 + E(logw)
    assert ts.dominant_path(f).step(0) == E(w)
    with pytest.raises(NoPath):
        ts.dominant_path(TSeries.const(2))
    # 3*e^w descends to w
    p = ts.dominant_path(expw * 3)
    assert p.terminal.index == 0 and len(p) == 2


def test_paths_step_is_term_of_exponent():
    rng = random.Random(1)
    for _ in range(40):
        f = gen.tseries(rng)
        for p in ts.paths(f):
            for i in range(len(p) - 1):
                c, m = p.steps[i]
                nc, nm = p.steps[i + 1]
                if m.is_atom:
                    assert nm.atom == m.atom - 1
                else:
                    assert (nm, nc) in m.gamma.terms
            assert p.terminal.monomial == p.steps[-1][1]


def test_verify_T4():
    for k in (-2, 0, 3):
        assert ts.verify_T4(ts.dominant_path(ladder(k))) == 0
    assert ts.verify_T4(ts.dominant_path(expw * 3)) == 1
    rng = random.Random(2)
    for _ in range(40):
        for p in ts.paths(gen.tseries(rng)):
            assert 0 <= ts.verify_T4(p) <= len(p)


def test_nr_examples():
    for k in (-2, 0, 2):
        assert ts.nr(ladder(k)) == 0
    assert ts.nr(expw * 3) == 1
    assert ts.nested_trunc_leq(expw, E(w + logw))
    assert not ts.nested_trunc_leq(E(w + logw), expw)
    with pytest.raises(ZeroArgument):
        ts.nr(TSeries.zero())


def test_nr_decreases_on_truncation():
    rng = random.Random(3)
    for _ in range(40):
        f = gen.tseries(rng, depth=2, max_terms=3)
        if f.is_zero:
            continue
        for k in range(1, len(f.terms)):
            t = TSeries(f.terms[:k])
            assert ts.nested_trunc_leq(t, f)
            assert ts.nr(t) < ts.nr(f)


def test_nr_of_exponents():
    rng = random.Random(4)
    for _ in range(40):
        f = gen.tseries(rng, depth=2, max_terms=3)
        if f.is_zero:
            continue
        n = ts.nr(f)
        for i, (m, _) in enumerate(f.terms):
            if m.is_one or m.is_atom:
                continue
            assert ts.nr(m.gamma) <= n
            if i + 1 < len(f.terms):
                assert ts.nr(m.gamma) < n


def test_membership():
    assert ts.in_T(E(w) + logw)
    assert ts.in_TEL(E(w) + logw)
    assert ts.branch_bounds(E(w) + logw)[1] == 1
    assert ts.branch_bounds(TSeries.const(1)) == (0, 0)


def test_conway_conversion_examples():
    assert ts.from_conway(Surreal.omega()) == w
    assert ts.to_conway(expw) == omega_pow(Surreal.omega())
    assert ts.to_conway(logw) == omega_pow(omega_pow(-1))
    with pytest.raises(UnsupportedExponent):
        ts.to_conway(E(ts.monomial_rpow(w.lead_monomial, Fraction(1, 3)).as_series()))


def test_conway_conversion_homomorphism():
    rng = random.Random(5)
    done = 0
    for _ in range(80):
        a, b = gen.tseries(rng, depth=2), gen.tseries(rng, depth=2)
        try:
            ca, cb = ts.to_conway(a), ts.to_conway(b)
        except UnsupportedExponent:
            continue
        done += 1
        assert ts.from_conway(ca) == a
        assert ts.to_conway(a + b) == ca + cb
        assert ts.to_conway(a * b) == ca * cb
        assert (a < b) == (ca < cb)
    assert done >= 20


def test_exp_log_transseries():
    assert ts.exp_t(w).value == expw
    assert ts.log_t(w).value == logw
    assert ts.log_t(expw).value == w
    res = ts.log_t(w + 1, 2)
    assert res.value == logw + w ** -1 - (w ** -2) * Fraction(1, 2)
    rng = random.Random(6)
    for _ in range(40):
        g = gen.purely_infinite_t(rng)
        e = ts.exp_t(g)
        assert e.value.is_monomial
        assert ts.log_t(e.value).value == g


def test_monomial_rpow():
    m = (w * w).lead_monomial
    assert ts.monomial_rpow(m, Fraction(3, 2)) == (w * w * w).lead_monomial
    assert ts.monomial_rpow(w.lead_monomial, Fraction(1, 2)).log() == logw * Fraction(1, 2)


def test_formats_and_json():
    assert ts.format_text(expw * 3 + w) == "3*exp(w) + w"
    assert str(E(w * 2)) == "E^(2*w)"
    rng = random.Random(7)
    for _ in range(40):
        f = gen.tseries(rng)
        assert ts.from_json(ts.to_json(f)) == f


def test_ring_axioms():
    rng = random.Random(8)
    for _ in range(30):
        a, b, c = (gen.tseries(rng, depth=2, max_terms=3) for _ in range(3))
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert hahn.asymp(a * b, TSeries.of_monomial(a.lead_monomial * b.lead_monomial)) or a.is_zero or b.is_zero


def test_depth_checked():
    with config.using(depth_limit=3):
        x = w
        with pytest.raises(DepthExceeded):
            for _ in range(6):
                x = E(x * 2)
    assert isinstance(TMonomial.ONE, TMonomial)
