"""Cylinder-function evaluator tests.

The four classical identities (half-integer closed form, three-term K
recurrence, Hankel Wronskian, conjugation symmetry) are frozen here as
numerical oracles; mpmath's own Bessel implementations appear only in
this file, as an extra independent referee for the in-repo routes.
"""

from fractions import Fraction

import mpmath as mp
import pytest

from fsusy.bessel import (
    ComplexValue,
    PrecisionError,
    bessel_eval,
    doubling_trapezoid,
)


def _val(kind, order, arg, prec="1e-30"):
    return bessel_eval(kind, order, arg, precision=mp.mpf(prec)).to_mpc()


# -- frozen closed-form oracles --


def test_k_half_integer_closed_form():
    got = _val("K", Fraction(1, 2), 1)
    with mp.workdps(50):
        want = mp.sqrt(mp.pi / 2) * mp.exp(-1)
        assert abs(got - want) < mp.mpf("1e-10")
        # independently frozen decimal digits of sqrt(pi/2)/e
        assert abs(got - mp.mpf("0.46106850444789455844")) < mp.mpf("1e-10")


def test_k_recurrence_three_term():
    nu, x = mp.mpf("0.4"), mp.mpf("1.5")
    with mp.workdps(50):
        resid = (
            _val("K", nu + 1, x)
            - _val("K", nu - 1, x)
            - (2 * nu / x) * _val("K", nu, x)
        )
        assert abs(resid) < mp.mpf("1e-9")


def test_hankel_wronskian():
    nu, x = mp.mpf("0.3"), mp.mpf("2")

    def deriv(kind):
        return (_val(kind, nu - 1, x) - _val(kind, nu + 1, x)) / 2

    with mp.workdps(50):
        wron = _val("H1", nu, x) * deriv("H2") - deriv("H1") * _val("H2", nu, x)
        assert abs(wron - (-4j / (mp.pi * x))) < mp.mpf("1e-8")


def test_hankel_conjugation_symmetry():
    for nu, x in [(mp.mpf("0.3"), mp.mpf("2")), (mp.mpf("-1.2"), mp.mpf("0.5"))]:
        h1 = _val("H1", nu, x)
        h2 = _val("H2", nu, x)
        assert abs(h1 - mp.conj(h2)) < mp.mpf("1e-10")


# -- cross-checks against the external referee (tests only) --

REFEREE = {"K": mp.besselk, "H1": mp.hankel1, "H2": mp.hankel2}

GRID = [
    ("K", "0", "1"),
    ("K", "0.3", "0.25"),
    ("K", "-1.3", "4"),
    ("K", "1", "2"),
    ("K", "1.99", "0.25"),
    ("H1", "0", "1"),
    ("H1", "0.3", "2"),
    ("H1", "-1.2", "0.5"),
    ("H1", "1", "1.5"),
    ("H2", "0.3", "2"),
    ("H2", "-1", "3"),
    ("H2", "1.9", "4"),
]


@pytest.mark.parametrize("kind,order,arg", GRID)
def test_against_mpmath(kind, order, arg):
    # decimal strings go through uninterpreted; both sides parse them at
    # their own full working precision
    got = bessel_eval(kind, order, arg, precision=mp.mpf("1e-30"))
    with mp.workdps(60):
        want = REFEREE[kind](mp.mpf(order), mp.mpf(arg))
        err = abs(got.to_mpc() - want)
        assert err < mp.mpf("1e-30") * abs(want)
        # the reported bound must dominate the true error
        assert err <= got.err_estimate


def test_integer_order_digamma_branch():
    # exactly-integer orders take the log/digamma series, not reflection
    got = _val("K", 1, 2)
    with mp.workdps(50):
        assert abs(got - mp.besselk(1, 2)) < mp.mpf("1e-30")
    got = _val("H1", -1, 3)
    with mp.workdps(50):
        assert abs(got - mp.hankel1(-1, 3)) < mp.mpf("1e-28") * abs(got)


# -- plumbing and contracts --


def test_complex_value_plumbing():
    v = bessel_eval("H1", "0.3", "2")
    assert isinstance(v, ComplexValue)
    with mp.workprec(400):
        assert v.to_mpc() == mp.mpc(v.re, v.im)
    assert abs(complex(v) - complex(v.to_mpc())) < 1e-12
    assert v.rel_err() < mp.mpf("1e-25")
    assert "+-" in v.pretty()


def test_determinism():
    a = bessel_eval("K", mp.mpf("0.3"), mp.mpf("1.5"))
    b = bessel_eval("K", mp.mpf("0.3"), mp.mpf("1.5"))
    assert (a.re, a.im, a.err_estimate) == (b.re, b.im, b.err_estimate)


def test_input_guards():
    with pytest.raises(ValueError):
        bessel_eval("J", 0.3, 1.0)
    with pytest.raises(ValueError):
        bessel_eval("K", 2.0, 1.0)
    with pytest.raises(ValueError):
        bessel_eval("K", 0.3, 0)
    with pytest.raises(ValueError):
        bessel_eval("H1", -2.5, 1.0)


def test_precision_error_carries_achieved_bound(monkeypatch):
    import fsusy.bessel as bessel

    # starve the evaluator of working bits so the target is unreachable
    monkeypatch.setattr(bessel, "_working_bits", lambda precision, arg: 64)
    with pytest.raises(PrecisionError) as exc:
        bessel_eval("K", mp.mpf("0.3"), mp.mpf("1.0"), precision=mp.mpf("1e-40"))
    assert exc.value.achieved > mp.mpf("1e-40")


def test_trapezoid_engine_on_gaussian():
    with mp.workprec(160):
        val, change = doubling_trapezoid(
            lambda t: mp.exp(-t * t), mp.mpf("-10.5"), mp.mpf("10.5"), mp.mpf(2) ** -140
        )
        assert abs(val - mp.sqrt(mp.pi)) < mp.mpf(2) ** -120
        assert change < mp.mpf(2) ** -120
