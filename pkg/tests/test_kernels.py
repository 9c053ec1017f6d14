"""Kernel layer: quadrant geometry, the two evaluation routes, the
dressing polynomials, the Grassmann assembly, and the generator ladder.

Oracle values are frozen decimal strings computed once from the closed
cylinder forms; mpmath's own Bessel functions appear only as referee."""

from fractions import Fraction

import pytest
from mpmath import mp

from fsusy import kernels
from fsusy.bessel import PrecisionError
from fsusy.duality import DualityContext
from fsusy.kernels import (
    KernelParams,
    QuadrantPoint,
    d_ladder_suite,
    kernel_eval,
    kernel_eval_detailed,
    kernel_verify,
    omega_poly,
    q_kernel,
    quadrant_decompose,
)


def _mpc(value):
    with mp.workprec(400):
        return value.to_mpc()


# -- quadrant geometry --


@pytest.mark.parametrize("quadrant", [1, 2, 3, 4])
def test_polar_round_trip(quadrant):
    pt = QuadrantPoint.from_polar(quadrant, "1.7", "-0.45", lambda_val="0.2")
    assert pt.round_trip_error() < mp.mpf("1e-14") * pt.rho
    back = quadrant_decompose(pt.z_plus, pt.z_minus, pt.lambda_val)
    assert back.quadrant == quadrant
    assert abs(back.rho - pt.rho) < mp.mpf("1e-20")
    assert abs(back.beta - pt.beta) < mp.mpf("1e-20")


@pytest.mark.parametrize(
    "zp, zm, quadrant",
    [("2", "0.5", 1), ("2", "-0.5", 2), ("-2", "-0.5", 3), ("-2", "0.5", 4)],
)
def test_sign_pattern_fixes_quadrant(zp, zm, quadrant):
    assert quadrant_decompose(zp, zm).quadrant == quadrant


def test_light_cone_rejected():
    with pytest.raises(ValueError, match="light cone"):
        quadrant_decompose(0, "1")
    with pytest.raises(ValueError, match="light cone"):
        quadrant_decompose("1", 0)


def test_complex_coordinates_rejected():
    with pytest.raises(ValueError, match="real"):
        quadrant_decompose(mp.mpc(1, 1), "1")


def test_swapped_point():
    pt = QuadrantPoint.from_polar(2, "1.3", "0.7")
    sw = pt.swapped()
    assert sw.quadrant == 4
    assert sw.beta + pt.beta == 0
    assert sw.z_plus == pt.z_minus and sw.z_minus == pt.z_plus
    assert pt.swapped().swapped() == pt


def test_bad_polar_input():
    with pytest.raises(ValueError, match="quadrant"):
        QuadrantPoint.from_polar(5, "1", "0")
    with pytest.raises(ValueError, match="rho"):
        QuadrantPoint.from_polar(1, "-1", "0")


# -- parameter validation --


def test_params_validation():
    KernelParams(p=3, s=1, nu="0.1", mu=0, r="2", precision="1e-12")
    with pytest.raises(ValueError, match="odd prime"):
        KernelParams(p=4, s=0, nu=0, mu=0, r=1)
    with pytest.raises(ValueError, match="integer"):
        KernelParams(p=3, s=0.5, nu=0, mu=0, r=1)
    with pytest.raises(ValueError, match="positive"):
        KernelParams(p=3, s=0, nu=0, mu=0, r=-1)
    with pytest.raises(ValueError, match="precision"):
        KernelParams(p=3, s=0, nu=0, mu=0, r=1, precision="2")
    with pytest.raises(ValueError, match="strip"):
        KernelParams(p=3, s=0, nu="1.2", mu=0, r=1)
    with pytest.raises(ValueError, match="strip"):
        KernelParams(p=3, s=-3, nu=0, mu=0, r=1)
    with pytest.raises(ValueError, match="real"):
        KernelParams(p=3, s=0, nu=mp.mpc(0, 1), mu=0, r=1)


def test_strip_exponent():
    params = KernelParams(p=5, s=2, nu="1/4", mu="1/8", r=1)
    with mp.workprec(80):
        want = mp.mpf(1) / 4 - mp.mpf(1) / 8 + mp.mpf(2) / 5
        assert abs(params.strip_exponent() - want) < mp.mpf("1e-20")


def test_mode_validation():
    params = KernelParams(p=3, s=0, nu=0, mu=0, r=1)
    pt = QuadrantPoint.from_polar(1, "1", "0")
    with pytest.raises(ValueError, match="mode"):
        kernel_eval(params, pt, "fast")
    with pytest.raises(TypeError, match="QuadrantPoint"):
        kernel_eval(params, (1, 1), "closed")


# -- the two routes and frozen oracles --

# cylinder values at zero exponent and unit argument, frozen once:
#   quadrant 1 -> H1_0(1)/2, quadrant 2 -> K_0(1)/(pi i),
#   quadrant 3 -> -H2_0(1)/2
_ORACLES = {
    1: ("0.3825988432789832757248588", "0.04412848210783847899146338"),
    2: ("0", "-0.1340162410169942743813847"),
    3: ("-0.3825988432789832757248588", "0.04412848210783847899146338"),
}


@pytest.mark.parametrize("quadrant", sorted(_ORACLES))
def test_frozen_oracle_values(quadrant):
    params = KernelParams(p=3, s=0, nu=0, mu=0, r=1, precision="1e-20")
    pt = QuadrantPoint.from_polar(quadrant, "1", "0.9")
    got = _mpc(kernel_eval(params, pt, "closed"))
    with mp.workprec(120):
        re, im = (mp.mpf(x) for x in _ORACLES[quadrant])
        assert abs(got - mp.mpc(re, im)) < mp.mpf("1e-24")


@pytest.mark.parametrize("quadrant", [1, 2, 3, 4])
def test_routes_agree(quadrant):
    params = KernelParams(p=3, s=1, nu="0.1", mu="0.05", r="3/2", precision="1e-14")
    pt = QuadrantPoint.from_polar(quadrant, "0.8", "-0.6", lambda_val="0.3")
    closed = _mpc(kernel_eval(params, pt, "closed"))
    integral, diag = kernel_eval_detailed(params, pt, "integral")
    rel = abs(closed - _mpc(integral)) / abs(closed)
    assert rel < mp.mpf("1e-20")  # far below the 1e-6 / 1e-8 grid gates
    assert diag["retried"] is False
    assert diag["family"] == ("cosh" if quadrant in (1, 3) else "sinh")


def test_boost_prefactor():
    # moving beta only rescales by exp(-a*beta) in the closed form
    params = KernelParams(p=3, s=0, nu="0.3", mu=0, r=1, precision="1e-16")
    at = _mpc(kernel_eval(params, QuadrantPoint.from_polar(3, "1", "0.7")))
    base = _mpc(kernel_eval(params, QuadrantPoint.from_polar(3, "1", "0")))
    with mp.workprec(120):
        want = mp.mpf("0.8105842459701870998377292")  # exp(-0.3 * 0.7), frozen
        assert abs(at / base - want) < mp.mpf("1e-24")


def test_weight_couples_to_lambda():
    # with nu = mu the strip exponent vanishes and lambda enters only
    # through exp(mu*lambda)
    base = KernelParams(p=3, s=0, nu="1/4", mu="1/4", r=1, precision="1e-16")
    pt0 = QuadrantPoint.from_polar(3, "1", "0.2", lambda_val=0)
    pt1 = QuadrantPoint.from_polar(3, "1", "0.2", lambda_val="0.8")
    v0 = _mpc(kernel_eval(base, pt0))
    v1 = _mpc(kernel_eval(base, pt1))
    with mp.workprec(120):
        assert abs(v1 / v0 - mp.exp(mp.mpf("0.2"))) < mp.mpf("1e-25")


def test_boost_reflection_symmetry():
    for quadrant in (1, 2, 3, 4):
        pt = QuadrantPoint.from_polar(quadrant, "1.1", "0.45")
        a = kernel_eval(
            KernelParams(p=3, s=0, nu="0.25", mu=0, r=1, precision="1e-16"), pt
        )
        b = kernel_eval(
            KernelParams(p=3, s=0, nu="-0.25", mu=0, r=1, precision="1e-16"),
            pt.swapped(),
        )
        assert abs(_mpc(a) - _mpc(b)) < mp.mpf("1e-25")


def test_wrong_tilt_grows():
    with mp.workprec(128):
        with pytest.raises(ArithmeticError, match="decay"):
            kernels._contour_sinh_integral(
                mp.mpf(1), mp.mpf("0.3"), +1, mp.mpf("1e-20"), tilt_sign=-1
            )
        with pytest.raises(ArithmeticError, match="decay"):
            kernels._contour_cosh_integral(
                mp.mpf(1), mp.mpf("0.3"), -1, mp.mpf("1e-20"), tilt_sign=+1
            )


def test_tilt_retry_is_logged_and_used(monkeypatch, caplog):
    real = kernels._contour_cosh_integral

    def flaky(arg, drift, phase_sign, eps_abs, theta=None, tilt_sign=None):
        if tilt_sign is None:
            raise ArithmeticError("tilted integrand fails to decay at the cutoff")
        return real(arg, drift, phase_sign, eps_abs, theta)

    monkeypatch.setattr(kernels, "_contour_cosh_integral", flaky)
    params = KernelParams(p=3, s=0, nu="0.17", mu=0, r=1, precision="1e-14")
    pt = QuadrantPoint.from_polar(3, "1.23456", "0.1")
    with caplog.at_level("WARNING", logger="fsusy.kernels"):
        integral, diag = kernel_eval_detailed(params, pt, "integral")
    assert diag["retried"] is True
    assert any("tilt" in rec.message for rec in caplog.records)
    closed = kernel_eval(params, pt, "closed")
    assert abs(_mpc(closed) - _mpc(integral)) < mp.mpf("1e-20")


def test_precision_shortfall_raises(monkeypatch):
    monkeypatch.setattr(kernels, "_target_bits", lambda tgt: 64)
    params = KernelParams(p=3, s=0, nu="0.3", mu=0, r=1, precision="1e-40")
    pt = QuadrantPoint.from_polar(3, "1", "0.5")
    with pytest.raises(PrecisionError):
        kernel_eval(params, pt, "closed")


def test_determinism():
    params = KernelParams(p=3, s=1, nu="0.2", mu="0.1", r="5/4", precision="1e-14")
    pt = QuadrantPoint.from_polar(2, "1.5", "-0.3", lambda_val="0.6")
    runs = [kernel_eval(params, pt, mode) for mode in ("closed", "integral")]
    again = [kernel_eval(params, pt, mode) for mode in ("closed", "integral")]
    for a, b in zip(runs, again):
        assert (a.re, a.im, a.err_estimate) == (b.re, b.im, b.err_estimate)


# -- dressing polynomials --


def test_omega_constant_term(ctx):
    for s in range(ctx.p):
        om = omega_poly(s, ctx)
        assert om.degree() == ctx.p - 1 - s
        want = (ctx.i() * ctx.c_hat(1)) ** s / ctx.qfact(s)
        assert om.coeffs[0] == want
    assert omega_poly(0, ctx).coeffs[0] == ctx.one()


def test_omega_shift_out_of_range(ctx3):
    with pytest.raises(ValueError, match="shift"):
        omega_poly(3, ctx3)
    with pytest.raises(ValueError, match="shift"):
        omega_poly(-1, ctx3)


def test_omega_readings_differ(ctx3):
    om_d = omega_poly(0, ctx3)
    om_l = omega_poly(0, ctx3, literal=True)
    assert om_d.coeffs[:2] == om_l.coeffs[:2]
    # at p = 3 the second-order denominators are [2]![2]! = 1 vs [2]! = -1
    assert om_d.coeffs[2] == -om_l.coeffs[2]


def test_omega_as_element_diagonal(ctx3):
    from fsusy.afalg import AAlgebra

    aal = AAlgebra(ctx3)
    elem = omega_poly(0, ctx3).as_aelement(aal)
    assert sorted(m[:3] for m in elem.terms) == [(0, 0, 0), (1, 1, 0), (2, 2, 0)]
    # xi powers carry the reordering weight q^(m^2)
    xi_sq = aal.xi() * aal.xi()
    mon = next(iter(xi_sq.terms))
    assert xi_sq.terms[mon] == ctx3.q(4)


# -- Grassmann assembly --


@pytest.fixture(scope="module")
def assembly(ctx3):
    dual = DualityContext(ctx3)
    params = KernelParams(p=3, s=0, nu="1/5", mu=0, r=1, precision="1e-16")
    pt = QuadrantPoint.from_polar(3, "1", "0.25")
    return ctx3, dual, params, pt


def test_diagonal_entry_is_single_term(assembly):
    ctx3, dual, params, pt = assembly
    qk = q_kernel(0, 0, params, pt, ctx3, dual=dual)
    assert len(qk.terms) == 1
    term = qk.terms[0]
    assert term.shift == 0
    mons = sorted(m[:3] for m in term.grassmann.terms)
    assert mons == [(0, 0, 0), (1, 1, 0), (2, 2, 0)]
    direct = kernel_eval(params, pt, "closed")
    assert abs(_mpc(term.k_value) - _mpc(direct)) < mp.mpf("1e-30")


def test_off_diagonal_two_terms(assembly):
    ctx3, dual, params, pt = assembly
    qk = q_kernel(1, 2, params, pt, ctx3, dual=dual)
    assert [t.shift for t in qk.terms] == [1, -2]
    for term in qk.terms:
        assert all(m[2] == 1 for m in term.grassmann.terms)  # delta^k survives
    up = sorted(m[:3] for m in qk.terms[0].grassmann.terms)
    down = sorted(m[:3] for m in qk.terms[1].grassmann.terms)
    assert up == [(1, 0, 1), (2, 1, 1)]
    assert down == [(0, 2, 1)]


def test_assembly_coefficients_linear(assembly):
    ctx3, dual, params, pt = assembly
    qk = q_kernel(2, 2, params, pt, ctx3, dual=dual)
    coeffs = qk.coefficients(160)
    term = qk.terms[0]
    with mp.workprec(176):
        kv = term.k_value.to_mpc()
        for mon, c in term.grassmann.terms.items():
            assert abs(coeffs[mon] - c.evaluate(160) * kv) < mp.mpf("1e-40")


def test_assembly_guards(assembly):
    ctx3, dual, params, pt = assembly
    with pytest.raises(ValueError, match="s == 0"):
        q_kernel(0, 0, KernelParams(p=3, s=1, nu=0, mu=0, r=1), pt, ctx3, dual=dual)
    with pytest.raises(ValueError, match="indices"):
        q_kernel(0, 3, params, pt, ctx3, dual=dual)
    with pytest.raises(ValueError, match="params.p"):
        q_kernel(0, 0, KernelParams(p=5, s=0, nu=0, mu=0, r=1), pt, ctx3, dual=dual)
    with pytest.raises(ValueError, match="params.r"):
        q_kernel(0, 0, KernelParams(p=3, s=0, nu=0, mu=0, r=2), pt, ctx3, dual=dual)
    with pytest.raises(TypeError, match="exact"):
        q_kernel(
            0,
            0,
            KernelParams(p=3, s=0, nu=mp.mpf("0.25"), mu=0, r=1),
            pt,
            ctx3,
            dual=dual,
        )


def test_assembly_deterministic(assembly):
    ctx3, dual, params, pt = assembly
    a = q_kernel(0, 1, params, pt, ctx3, dual=dual).coefficients(128)
    b = q_kernel(0, 1, params, pt, ctx3, dual=dual).coefficients(128)
    assert sorted(a) == sorted(b)
    for mon in a:
        assert a[mon] == b[mon]


# -- verification grid (trimmed; the acceptance suite runs the full one) --


def test_kernel_verify_trimmed():
    report = kernel_verify(
        rs=("1",), rhos=("1", "2"), betas=("0",), exponents=("0.3",)
    )
    assert report.passed, report.failures()
    assert len(report.measurements["rows"]) == 8


# -- generator ladder --


def test_ladder_all_relations(ctx3):
    report = d_ladder_suite(1, Fraction(1, 5), ctx=ctx3)
    assert report.passed, report.failures()
    # away from n = 0 the alternative eigenvalue -i(nu + n/p) must miss
    assert report.measurements["H_alt_eigenvalue_residual"] > 0.01
    assert report.measurements["p+_residual_literal_omega"] > 0.01


def test_ladder_wrap_step(ctx3):
    # n = 0 wraps downward to n = p-1; eigenvalue alternatives coincide here
    report = d_ladder_suite(0, Fraction(1, 5), ctx=ctx3)
    assert report.passed, report.failures()
    assert report.measurements["H_alt_eigenvalue_residual"] < 1e-4


def test_ladder_guards(ctx3):
    with pytest.raises(ValueError, match="quadrant 3"):
        d_ladder_suite(
            0, Fraction(1, 5), grid=(QuadrantPoint.from_polar(1, "1", "0"),), ctx=ctx3
        )
    with pytest.raises(ValueError, match="nu"):
        d_ladder_suite(0, Fraction(1, 2), ctx=ctx3)
    with pytest.raises(ValueError, match="n must be"):
        d_ladder_suite(3, Fraction(1, 5), ctx=ctx3)
    with pytest.raises(ValueError, match="step h"):
        d_ladder_suite(0, Fraction(1, 5), h="0.5", ctx=ctx3)
    with pytest.raises(ValueError, match="underflow"):
        d_ladder_suite(0, Fraction(1, 5), h="1e-30", ctx=ctx3, precision_bits=66)
