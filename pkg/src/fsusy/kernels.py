"""Kernel functions attached to the Gaussian-sector corepresentations.

A kernel here is a scalar function of a point with light-cone coordinates
(z_plus, z_minus), labelled by a shift index s and a pair of weights
(nu, mu).  Away from the light cone every point sits in one of four
quadrants, and in each quadrant the kernel has two independent
evaluations:

* ``closed``  -- a cylinder-function form: a Hankel function in the two
  quadrants where z_plus*z_minus > 0, a modified Bessel function of the
  second kind in the two where z_plus*z_minus < 0, times an exponential
  prefactor in the boost coordinate.
* ``integral`` -- direct quadrature of the defining contour integral,
  rotated onto a tilted path so the oscillatory phase becomes uniform
  exponential decay.  Nothing is shared with the closed route past the
  quadrature engine's exp/log, so agreement of the two is a genuine
  cross-check.

On top of the scalar kernels sits the Grassmann-valued assembly
``q_kernel`` (matrix entries of the corepresentation, carrying
nilpotent generator factors) and ``d_ladder_suite``, which verifies the
symbolic generator actions against finite differences of the numeric
kernels.

Weights are kept exact (strings / Fractions) until they meet the
working-precision block, same policy as :mod:`fsusy.bessel`.
"""

import logging
import time
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .afalg import AAlgebra, AElement
from .bessel import (
    ComplexValue,
    PrecisionError,
    bessel_eval,
    doubling_trapezoid,
    _tail_cutoff,
    _tangent_tail_bound,
    _contour_cosh_integral,
)
from .duality import DualityContext
from .report import NumericReport
from .scalars import FieldContext, FieldScalar, is_odd_prime

__all__ = [
    "QuadrantPoint",
    "quadrant_decompose",
    "KernelParams",
    "kernel_eval",
    "kernel_eval_detailed",
    "OmegaPolynomial",
    "omega_poly",
    "QKernelTerm",
    "QKernel",
    "q_kernel",
    "kernel_verify",
    "d_ladder_suite",
]

logger = logging.getLogger(__name__)

# sign of (z_plus, z_minus) in each quadrant
_QUAD_SIGNS = {1: (1, 1), 2: (1, -1), 3: (-1, -1), 4: (-1, 1)}
_SIGNS_QUAD = {v: k for k, v in _QUAD_SIGNS.items()}

# reflecting the boost coordinate (beta -> -beta, z_plus <-> z_minus)
_QUAD_SWAP = {1: 1, 2: 4, 3: 3, 4: 2}


# -- quadrant geometry --


@dataclass(frozen=True)
class QuadrantPoint:
    """A point off the light cone, stored both ways: cartesian
    (z_plus, z_minus) and polar (quadrant, rho, beta) with
    z_plus = s1 * (rho/2) * exp(beta), z_minus = s2 * (rho/2) * exp(-beta).
    lambda_val is the extra central coordinate the kernels couple to only
    through their mu-weight."""

    quadrant: int
    rho: mp.mpf
    beta: mp.mpf
    lambda_val: mp.mpf
    z_plus: mp.mpf
    z_minus: mp.mpf

    @classmethod
    def from_polar(cls, quadrant, rho, beta, lambda_val=0):
        if quadrant not in _QUAD_SIGNS:
            raise ValueError(f"quadrant must be 1..4, got {quadrant}")
        with mp.extraprec(80):
            rho = mp.mpmathify(rho)
            beta = mp.mpmathify(beta)
            lam = mp.mpmathify(lambda_val)
            if rho <= 0:
                raise ValueError("rho must be positive")
            s1, s2 = _QUAD_SIGNS[quadrant]
            zp = s1 * rho / 2 * mp.exp(beta)
            zm = s2 * rho / 2 * mp.exp(-beta)
        return cls(quadrant, rho, beta, lam, zp, zm)

    def round_trip_error(self):
        """max |z reconstructed from (quadrant, rho, beta) - z stored|."""
        with mp.extraprec(80):
            s1, s2 = _QUAD_SIGNS[self.quadrant]
            zp = s1 * self.rho / 2 * mp.exp(self.beta)
            zm = s2 * self.rho / 2 * mp.exp(-self.beta)
            return max(abs(zp - self.z_plus), abs(zm - self.z_minus))

    def swapped(self):
        """The reflected point: z_plus <-> z_minus (beta flips sign)."""
        return QuadrantPoint(
            _QUAD_SWAP[self.quadrant],
            self.rho,
            mp.fneg(self.beta, exact=True),
            self.lambda_val,
            self.z_minus,
            self.z_plus,
        )

    def __str__(self):
        return (
            f"Q{self.quadrant}(rho={mp.nstr(self.rho, 8)}, "
            f"beta={mp.nstr(self.beta, 8)})"
        )


def quadrant_decompose(z_plus, z_minus, lambda_val=0):
    """Polar form of a point: rho = 2*sqrt|z+ z-|, beta = log|z+/z-| / 2.

    Points on the light cone (either coordinate zero) have no quadrant
    and are rejected."""
    with mp.extraprec(80):
        zp = mp.mpmathify(z_plus)
        zm = mp.mpmathify(z_minus)
        lam = mp.mpmathify(lambda_val)
        if any(isinstance(v, mp.mpc) for v in (zp, zm, lam)):
            raise ValueError("coordinates must be real")
        if zp == 0 or zm == 0:
            raise ValueError("point lies on the light cone; no quadrant applies")
        quadrant = _SIGNS_QUAD[(1 if zp > 0 else -1, 1 if zm > 0 else -1)]
        rho = 2 * mp.sqrt(abs(zp * zm))
        beta = mp.log(abs(zp / zm)) / 2
    return QuadrantPoint(quadrant, rho, beta, lam, zp, zm)


# -- kernel parameters --


@dataclass(frozen=True)
class KernelParams:
    """Labels of one scalar kernel: modulus p, shift index s, weights
    (nu, mu), radial scale r > 0, and the relative-error target.

    The combined exponent nu - mu + s/p must lie strictly inside (-1, 1);
    outside that strip the defining integral diverges and only the
    cylinder-function form continues to make sense (internal callers use
    the continuation directly, bypassing this gate)."""

    p: int
    s: int
    nu: object
    mu: object
    r: object
    precision: object = "1e-10"

    def __post_init__(self):
        if not is_odd_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if not isinstance(self.s, int):
            raise ValueError("shift index s must be an integer")
        with mp.extraprec(80):
            for label, v in (("nu", self.nu), ("mu", self.mu)):
                if isinstance(mp.mpmathify(v), mp.mpc):
                    raise ValueError(f"{label} must be real here")
            if mp.mpmathify(self.r) <= 0:
                raise ValueError("r must be positive")
            tgt = mp.mpf(self.precision)
            if not 0 < tgt < 1:
                raise ValueError("precision must be a relative error in (0, 1)")
            a = self.strip_exponent()
            if not -1 < a < 1:
                raise ValueError(
                    f"nu - mu + s/p = {mp.nstr(a, 6)} is outside the open "
                    "strip (-1, 1) where the integral converges"
                )

    def strip_exponent(self):
        """nu - mu + s/p as an mpf at the ambient precision."""
        return mp.mpmathify(self.nu) - mp.mpmathify(self.mu) + mp.mpf(self.s) / self.p


# -- closed route --

# per quadrant: cylinder-function kind, sign of the i*pi/2 half-turn in
# the exponential prefactor, and the scalar coefficient
_CLOSED_KIND = {1: "H1", 2: "K", 3: "H2", 4: "K"}
_HALF_TURN = {1: 1, 2: -1, 3: -1, 4: 1}

_BESSEL_CACHE = {}
_J_CACHE = {}


def _closed_coeff(quadrant):
    if quadrant == 1:
        return mp.mpf(1) / 2
    if quadrant == 3:
        return mp.mpf(-1) / 2
    return 1 / (mp.pi * 1j)


def _bessel_cached(kind, order, arg, bits, rel_target):
    key = (kind, order._mpf_, arg._mpf_, bits)
    hit = _BESSEL_CACHE.get(key)
    if hit is None:
        with mp.workprec(bits):
            hit = bessel_eval(kind, order, arg, precision=rel_target)
        _BESSEL_CACHE[key] = hit
    return hit


def _closed_core(quadrant, abar, x, beta, bits, rel_target):
    """Cylinder form without the exp(mu*lambda) factor:
    coeff(quadrant) * exp(abar*(beta + half_turn*i*pi/2)) * C_abar(x)
    where C is H1 / K / H2 / K in quadrants 1..4."""
    with mp.workprec(bits):
        cyl = _bessel_cached(_CLOSED_KIND[quadrant], abar, x, bits, rel_target / 16)
        pref = _closed_coeff(quadrant) * mp.exp(
            abar * (beta + _HALF_TURN[quadrant] * 1j * mp.pi / 2)
        )
        value = pref * cyl.to_mpc()
        err = abs(pref) * mp.mpf(cyl.err_estimate) + mp.mpf(2) ** (-(bits - 8)) * abs(value)
    return value, err


# -- integral route --


def _contour_sinh_integral(arg, drift, phase_sign, eps_abs, theta=None, tilt_sign=None):
    """integral exp(i*phase_sign*arg*sinh u + drift*u) du on the constant
    tilt u = t + i*tilt_sign*theta.

    With the matching tilt (tilt_sign = phase_sign, the default) the
    integrand decays like exp(-arg*sin(theta)*cosh t); the opposite tilt
    grows and trips the decay guard.  Returns (value, error_bound)."""
    x = mp.mpf(arg)
    a = mp.mpf(drift)
    if theta is None:
        theta = mp.pi / 4
    log_target = -mp.log(eps_abs) if eps_abs > 0 else mp.mpf(80)
    decay_scale = x * mp.sin(theta)
    cutoff = _tail_cutoff(decay_scale, abs(a), log_target) + 1

    sgn = 1 if phase_sign >= 0 else -1
    tilt = sgn if tilt_sign is None else (1 if tilt_sign >= 0 else -1)
    shift = 1j * tilt * theta

    def f(t):
        u = t + shift
        return mp.exp(1j * sgn * x * mp.sinh(u) + a * u)

    anchor = abs(f(mp.mpf(0)))
    edge = max(abs(f(cutoff)), abs(f(-cutoff)))
    if not edge < anchor * mp.mpf("1e-6") + eps_abs:
        raise ArithmeticError("tilted integrand fails to decay at the cutoff")
    value, change = doubling_trapezoid(f, -cutoff, cutoff, eps_abs / 4)
    tail = 2 * _tangent_tail_bound(decay_scale, abs(a), cutoff - 1)
    return value, change + tail


# per quadrant: contour family and phase sign of the rotated integral
_CONTOUR_FAMILY = {1: "cosh", 2: "sinh", 3: "cosh", 4: "sinh"}
_PHASE_SIGN = {1: 1, 2: -1, 3: -1, 4: 1}


def _integral_core(quadrant, abar, x, beta, bits, rel_target, theta=None):
    """Contour form without the exp(mu*lambda) factor:
    exp(abar*beta)/(2*pi*i) times the tilted-path integral.  The path
    integral itself is beta-independent, so it is cached per
    (quadrant, abar, x, bits)."""
    family = _CONTOUR_FAMILY[quadrant]
    phase = _PHASE_SIGN[quadrant]
    fn = _contour_cosh_integral if family == "cosh" else _contour_sinh_integral
    with mp.workprec(bits):
        if theta is None:
            theta = mp.pi / 4
        eps_abs = mp.mpf(rel_target) / 16 * mp.exp(-x)
        key = (quadrant, abar._mpf_, x._mpf_, bits, theta._mpf_)
        hit = _J_CACHE.get(key)
        if hit is None:
            retried = False
            try:
                raw, jerr = fn(x, abar, phase, eps_abs, theta)
            except ArithmeticError:
                logger.warning(
                    "quadrant %d: tilt sign %+d grew past the decay guard; "
                    "retrying with the tilt flipped",
                    quadrant,
                    phase,
                )
                raw, jerr = fn(x, abar, phase, eps_abs, theta, tilt_sign=-phase)
                retried = True
            sin_eff = (
                mp.sin(theta * mp.tanh(mp.mpf(2))) if family == "cosh" else mp.sin(theta)
            )
            cutoff = _tail_cutoff(x * sin_eff, abs(abar), -mp.log(eps_abs)) + 1
            hit = (raw, jerr, retried, float(cutoff))
            _J_CACHE[key] = hit
        raw, jerr, retried, cutoff = hit
        pref = mp.exp(abar * beta) / (2 * mp.pi * 1j)
        value = pref * raw
        err = abs(pref) * jerr + mp.mpf(2) ** (-(bits - 8)) * abs(value)
    diag = {
        "route": "integral",
        "family": family,
        "phase_sign": phase,
        "theta": float(theta),
        "cutoff": cutoff,
        "retried": retried,
    }
    return value, err, diag


# -- public evaluation --


def _target_bits(rel_target):
    with mp.extraprec(40):
        return max(256, int(mp.ceil(-mp.log(rel_target, 2))) + 96)


def kernel_eval_detailed(params: KernelParams, point: QuadrantPoint, mode="closed"):
    """Evaluate one scalar kernel at one point.

    mode "closed" uses the cylinder-function form, mode "integral" the
    direct contour quadrature.  Returns (ComplexValue, diagnostics);
    raises PrecisionError if the relative-error target is missed."""
    if mode not in ("closed", "integral"):
        raise ValueError(f"mode must be 'closed' or 'integral', got {mode!r}")
    if not isinstance(point, QuadrantPoint):
        raise TypeError("point must be a QuadrantPoint")
    with mp.extraprec(40):
        tgt = mp.mpf(params.precision)
    bits = _target_bits(tgt)
    with mp.workprec(bits):
        nu = mp.mpmathify(params.nu)
        muw = mp.mpmathify(params.mu)
        r = mp.mpmathify(params.r)
        abar = -(nu - muw + mp.mpf(params.s) / params.p)
        x = r * point.rho
        if mode == "closed":
            core, err = _closed_core(point.quadrant, abar, x, point.beta, bits, tgt)
            diag = {"route": "closed", "cylinder": _CLOSED_KIND[point.quadrant]}
        else:
            core, err, diag = _integral_core(point.quadrant, abar, x, point.beta, bits, tgt)
        scale = mp.exp(muw * point.lambda_val)
        value = core * scale
        err = err * abs(scale) + mp.mpf(2) ** (-(bits - 8)) * abs(value)
        rel = err / abs(value) if value != 0 else (mp.inf if err > 0 else mp.mpf(0))
        if rel > tgt:
            raise PrecisionError(
                f"kernel evaluation achieved relative error {mp.nstr(rel, 5)}, "
                f"target {mp.nstr(tgt, 5)}",
                achieved=rel,
            )
        out = ComplexValue(value.real, value.imag, err)
    return out, diag


def kernel_eval(params: KernelParams, point: QuadrantPoint, mode="closed") -> ComplexValue:
    """Evaluate one scalar kernel at one point; see kernel_eval_detailed."""
    return kernel_eval_detailed(params, point, mode)[0]


def _kernel_value_continued(p, s, nuF, muF, rF, point, bits, rel_target):
    """Closed-route value with exact Fraction weights, skipping the strip
    gate: the cylinder form is the analytic continuation in the exponent,
    valid as long as the Bessel order stays inside the evaluator window.
    Used by the assembly and the ladder, whose shifted terms step outside
    the strip."""
    with mp.workprec(bits):
        abar = mp.mpmathify(-(nuF - muF) - Fraction(s, p))
        x = mp.mpmathify(rF) * point.rho
        core, err = _closed_core(point.quadrant, abar, x, point.beta, bits, rel_target)
        scale = mp.exp(mp.mpmathify(muF) * point.lambda_val)
        value = core * scale
        err = err * abs(scale)
    return value, err


# -- omega polynomials --


@dataclass(frozen=True)
class OmegaPolynomial:
    """Polynomial in the invariant quadratic xi that dresses the
    Grassmann factor of shift s in the kernel assembly.  coeffs[m] is
    the exact scalar in front of xi^m."""

    s: int
    coeffs: tuple
    literal: bool

    def degree(self):
        return len(self.coeffs) - 1

    def as_aelement(self, aal: AAlgebra) -> AElement:
        xi = aal.xi()
        acc = aal.one()
        out = aal.zero()
        for c in self.coeffs:
            out = out + acc * c
            acc = acc * xi
        return out


def omega_poly(s: int, ctx: FieldContext, literal: bool = False) -> OmegaPolynomial:
    """Coefficients of the dressing polynomial of shift s:

        coeff[m] = (i*chat)^(2m+s) * q^(s*m) / ([m]! [m+s]!),   m = 0..p-1-s

    with chat the real p-th root of r.  literal=True switches the
    denominator to [m]! [s]! (an alternative reading kept only so the
    ladder suite can demonstrate it breaks the generator relations)."""
    p = ctx.p
    if not 0 <= s <= p - 1:
        raise ValueError(f"shift must be in [0, {p - 1}], got {s}")
    ichat = ctx.i() * ctx.c_hat(1)
    top = p - 1 - s

    # route one: ratio recursion from the m = 0 seed
    seed = ichat**s / ctx.qfact(s)
    ratio_step = ichat * ichat * ctx.q(s)
    rec = [seed]
    for m in range(top):
        denom = ctx.qint(m + 1) * (ctx.one() if literal else ctx.qint(m + s + 1))
        rec.append(rec[-1] * ratio_step / denom)

    # route two: each coefficient from scratch
    direct = []
    for m in range(top + 1):
        denom = ctx.qfact(m) * (ctx.qfact(s) if literal else ctx.qfact(m + s))
        direct.append(ichat ** (2 * m + s) * ctx.q(s * m) / denom)

    if rec != direct:
        raise AssertionError("omega coefficient routes disagree")
    return OmegaPolynomial(s, tuple(rec), literal)


# -- Grassmann-valued assembly --


@dataclass(frozen=True)
class QKernelTerm:
    """One term of the assembled matrix entry: an exact Grassmann factor
    times the scalar kernel of the given shift, evaluated at the point."""

    grassmann: AElement
    shift: int
    designator: str
    k_value: ComplexValue


@dataclass(frozen=True)
class QKernel:
    """Matrix entry Q[k, l] of the corepresentation: a sum of Grassmann
    factors weighted by scalar kernel values."""

    k: int
    l: int
    terms: tuple
    params: KernelParams
    point: QuadrantPoint

    def coefficients(self, prec: int = 128):
        """Collapse to {monomial: complex coefficient} by evaluating the
        exact Grassmann scalars at prec bits and scaling by the kernel
        values."""
        out = {}
        with mp.workprec(prec + 16):
            for term in self.terms:
                kv = term.k_value.to_mpc()
                for mon, c in term.grassmann.terms.items():
                    v = c.evaluate(prec) * kv
                    cur = out.get(mon)
                    out[mon] = v if cur is None else cur + v
        return out


def q_kernel(
    k: int,
    l: int,
    params: KernelParams,
    point: QuadrantPoint,
    ctx: FieldContext,
    dual: DualityContext | None = None,
    literal: bool = False,
) -> QKernel:
    """Assemble the (k, l) matrix entry at a point.

    With e = (l - k) mod p the entry is

        (qs^-1 eta_plus)^e * omega_e(xi) * delta^k * K[shift e]
        + omega_{p-e}(xi) * (qs eta_minus)^{p-e} * delta^k * K[shift e-p]

    where qs is the convention-fixed square root of q and the second
    term is present only for e > 0.  Kernel values use the closed route
    via the strip continuation (the second term's exponent always leaves
    the strip).  params must carry s = 0; the assembly sets the per-term
    shifts itself."""
    p = ctx.p
    if params.p != p:
        raise ValueError("params.p differs from ctx.p")
    if params.s != 0:
        raise ValueError("assembly requires params.s == 0; shifts are per term")
    if Fraction(params.r) != ctx.r:
        raise ValueError("params.r differs from ctx.r")
    if not (0 <= k < p and 0 <= l < p):
        raise ValueError(f"matrix indices must be in [0, {p - 1}]")
    if dual is None:
        dual = DualityContext(ctx)
    aal = AAlgebra(ctx)
    qs = dual._sqrt_q

    try:
        nuF = Fraction(params.nu)
        muF = Fraction(params.mu)
    except (TypeError, ValueError) as exc:
        raise TypeError(
            "assembly keeps weights exact; pass nu and mu as int, Fraction, "
            "or a decimal/ratio string"
        ) from exc
    with mp.extraprec(40):
        tgt = mp.mpf(params.precision)
    bits = _target_bits(tgt)

    e = (l - k) % p
    terms = []

    def kernel_term(grassmann, shift):
        value, err = _kernel_value_continued(
            p, shift, nuF, muF, ctx.r, point, bits, tgt
        )
        cv = ComplexValue(value.real, value.imag, err)
        terms.append(
            QKernelTerm(grassmann, shift, f"K[shift {shift:+d}]", cv)
        )

    g1 = (
        (aal.eta_plus() ** e) * qs.invert() ** e
        * omega_poly(e, ctx, literal).as_aelement(aal)
        * aal.delta(k)
    )
    if not g1.is_zero():
        kernel_term(g1, e)
    if e > 0:
        g2 = (
            omega_poly(p - e, ctx, literal).as_aelement(aal)
            * (aal.eta_minus() ** (p - e)) * qs ** (p - e)
            * aal.delta(k)
        )
        if not g2.is_zero():
            kernel_term(g2, e - p)
    return QKernel(k, l, tuple(terms), params, point)


# -- two-route verification grid --


def kernel_verify(
    p: int = 3,
    rs=("1/2", "1", "2"),
    rhos=("1/2", "1", "2"),
    betas=("-1", "0", "1"),
    exponents=("-0.3", "0", "0.3"),
    quadrants=(1, 2, 3, 4),
    precision="1e-16",
) -> NumericReport:
    """Closed vs integral route over a grid of kernel parameters.

    The grid runs the strip exponent nu - mu + s/p over `exponents`
    (realized as nu with mu = 0, s = 0).  Tolerances are per quadrant:
    1e-8 where the kernel is a decaying K-type integral, 1e-6 where it
    is oscillatory Hankel-type.  Also checks the boost-reflection
    symmetry K[a](beta) = K[-a, swapped quadrant](-beta), the two fixed
    pointwise oracle values in quadrants 1 and 2, and that a mu = 0
    kernel ignores the lambda coordinate."""
    tol = {1: mp.mpf("1e-6"), 2: mp.mpf("1e-6"), 3: mp.mpf("1e-8"), 4: mp.mpf("1e-8")}
    report = NumericReport("kernel-verify")
    report.measure("p", p)
    report.measure("precision", str(precision))
    t0 = time.perf_counter()
    rows = []
    worst = {quadrant: mp.mpf(0) for quadrant in quadrants}
    retried_count = 0
    for quadrant in quadrants:
        for r in rs:
            for rho in rhos:
                for beta in betas:
                    for a in exponents:
                        params = KernelParams(
                            p=p, s=0, nu=a, mu=0, r=r, precision=precision
                        )
                        point = QuadrantPoint.from_polar(quadrant, rho, beta)
                        closed = kernel_eval(params, point, "closed")
                        integral, diag = kernel_eval_detailed(params, point, "integral")
                        retried_count += bool(diag["retried"])
                        with mp.workprec(64):
                            cv = closed.to_mpc()
                            iv = integral.to_mpc()
                            rel = abs(cv - iv) / max(abs(cv), abs(iv))
                        worst[quadrant] = max(worst[quadrant], rel)
                        rows.append(
                            {
                                "quadrant": quadrant,
                                "r": r,
                                "rho": rho,
                                "beta": beta,
                                "exponent": a,
                                "closed": mp.nstr(cv, 20),
                                "integral": mp.nstr(iv, 20),
                                "rel_err": float(rel),
                                "retried": diag["retried"],
                            }
                        )
    for quadrant in quadrants:
        report.check(
            f"quadrant {quadrant}: closed vs integral on the grid",
            worst[quadrant] < tol[quadrant],
            detail=f"worst rel err {mp.nstr(worst[quadrant], 4)}, tol {mp.nstr(tol[quadrant], 2)}",
            residual=float(worst[quadrant]),
        )
    report.check(
        "no contour needed the fallback tilt",
        retried_count == 0,
        detail=f"{retried_count} retried rows",
    )

    # boost reflection: negating the exponent and beta while swapping
    # z_plus <-> z_minus reproduces the same value
    sym_worst = mp.mpf(0)
    for quadrant in quadrants:
        pt = QuadrantPoint.from_polar(quadrant, "1.3", "0.7")
        base = kernel_eval(
            KernelParams(p=p, s=0, nu="0.3", mu=0, r=1, precision=precision), pt
        )
        mirrored = kernel_eval(
            KernelParams(p=p, s=0, nu="-0.3", mu=0, r=1, precision=precision),
            pt.swapped(),
        )
        with mp.workprec(64):
            sym_worst = max(
                sym_worst, abs(base.to_mpc() - mirrored.to_mpc()) / abs(base.to_mpc())
            )
    report.check(
        "boost reflection symmetry",
        sym_worst < mp.mpf("1e-12"),
        detail=f"worst rel err {mp.nstr(sym_worst, 4)}",
        residual=float(sym_worst),
    )

    # pointwise oracles at zero exponent, r*rho = 1: quadrant 1 gives
    # H1_0(1)/2, quadrant 2 gives K_0(1)/(pi*i)
    params0 = KernelParams(p=p, s=0, nu=0, mu=0, r=1, precision=precision)
    with mp.workprec(320):
        got1 = kernel_eval(params0, QuadrantPoint.from_polar(1, 1, "0.4")).to_mpc()
        want1 = bessel_eval("H1", 0, 1, precision="1e-30").to_mpc() / 2
        got2 = kernel_eval(params0, QuadrantPoint.from_polar(2, 1, "0.4")).to_mpc()
        want2 = bessel_eval("K", 0, 1, precision="1e-30").to_mpc() / (mp.pi * 1j)
        res1 = abs(got1 - want1) / abs(want1)
        res2 = abs(got2 - want2) / abs(want2)
    report.check(
        "pointwise oracle: quadrant 1 equals H1_0(1)/2",
        res1 < mp.mpf("1e-14"),
        residual=float(res1),
    )
    report.check(
        "pointwise oracle: quadrant 2 equals K_0(1)/(pi i)",
        res2 < mp.mpf("1e-14"),
        residual=float(res2),
    )

    # a mu = 0 kernel cannot see lambda
    pt_a = QuadrantPoint.from_polar(3, 1, "0.2", lambda_val=0)
    pt_b = QuadrantPoint.from_polar(3, 1, "0.2", lambda_val=1)
    va = kernel_eval(params0, pt_a)
    vb = kernel_eval(params0, pt_b)
    report.check(
        "mu = 0 kernel is lambda-independent",
        va.re == vb.re and va.im == vb.im,
    )

    report.measure("elapsed_seconds", round(time.perf_counter() - t0, 3))
    report.measure("rows", rows)
    report.measure("bessel_cache_entries", len(_BESSEL_CACHE))
    report.measure("contour_cache_entries", len(_J_CACHE))
    return report


# -- generator ladder against finite differences --


@dataclass
class _LadderEnv:
    """Shared evaluation state for one ladder run."""

    p: int
    rF: Fraction
    bits: int
    h: mp.mpf
    rel_target: mp.mpf
    cache: dict


def _eval_zfunc(zf, zp, zm, env: _LadderEnv):
    """Evaluate a kernel-derivative expression at cartesian (zp, zm).

    zf is a nested tag tuple: ("base", shift, nuF) is the scalar kernel
    itself (mu = 0); ("dplus", inner) / ("dminus", inner) differentiate
    in z_plus / z_minus by central differences; ("euler", inner) is
    z_plus d_plus - z_minus d_minus at the same point."""
    tag = zf[0]
    if tag == "base":
        _, shift, nuF = zf
        key = (shift, nuF, zp._mpf_, zm._mpf_)
        hit = env.cache.get(key)
        if hit is None:
            point = quadrant_decompose(zp, zm)
            value, _err = _kernel_value_continued(
                env.p, shift, nuF, Fraction(0), env.rF, point, env.bits, env.rel_target
            )
            env.cache[key] = value
            hit = value
        return hit
    if tag == "dplus":
        step = env.h * max(mp.mpf(1), abs(zp))
        hi = _eval_zfunc(zf[1], zp + step, zm, env)
        lo = _eval_zfunc(zf[1], zp - step, zm, env)
        return (hi - lo) / (2 * step)
    if tag == "dminus":
        step = env.h * max(mp.mpf(1), abs(zm))
        hi = _eval_zfunc(zf[1], zp, zm + step, env)
        lo = _eval_zfunc(zf[1], zp, zm - step, env)
        return (hi - lo) / (2 * step)
    if tag == "euler":
        inner = zf[1]
        return zp * _eval_zfunc(("dplus", inner), zp, zm, env) - zm * _eval_zfunc(
            ("dminus", inner), zp, zm, env
        )
    raise ValueError(f"unknown kernel-expression tag {tag!r}")


def _d_terms(n, nuF, ctx, aal, dual, literal=False):
    """Symbolic form of the diagonal corepresentation entry D_n at weight
    nuF: a list of (monomial, exact scalar, kernel expression) with
    monomial = (eta_plus power, eta_minus power, delta power)."""
    p = ctx.p
    e = n % p
    qs = dual._sqrt_q
    out = []

    def push(ael, shift):
        for mon, c in ael.terms.items():
            if any(mon[i] for i in (3, 4, 5)) or mon[6] != 0:
                raise AssertionError("assembly left the Grassmann sector")
            out.append(((mon[0], mon[1], mon[2]), c, ("base", shift, nuF)))

    g1 = (aal.eta_plus() ** e) * qs.invert() ** e * omega_poly(
        e, ctx, literal
    ).as_aelement(aal)
    if not g1.is_zero():
        push(g1, e)
    if e > 0:
        g2 = omega_poly(p - e, ctx, literal).as_aelement(aal) * (
            aal.eta_minus() ** (p - e)
        ) * qs ** (p - e)
        if not g2.is_zero():
            push(g2, e - p)
    return out


def _act(gen, terms, ctx, dual, aal):
    """Right action of one generator on a symbolic term list, mirroring
    the closed-form action on the function algebra. Derivative parts are
    deferred into the kernel expression."""
    p = ctx.p
    qs = dual._sqrt_q
    i = ctx.i()
    kappa0 = aal.kappa0
    fact_top = ctx.qfact(p - 1)
    out = []
    for (a, b, k), c, zf in terms:
        if gen == "k":
            out.append(((a, b, k), c * ctx.q(a - b + k), zf))
        elif gen == "H":
            grade = c * i * ctx.from_fraction(Fraction(a - b, p))
            if grade:
                out.append(((a, b, k), grade, zf))
            out.append(((a, b, k), c * i, ("euler", zf)))
        elif gen == "P+":
            out.append(((a, b, k), c * i, ("dplus", zf)))
        elif gen == "P-":
            out.append(((a, b, k), c * i, ("dminus", zf)))
        elif gen == "p+":
            if a >= 1:
                out.append(((a - 1, b, k), c * i * qs * ctx.qint(a) * ctx.q(k - b), zf))
            else:
                coeff = c * i * qs * (kappa0 / fact_top) * ctx.q(k - b)
                out.append(((p - 1, b, k), coeff, ("dplus", zf)))
        elif gen == "p-":
            if b >= 1:
                out.append(
                    ((a, b - 1, k), c * i * qs.invert() * ctx.qint(b) * ctx.q(k - a), zf)
                )
            else:
                coeff = c * i * qs.invert() * (kappa0 / fact_top) * ctx.q(k - a)
                out.append(((a, p - 1, k), coeff, ("dminus", zf)))
        else:
            raise ValueError(f"unknown generator {gen!r}")
    return out


def _eval_terms(terms, zp, zm, env: _LadderEnv, prec_scalars):
    out = {}
    for mon, c, zf in terms:
        v = c.evaluate(prec_scalars) * _eval_zfunc(zf, zp, zm, env)
        cur = out.get(mon)
        out[mon] = v if cur is None else cur + v
    return out


def _dict_gap(lhs, rhs):
    """(max coefficient difference, max coefficient magnitude) across the
    union of monomials."""
    gap = mp.mpf(0)
    scale = mp.mpf(0)
    for mon in set(lhs) | set(rhs):
        lv = lhs.get(mon, mp.mpc(0))
        rv = rhs.get(mon, mp.mpc(0))
        gap = max(gap, abs(lv - rv))
        scale = max(scale, abs(lv), abs(rv))
    return gap, scale


def _scaled(values, factor):
    return {mon: factor * v for mon, v in values.items()}


def d_ladder_suite(
    n: int,
    nu,
    grid=None,
    h="1e-4",
    ctx: FieldContext | None = None,
    precision_bits: int = 192,
    check_literal_omega: bool = True,
) -> NumericReport:
    """Verify the generator ladder on the diagonal corepresentation
    entries D_n numerically.

    Symbolic generator actions (exact scalars, derivative parts deferred)
    are evaluated by central finite differences of the scalar kernels at
    each grid point (quadrant 3, where the kernels are smooth decaying
    K-type) and compared against the predicted ladder targets:

      kappa:  q^n * D_n                      (exact, no numerics)
      H:      -i*nu * D_n
      P+/-:   -r * D_n at weight nu +/- 1
      p+/-:   -chat * D_{n -/+ 1 mod p} at weight nu +/- 1/p
      C:      p- after p+, equal to chat^2 * D_n

    with chat the real p-th root of r.  The weight must satisfy
    0 < nu < 1/p so every shifted kernel order stays inside the cylinder
    evaluator's window.  Also reports the residual of the alternative
    eigenvalue -i*(nu + n/p) for H, and (optionally) demonstrates that
    the alternative omega-denominator reading breaks the p+ relation."""
    if ctx is None:
        ctx = FieldContext(3)
    p = ctx.p
    if not 0 <= n < p:
        raise ValueError(f"n must be in [0, {p - 1}]")
    nuF = Fraction(nu)
    if not 0 < nuF < Fraction(1, p):
        raise ValueError("need 0 < nu < 1/p so all shifted orders stay evaluable")
    bits = int(precision_bits)
    with mp.workprec(bits):
        h_val = mp.mpf(h)
        if not 0 < h_val <= mp.mpf("0.01"):
            raise ValueError("step h must be in (0, 0.01]")
        if h_val < mp.mpf(2) ** (-(bits // 3)):
            raise ValueError(
                "step h underflows the working precision; raise h or precision_bits"
            )
    if grid is None:
        grid = (
            QuadrantPoint.from_polar(3, "1", "0.25"),
            QuadrantPoint.from_polar(3, "0.8", "-0.4"),
        )
    for point in grid:
        if point.quadrant != 3:
            raise ValueError("ladder grid points must sit in quadrant 3")

    dual = DualityContext(ctx)
    aal = AAlgebra(ctx)
    env = _LadderEnv(p, ctx.r, bits, h_val, mp.mpf("1e-18"), {})
    report = NumericReport("d-ladder")
    report.measure("p", p)
    report.measure("n", n)
    report.measure("nu", str(nuF))
    report.measure("h", str(h_val))

    base = _d_terms(n, nuF, ctx, aal, dual)

    # kappa action is exact scalar rescaling; check symbolically
    kap = _act("k", base, ctx, dual, aal)
    qn = ctx.q(n)
    kappa_exact = len(kap) == len(base) and all(
        ko == bo and zo == zb and co == cb * qn
        for (ko, co, zo), (bo, cb, zb) in zip(kap, base)
    )
    report.check("kappa rescales D_n by q^n (exact)", kappa_exact, residual=0.0)

    with mp.workprec(bits):
        r_num = mp.mpmathify(ctx.r)
        chat = ctx.c_hat(1).evaluate(bits)
        nu_num = mp.mpmathify(nuF)
        tol_fd = mp.mpf("1e-4")
        tol_mixed = mp.mpf("1e-3")

        targets = {
            "P+": _d_terms(n, nuF + 1, ctx, aal, dual),
            "P-": _d_terms(n, nuF - 1, ctx, aal, dual),
            "p+": _d_terms((n - 1) % p, nuF + Fraction(1, p), ctx, aal, dual),
            "p-": _d_terms((n + 1) % p, nuF - Fraction(1, p), ctx, aal, dual),
        }
        acted = {gen: _act(gen, base, ctx, dual, aal) for gen in ("H", "P+", "P-", "p+", "p-")}
        composed = _act("p-", acted["p+"], ctx, dual, aal)

        worst = {label: mp.mpf(0) for label in ("H", "H-alt", "P+", "P-", "p+", "p-", "C")}
        ratio_samples = []
        for point in grid:
            zp, zm = point.z_plus, point.z_minus
            d_num = _eval_terms(base, zp, zm, env, bits)
            scale_d = max(abs(v) for v in d_num.values())

            lhs_h = _eval_terms(acted["H"], zp, zm, env, bits)
            gap, scale = _dict_gap(lhs_h, _scaled(d_num, -1j * nu_num))
            worst["H"] = max(worst["H"], gap / max(scale, scale_d))
            gap_alt, _ = _dict_gap(
                lhs_h, _scaled(d_num, -1j * (nu_num + mp.mpf(n) / p))
            )
            worst["H-alt"] = max(worst["H-alt"], gap_alt / max(scale, scale_d))

            for gen, factor in (("P+", -r_num), ("P-", -r_num), ("p+", -chat), ("p-", -chat)):
                lhs = _eval_terms(acted[gen], zp, zm, env, bits)
                tgt_num = _eval_terms(targets[gen], zp, zm, env, bits)
                gap, scale = _dict_gap(lhs, _scaled(tgt_num, factor))
                worst[gen] = max(worst[gen], gap / max(scale, scale_d))
                if gen == "p+":
                    mon = max(tgt_num, key=lambda mm: abs(tgt_num[mm]))
                    if mon in lhs:
                        ratio_samples.append(lhs[mon] / tgt_num[mon])

            lhs_c = _eval_terms(composed, zp, zm, env, bits)
            gap, scale = _dict_gap(lhs_c, _scaled(d_num, chat * chat))
            worst["C"] = max(worst["C"], gap / max(scale, scale_d))

        report.check(
            "H scales D_n by -i*nu",
            worst["H"] < tol_fd,
            detail=f"worst rel residual {mp.nstr(worst['H'], 4)}",
            residual=float(worst["H"]),
        )
        report.measure("H_alt_eigenvalue_residual", float(worst["H-alt"]))
        report.check(
            "translation steps: P+/- send nu to nu +/- 1 with factor -r",
            worst["P+"] < tol_fd and worst["P-"] < tol_fd,
            detail=(
                f"P+ {mp.nstr(worst['P+'], 4)}, P- {mp.nstr(worst['P-'], 4)}"
            ),
            residual=float(max(worst["P+"], worst["P-"])),
        )
        report.check(
            "root steps: p+/- shift (n, nu) by (-1, +1/p) / (+1, -1/p) with factor -chat",
            worst["p+"] < tol_mixed and worst["p-"] < tol_mixed,
            detail=(
                f"p+ {mp.nstr(worst['p+'], 4)}, p- {mp.nstr(worst['p-'], 4)}"
            ),
            residual=float(max(worst["p+"], worst["p-"])),
        )
        report.check(
            "composition p- after p+ scales D_n by chat^2",
            worst["C"] < tol_mixed,
            detail=f"worst rel residual {mp.nstr(worst['C'], 4)}",
            residual=float(worst["C"]),
        )
        if ratio_samples:
            avg = sum(ratio_samples) / len(ratio_samples)
            report.measure(
                "p+_empirical_ratio",
                f"{mp.nstr(avg, 10)} (expected -chat = {mp.nstr(-chat, 10)})",
            )

        if check_literal_omega:
            # the swap of readings is invisible on the p+ step out of
            # n = 0 (the rescaling factors cancel between the source and
            # target polynomials there), so discriminate at n >= 1
            n_lit = n if n != 0 else 1
            base_lit = _d_terms(n_lit, nuF, ctx, aal, dual, literal=True)
            target_lit = _d_terms(
                (n_lit - 1) % p, nuF + Fraction(1, p), ctx, aal, dual, literal=True
            )
            acted_lit = _act("p+", base_lit, ctx, dual, aal)
            worst_lit = mp.mpf(0)
            for point in grid:
                zp, zm = point.z_plus, point.z_minus
                lhs = _eval_terms(acted_lit, zp, zm, env, bits)
                tgt_num = _eval_terms(target_lit, zp, zm, env, bits)
                gap, scale = _dict_gap(lhs, _scaled(tgt_num, -chat))
                worst_lit = max(worst_lit, gap / max(scale, mp.mpf("1e-30")))
            report.measure("p+_residual_literal_omega", float(worst_lit))
            report.check(
                f"alternative omega denominator breaks the p+ step at n = {n_lit}",
                worst_lit > mp.mpf("1e-2") and worst["p+"] < tol_mixed,
                detail=(
                    f"literal-reading residual {mp.nstr(worst_lit, 4)} vs "
                    f"{mp.nstr(worst['p+'], 4)} for the factorial-pair reading"
                ),
            )

    report.measure("kernel_cache_entries", len(env.cache))
    return report
