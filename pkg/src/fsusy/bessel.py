"""High-precision cylinder-function evaluators with two independent routes.

The numeric layer needs the decaying Macdonald function K_nu and the two
Hankel functions H1/H2 at real order and positive real argument.  Nothing
here trusts a library implementation: every kind is computed by two
unrelated methods and the disagreement feeds the reported error bound.

Route one is quadrature.  K_nu(x) has the integral representation

    K_nu(x) = integral_0^inf exp(-x cosh t) cosh(nu t) dt,  x > 0,

whose integrand decays doubly exponentially, so the plain trapezoid rule
converges geometrically; the step is halved until the value settles and
the truncation tail is bounded analytically (cosh is convex, so the
exponent is dominated by its tangent line past the cutoff).  The Hankel
functions come from the same kernel pushed onto a tilted contour
u(t) = t + i theta tanh(t):

    H1_nu(x) = exp(-i nu pi/2)/(pi i) * integral exp(i x cosh u + nu u) du

over the rising contour (theta > 0), and H2 mirrors it on the falling
contour with the opposite phase.  On those contours the oscillatory
factor turns into double-exponential decay and the same trapezoid engine
applies.

Route two is the power series: I_nu and J_nu from their ascending series,
K and Y by the reflection formulas at non-integer order and by the
digamma series at integer order.  mpmath supplies only arbitrary
precision arithmetic and elementary calls (exp, log, gamma, digamma);
its own Bessel implementations are never imported here.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

__all__ = [
    "ComplexValue",
    "PrecisionError",
    "bessel_eval",
    "doubling_trapezoid",
]

KINDS = ("K", "H1", "H2")

# orders are kept inside the open interval (-2, 2); the artifact never
# needs more and the series bookkeeping below assumes it
ORDER_LIMIT = 2


class PrecisionError(ArithmeticError):
    """The requested relative error could not be certified.

    `achieved` carries the bound that was reached, so callers can decide
    whether to retry at higher working precision.
    """

    def __init__(self, message: str, achieved):
        super().__init__(message)
        self.achieved = achieved


@dataclass(frozen=True)
class ComplexValue:
    """A complex number with an attached upper bound on its absolute error."""

    re: mp.mpf
    im: mp.mpf
    err_estimate: mp.mpf

    def to_mpc(self) -> mp.mpc:
        # construct above the parts' own mantissa widths so the ambient
        # context cannot round them away
        bits = max(mp.mp.prec, self.re._mpf_[3], self.im._mpf_[3]) + 8
        with mp.workprec(bits):
            return mp.mpc(self.re, self.im)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def abs(self) -> mp.mpf:
        return mp.sqrt(self.re * self.re + self.im * self.im)

    def rel_err(self) -> mp.mpf:
        scale = self.abs()
        if scale == 0:
            return mp.inf if self.err_estimate > 0 else mp.mpf(0)
        return self.err_estimate / scale

    def pretty(self, digits: int = 20) -> str:
        return "(%s %s %si) +- %s" % (
            mp.nstr(self.re, digits),
            "+" if self.im >= 0 else "-",
            mp.nstr(abs(self.im), digits),
            mp.nstr(self.err_estimate, 3),
        )


# -- trapezoid engine --


def doubling_trapezoid(f, lo, hi, eps, min_levels: int = 3, max_levels: int = 12):
    """Trapezoid value of integral_lo^hi f, halving the step until the
    last refinement moves the value by less than eps in absolute terms.

    Returns (value, change_at_last_level).  The caller is responsible for
    choosing [lo, hi] so the integrand is negligible outside; for the
    analytic, strip-decaying integrands used here each halving roughly
    squares the accuracy, so the final change is a sound error proxy.
    """
    lo = mp.mpf(lo)
    hi = mp.mpf(hi)
    n = 16
    h = (hi - lo) / n
    total = (f(lo) + f(hi)) / 2
    for k in range(1, n):
        total += f(lo + k * h)
    value = total * h
    change = mp.inf
    for level in range(1, max_levels + 1):
        mid = mp.mpc(0)
        for k in range(n):
            mid += f(lo + (k + mp.mpf("0.5")) * h)
        new_value = value / 2 + mid * h / 2
        change = abs(new_value - value)
        value = new_value
        n *= 2
        h /= 2
        if level >= min_levels and change <= eps:
            break
    return value, change


def _tail_cutoff(decay_scale, drift, log_target):
    """Smallest T with decay_scale*cosh(T) - drift*T >= log_target, padded.

    decay_scale > 0, drift >= 0.  Used to truncate integrands bounded by
    exp(-decay_scale*cosh t + drift*t); three rounds of the fixed point
    T = acosh((log_target + drift*T)/decay_scale) overshoot enough.
    """
    t = mp.mpf(2)
    for _ in range(3):
        inner = (log_target + drift * t + 4) / decay_scale
        if inner < 2:
            inner = mp.mpf(2)
        t = mp.acosh(inner)
    return t


def _tangent_tail_bound(decay_scale, drift, cutoff):
    """Bound on integral_cutoff^inf exp(-decay_scale*cosh t + drift*t) dt.

    Convexity of cosh gives cosh t >= cosh T + sinh(T)(t - T), so the tail
    is dominated by a single exponential whenever the slope is positive.
    """
    slope = decay_scale * mp.sinh(cutoff) - drift
    if slope <= 0:
        return mp.inf
    return mp.exp(-(decay_scale * mp.cosh(cutoff) - drift * cutoff)) / slope


# -- route one: quadrature --


def _k_quadrature(order, arg, eps_abs):
    """K_nu by trapezoid on the cosh-kernel representation; even integrand."""
    nu = abs(mp.mpf(order))
    x = mp.mpf(arg)
    log_target = -mp.log(eps_abs) if eps_abs > 0 else mp.mpf(80)
    cutoff = _tail_cutoff(x, nu, log_target)

    def f(t):
        return mp.exp(-x * mp.cosh(t)) * mp.cosh(nu * t)

    half, change = doubling_trapezoid(f, 0, cutoff, eps_abs / 4)
    tail = _tangent_tail_bound(x, nu, cutoff)
    # f is even in t, so the half-line integral equals the [0, cutoff]
    # trapezoid minus half the t=0 node's double counting; the engine
    # already weights the endpoint by 1/2
    return half, change + tail


def _contour_cosh_integral(arg, drift, phase_sign, eps_abs, theta=None, tilt_sign=None):
    """integral exp(i*phase_sign*arg*cosh u + drift*u) du on the tilted
    contour u(t) = t + i*tilt_sign*theta*tanh(t).

    The matching tilt (tilt_sign = phase_sign, the default) turns the
    oscillation into exp(-arg*sin(theta tanh t)*|sinh t|) decay; the
    opposite tilt grows and trips the decay guard.  Returns
    (value, error_bound).  Raises ArithmeticError if the integrand fails
    to decay at the cutoff (wrong tilt for the data).
    """
    x = mp.mpf(arg)
    a = mp.mpf(drift)
    if theta is None:
        theta = mp.pi / 4
    log_target = -mp.log(eps_abs) if eps_abs > 0 else mp.mpf(80)
    # past |t| = 2 the tilt is within 4% of theta; use that slack in the bound
    sin_eff = mp.sin(theta * mp.tanh(mp.mpf(2)))
    cutoff = _tail_cutoff(x * sin_eff, abs(a), log_target) + 1

    sgn = 1 if phase_sign >= 0 else -1
    tilt = sgn if tilt_sign is None else (1 if tilt_sign >= 0 else -1)

    def f(t):
        u = t + 1j * tilt * theta * mp.tanh(t)
        du = 1 + 1j * tilt * theta / mp.cosh(t) ** 2
        return mp.exp(1j * sgn * x * mp.cosh(u) + a * u) * du

    anchor = abs(f(mp.mpf(0)))
    edge = max(abs(f(cutoff)), abs(f(-cutoff)))
    if not edge < anchor * mp.mpf("1e-6") + eps_abs:
        raise ArithmeticError("tilted integrand fails to decay at the cutoff")
    value, change = doubling_trapezoid(f, -cutoff, cutoff, eps_abs / 4)
    tail = 2 * (1 + theta) * _tangent_tail_bound(x * sin_eff, abs(a), cutoff - 1)
    return value, change + tail


def _h_quadrature(kind, order, arg, eps_abs):
    """Hankel functions from the rotated cosh-kernel contour."""
    nu = mp.mpf(order)
    x = mp.mpf(arg)
    if kind == "H1":
        raw, err = _contour_cosh_integral(x, nu, +1, eps_abs)
        value = mp.expjpi(-nu / 2) / (mp.pi * 1j) * raw
    else:
        raw, err = _contour_cosh_integral(x, nu, -1, eps_abs)
        value = -mp.expjpi(nu / 2) / (mp.pi * 1j) * raw
    return value, err / mp.pi


# -- route two: series --

_MAX_TERMS = 20000


def _gamma_ratio_series(nu, x, signs):
    """sum_k signs^k (x/2)^{2k+nu} / (k! Gamma(k+nu+1)): I for signs=+1,
    J for signs=-1.  Terms are generated by ratio recursion, so a single
    Gamma call seeds the sum."""
    half = x / 2
    term = mp.power(half, nu) / mp.gamma(nu + 1)
    acc = term
    k = 0
    quarter = half * half
    tiny = mp.mpf(2) ** (-(mp.mp.prec + 8))
    scale = abs(term)
    while k < _MAX_TERMS:
        k += 1
        term = term * signs * quarter / (k * (k + nu))
        acc += term
        mag = abs(term)
        if mag > scale:
            scale = mag
        if mag < tiny * (abs(acc) + scale * tiny) and k > int(abs(x)) + 4:
            break
    else:
        raise ArithmeticError("series failed to converge")
    return acc


def _i_series(nu, x):
    nu = mp.mpf(nu)
    if nu < 0 and _is_integer(nu):
        nu = -nu  # I_{-n} = I_n
    return _gamma_ratio_series(nu, mp.mpf(x), 1)


def _j_series(nu, x):
    nu = mp.mpf(nu)
    sign = mp.mpf(1)
    if nu < 0 and _is_integer(nu):
        nu = -nu
        sign = mp.power(-1, nu)  # J_{-n} = (-1)^n J_n
    return sign * _gamma_ratio_series(nu, mp.mpf(x), -1)


def _is_integer(nu) -> bool:
    return nu == mp.floor(nu)


def _k_series(order, x):
    """K_nu via reflection (non-integer) or the digamma series (integer)."""
    nu = abs(mp.mpf(order))
    x = mp.mpf(x)
    if not _is_integer(nu):
        return (mp.pi / 2) * (_i_series(-nu, x) - _i_series(nu, x)) / mp.sinpi(nu)
    n = int(nu)
    half = x / 2
    quarter = half * half
    finite = mp.mpf(0)
    for k in range(n):
        finite += (
            mp.factorial(n - k - 1) / mp.factorial(k) * mp.power(-quarter, k)
        )
    finite = finite / 2 * mp.power(half, -n)
    logpart = mp.power(-1, n + 1) * mp.log(half) * _i_series(n, x)
    # digamma series: terms recurse like the I series with the psi weight
    # updated by harmonic increments
    psi_a = mp.digamma(1)
    psi_b = mp.digamma(n + 1)
    term = mp.power(half, n) / mp.factorial(n)
    acc = term * (psi_a + psi_b)
    k = 0
    tiny = mp.mpf(2) ** (-(mp.mp.prec + 8))
    while k < _MAX_TERMS:
        k += 1
        term = term * quarter / (k * (k + n))
        psi_a += mp.mpf(1) / k
        psi_b += mp.mpf(1) / (k + n)
        inc = term * (psi_a + psi_b)
        acc += inc
        if abs(inc) < tiny * abs(acc) and k > int(abs(x)) + 4:
            break
    else:
        raise ArithmeticError("series failed to converge")
    return finite + logpart + mp.power(-1, n) * acc / 2


def _y_series(order, x):
    """Y_nu via reflection (non-integer) or the digamma series (integer)."""
    nu = mp.mpf(order)
    x = mp.mpf(x)
    if not _is_integer(nu):
        return (_j_series(nu, x) * mp.cospi(nu) - _j_series(-nu, x)) / mp.sinpi(nu)
    n = int(nu)
    sign = mp.mpf(1)
    if n < 0:
        # Y_{-n} = (-1)^n Y_n
        n = -n
        sign = mp.power(-1, n)
    half = x / 2
    quarter = half * half
    finite = mp.mpf(0)
    for k in range(n):
        finite += mp.factorial(n - k - 1) / mp.factorial(k) * mp.power(quarter, k)
    finite = -finite / mp.pi * mp.power(half, -n)
    logpart = (2 / mp.pi) * mp.log(half) * _j_series(n, x)
    psi_a = mp.digamma(1)
    psi_b = mp.digamma(n + 1)
    term = mp.power(half, n) / mp.factorial(n)
    acc = term * (psi_a + psi_b)
    k = 0
    tiny = mp.mpf(2) ** (-(mp.mp.prec + 8))
    while k < _MAX_TERMS:
        k += 1
        term = term * (-quarter) / (k * (k + n))
        psi_a += mp.mpf(1) / k
        psi_b += mp.mpf(1) / (k + n)
        inc = term * (psi_a + psi_b)
        acc += inc
        if abs(inc) < tiny * abs(acc) and k > int(abs(x)) + 4:
            break
    else:
        raise ArithmeticError("series failed to converge")
    return sign * (finite + logpart - acc / mp.pi)


def _h_series(kind, order, x):
    j = _j_series(order, x)
    y = _y_series(order, x)
    if kind == "H1":
        return j + 1j * y
    return j - 1j * y


# -- public entry point --


def _working_bits(precision, arg) -> int:
    # guard digits: series cancellation grows like exp(arg) for J/Y, and
    # the near-integer reflection formulas lose log10|sin(pi nu)| digits
    bits = int(mp.ceil(-mp.log(precision, 2))) if precision < 1 else 53
    return max(96, bits + 48 + int(2 * arg))


def bessel_eval(kind: str, order, arg, precision=None) -> ComplexValue:
    """Evaluate K/H1/H2 at real order in (-2, 2) and positive real argument.

    `precision` is the target relative error (default 1e-25).  The primary
    method per kind follows the module docstring (quadrature for K, series
    for H1/H2); the other route is always computed as a cross-check and the
    disagreement is folded into err_estimate.  If the certified relative
    error exceeds the target, PrecisionError carries the achieved bound.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    if precision is None:
        precision = mp.mpf("1e-25")
    precision = mp.mpf(precision)
    # provisional low-precision reads only size the guard bits; the real
    # conversion happens inside the working-precision block so decimal
    # strings and Fractions keep their full value
    arg_rough = abs(float(mp.mpmathify(arg)))
    bits = _working_bits(precision, arg_rough)
    with mp.workprec(bits):
        order_f = mp.mpmathify(order)
        arg_f = mp.mpmathify(arg)
        if isinstance(order_f, mp.mpc) or isinstance(arg_f, mp.mpc):
            raise ValueError("order and argument must be real")
        if not abs(order_f) < ORDER_LIMIT:
            raise ValueError(
                f"order {order} outside the supported window (-2, 2)"
            )
        if not arg_f > 0:
            raise ValueError("argument must be a positive real")
        eps_work = mp.mpf(2) ** (-(bits - 24))
        if kind == "K":
            scale_guess = mp.exp(-arg_f) + mp.power(arg_f / 2, -abs(order_f))
            primary, p_err = _k_quadrature(order_f, arg_f, eps_work * scale_guess)
            secondary = _k_series(order_f, arg_f)
            value = mp.mpc(primary)
        else:
            value = mp.mpc(_h_series(kind, order_f, arg_f))
            p_err = eps_work * abs(value)
            secondary, _ = _h_quadrature(kind, order_f, arg_f, eps_work * abs(value))
        disagreement = abs(value - secondary)
        err = p_err + disagreement + mp.mpf(2) ** (-(bits - 8)) * abs(value)
        result = ComplexValue(re=+value.real, im=+value.imag, err_estimate=+err)
        rel = result.rel_err()
        if rel > precision:
            raise PrecisionError(
                f"{kind}(order={order}, arg={arg}): certified relative error "
                f"{mp.nstr(rel, 5)} misses the target {mp.nstr(precision, 5)}",
                achieved=rel,
            )
    return result
