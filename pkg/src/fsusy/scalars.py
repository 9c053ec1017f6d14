"""Exact scalar arithmetic for the root-of-unity engine.

Scalars live in the ring  Q(zeta)[c]/(c^p - r) (x) Q[s, 1/s],  where zeta is
a primitive 4p-th root of unity (p an odd prime), r is a nonzero rational,
c is a formal p-th root of r, and s is a formal square root of pi.  Inside
Q(zeta) sit the constants everything downstream needs:

    q   = zeta^4            a primitive p-th root of unity
    i   = zeta^p            the imaginary unit
    q^(1/2) = q^((p+1)/2)   the canonical square root of q

Elements are stored as dicts mapping (c_power, sqrtpi_power) to coefficient
vectors over the power basis 1, x, ..., x^(2(p-1)-1) of Q(zeta), with x
standing for zeta and arithmetic done modulo the 4p-th cyclotomic
polynomial.  Coefficients are fractions.Fraction throughout; nothing in
this module ever rounds.

Inversion is supported for any element that is a single power of sqrt(pi)
times a unit of Q(zeta)[c]/(c^p - r).  When r is a p-th power in Q the c
extension is not a domain and honest zero divisors exist; attempting to
invert one raises ZeroDivisionError.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath as mp

_ZERO = Fraction(0)
_ONE = Fraction(1)


def is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


# -- dense polynomial helpers over Q (low degree first) ----------------------

def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a, b):
    out = [_ZERO] * (len(a) + len(b) - 1)
    for j, aj in enumerate(a):
        if aj:
            for k, bk in enumerate(b):
                if bk:
                    out[j + k] += aj * bk
    return out


def _poly_divmod(num, den):
    """Quotient and remainder over Q."""
    num = [Fraction(x) for x in num]
    den = _poly_trim(Fraction(x) for x in den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    if len(num) < len(den):
        return [], _poly_trim(num)
    quot = [_ZERO] * (len(num) - len(den) + 1)
    lead = den[-1]
    for j in range(len(num) - len(den), -1, -1):
        c = num[j + len(den) - 1] / lead
        if c:
            quot[j] = c
            for k, dk in enumerate(den):
                num[j + k] -= c * dk
    return _poly_trim(quot), _poly_trim(num)


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple:
    """Coefficients of the n-th cyclotomic polynomial.

    Built the slow honest way: divide x^n - 1 by every lower-order
    cyclotomic whose order divides n.  Exact over Q, monic, integral.
    """
    num = [_ZERO] * (n + 1)
    num[0], num[n] = Fraction(-1), _ONE
    num = _poly_trim(num)
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic(d))
            if rem:
                raise ArithmeticError(f"cyclotomic tower broke at {n}/{d}")
    return tuple(num)


class FieldScalar:
    """One element of the scalar ring.  Immutable; arithmetic returns new
    objects.  Do not construct directly, use the FieldContext factories."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = terms  # {(c_pow, sqrtpi_pow): coeff tuple}, no zero vectors

    # -- ring structure --

    def __add__(self, other):
        ctx = self.ctx
        ctx._check(other)
        out = dict(self.terms)
        for key, vec in other.terms.items():
            cur = out.get(key)
            if cur is None:
                out[key] = vec
            else:
                merged = tuple(a + b for a, b in zip(cur, vec))
                if any(merged):
                    out[key] = merged
                else:
                    del out[key]
        return FieldScalar(ctx, out)

    def __neg__(self):
        return FieldScalar(self.ctx, {k: tuple(-c for c in v) for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        ctx = self.ctx
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if not f:
                return ctx._zero
            return FieldScalar(ctx, {k: tuple(c * f for c in v) for k, v in self.terms.items()})
        ctx._check(other)
        if other is ctx._one:
            return self
        if self is ctx._one:
            return other
        p = ctx.p
        out = {}
        for (c1, s1), v1 in self.terms.items():
            for (c2, s2), v2 in other.terms.items():
                vec = ctx._vmul(v1, v2)
                cpow = c1 + c2
                if cpow >= p:  # fold c^p = r back into the rationals
                    cpow -= p
                    vec = tuple(ctx.r * x for x in vec)
                key = (cpow, s1 + s2)
                cur = out.get(key)
                if cur is None:
                    out[key] = vec
                else:
                    out[key] = tuple(a + b for a, b in zip(cur, vec))
        return FieldScalar(ctx, {k: v for k, v in out.items() if any(v)})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        acc = self.ctx.one()
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * self.ctx.from_fraction(Fraction(1, 1) / Fraction(other))
        return self * other.invert()

    def __eq__(self, other):
        if isinstance(other, int):  # only 0 and 1 make sense unlifted
            other = self.ctx.from_fraction(other)
        if not isinstance(other, FieldScalar):
            return NotImplemented
        return self.ctx.key == other.ctx.key and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- star structure and valuation helpers --

    def conjugate(self):
        """The * involution: zeta -> zeta^(-1) (so q -> 1/q, i -> -i),
        while c and sqrt(pi) are fixed."""
        ctx = self.ctx
        return FieldScalar(ctx, {k: ctx._vconj(v) for k, v in self.terms.items()})

    def invert(self):
        ctx = self.ctx
        if not self.terms:
            raise ZeroDivisionError("inverting zero")
        spows = {k[1] for k in self.terms}
        if len(spows) != 1:
            raise ZeroDivisionError("mixed sqrt(pi) powers are not invertible")
        spow = spows.pop()
        body = FieldScalar(ctx, {(c, 0): v for (c, _), v in self.terms.items()})
        cpows = {k[0] for k in body.terms}
        if cpows == {0}:
            inv_vec = ctx._vinv(body.terms[(0, 0)])
            return FieldScalar(ctx, {(0, -spow): inv_vec})
        # norm trick over the automorphisms c -> q^k c, which fix Q(zeta)
        cof = ctx.one()
        for k in range(1, ctx.p):
            twisted = {}
            for (c, _), v in body.terms.items():
                qe = ctx._zeta_pow[(4 * k * c) % (4 * ctx.p)]
                twisted[(c, 0)] = ctx._vmul(v, qe)
            cof = cof * FieldScalar(ctx, {k2: v for k2, v in twisted.items() if any(v)})
        norm = body * cof
        bad = [k for k in norm.terms if k[0] != 0]
        if bad:
            raise ArithmeticError("norm failed to land in Q(zeta)")
        if not norm.terms:
            raise ZeroDivisionError("zero divisor in the c extension")
        inv_vec = ctx._vinv(norm.terms[(0, 0)])
        out = cof * FieldScalar(ctx, {(0, 0): inv_vec})
        return FieldScalar(ctx, {(c, s - spow): v for (c, s), v in out.terms.items()})

    def is_rational(self) -> bool:
        if not self.terms:
            return True
        if set(self.terms) != {(0, 0)}:
            return False
        vec = self.terms[(0, 0)]
        return not any(vec[1:])

    def as_fraction(self) -> Fraction:
        if not self.terms:
            return _ZERO
        if not self.is_rational():
            raise ValueError("scalar is not rational")
        return self.terms[(0, 0)][0]

    # -- numerical embedding --

    def evaluate(self, prec: int = 128) -> mp.mpc:
        """Embed into C at working precision prec (bits): zeta -> exp(i pi/2p),
        c -> the real p-th root of r, sqrt(pi) -> sqrt(pi)."""
        ctx = self.ctx
        with mp.workprec(prec + 16):
            zeta = mp.expjpi(mp.mpf(1) / (2 * ctx.p))
            rnum = mp.mpf(ctx.r.numerator) / ctx.r.denominator
            croot = mp.sign(rnum) * mp.root(abs(rnum), ctx.p)
            spi = mp.sqrt(mp.pi)
            total = mp.mpc(0)
            for (cpow, spow), vec in self.terms.items():
                acc = mp.mpc(0)
                for j in range(ctx.deg - 1, -1, -1):
                    acc = acc * zeta
                    cj = vec[j]
                    if cj:
                        acc += mp.mpf(cj.numerator) / cj.denominator
                total += acc * croot ** cpow * spi ** spow
            result = +total
        return result

    # -- canonical form --

    def canonical(self):
        """JSON-ready deterministic form: sorted list of
        [c_pow, sqrtpi_pow, ["num/den", ...]] rows."""
        rows = []
        for (cpow, spow) in sorted(self.terms):
            vec = self.terms[(cpow, spow)]
            rows.append([cpow, spow, [f"{c.numerator}/{c.denominator}" for c in vec]])
        return rows

    def canonical_string(self) -> str:
        """Deterministic compact text form, stable across dict orderings."""
        if self.is_zero():
            return "0"
        rows = []
        for (cpow, spow) in sorted(self.terms):
            vec = self.terms[(cpow, spow)]
            body = ",".join(str(c) for c in vec)
            rows.append(f"c{cpow}s{spow}:{body}")
        return ";".join(rows)

    def pretty(self) -> str:
        """Readable form.  Every unit in the cyclotomic root group is a power
        of q up to a factor of i and a sign, so most coefficients that occur
        in practice print as things like 'q^2', '-i*q', '1/2'; single terms
        in the root-scale and sqrt-pi sectors carry 'c' and 'sqrtpi' markers.
        Anything richer falls back to the canonical string."""
        if self.is_zero():
            return "0"
        if self.is_rational():
            return str(self.as_fraction())
        if len(self.terms) == 1:
            ctx = self.ctx
            ((cpow, spow), vec), = self.terms.items()
            base = FieldScalar(ctx, {(0, 0): vec})
            marks = [
                m
                for m in (
                    "" if not cpow else ("c" if cpow == 1 else f"c^{cpow}"),
                    "" if not spow else ("sqrtpi" if spow == 1 else f"sqrtpi^{spow}"),
                )
                if m
            ]
            for imag in (False, True):
                probe = base * ctx.zeta(-ctx.p) if imag else base
                for mpow in range(ctx.p):
                    t = probe * ctx.q(-mpow)
                    if t.is_rational():
                        c = t.as_fraction()
                        qpart = "" if mpow == 0 else ("q" if mpow == 1 else f"q^{mpow}")
                        parts = [x for x in ("i" if imag else "", qpart, *marks) if x]
                        if not parts:
                            return str(c)
                        head = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                        return head + "*".join(parts)
        return self.canonical_string()

    def __str__(self):
        return self.pretty()

    __repr__ = __str__


class FieldContext:
    """Shared arithmetic state for one (p, r).  Builds the cyclotomic
    reduction tables once and hands out scalars."""

    def __init__(self, p: int, r=1):
        if not is_odd_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        self.p = p
        self.r = Fraction(r)
        if self.r == 0:
            raise ValueError("r must be nonzero")
        self.key = (p, self.r)
        phi = cyclotomic(4 * p)
        self.deg = len(phi) - 1
        assert self.deg == 2 * (p - 1)
        self.phi = phi
        d = self.deg
        # x^j mod phi for j in [d, 2d-2], used to fold products back down
        base = tuple(-c for c in phi[:d])
        rows = [base]
        cur = list(base)
        for _ in range(d + 1, 2 * d - 1):
            top = cur[-1]
            cur = [_ZERO] + cur[:-1]
            if top:
                cur = [a + top * b for a, b in zip(cur, base)]
            rows.append(tuple(cur))
        self._red = rows
        # zeta^j for j in [0, 4p)
        zp = []
        vec = [_ZERO] * d
        vec[0] = _ONE
        for _ in range(4 * p):
            zp.append(tuple(vec))
            top = vec[-1]
            vec = [_ZERO] + vec[:-1]
            if top:
                vec = [a + top * b for a, b in zip(vec, base)]
        self._zeta_pow = zp
        # conjugation matrix: x^t -> x^(-t mod 4p)
        self._conj_rows = [zp[(4 * p - t) % (4 * p)] for t in range(d)]
        self._zero = FieldScalar(self, {})
        self._zeta_scalar = tuple(
            FieldScalar(self, {(0, 0): self._zeta_pow[j]}) for j in range(4 * p)
        )
        self._one = self.zeta(0)
        self._qint_cache = {}
        self._qfact_cache = {0: self._one}

    def _check(self, other):
        if not isinstance(other, FieldScalar) or other.ctx.key != self.key:
            raise TypeError("scalar from a different field context")

    # -- base-field vector ops --

    def _vmul(self, u, v):
        d = self.deg
        acc = [_ZERO] * (2 * d - 1)
        for a, ua in enumerate(u):
            if ua:
                for b, vb in enumerate(v):
                    if vb:
                        acc[a + b] += ua * vb
        for j in range(2 * d - 2, d - 1, -1):
            cj = acc[j]
            if cj:
                row = self._red[j - d]
                for t in range(d):
                    if row[t]:
                        acc[t] += cj * row[t]
        return tuple(acc[:d])

    def _vconj(self, u):
        d = self.deg
        acc = [_ZERO] * d
        for t, ut in enumerate(u):
            if ut:
                row = self._conj_rows[t]
                for j in range(d):
                    if row[j]:
                        acc[j] += ut * row[j]
        return tuple(acc)

    def _vinv(self, u):
        """Inverse of u in Q[x]/phi by the extended Euclid algorithm."""
        r0, r1 = list(self.phi), _poly_trim(u)
        if not r1:
            raise ZeroDivisionError("inverting zero in Q(zeta)")
        t0, t1 = [], [_ONE]
        while len(r1) > 1:
            q, r2 = _poly_divmod(r0, r1)
            prod = _poly_mul(q, t1) if q and t1 else []
            width = max(len(t0), len(prod))
            t2 = _poly_trim(
                [
                    (t0[j] if j < len(t0) else _ZERO) - (prod[j] if j < len(prod) else _ZERO)
                    for j in range(width)
                ]
            )
            r0, r1, t0, t1 = r1, r2, t1, t2
        if not r1:
            raise ArithmeticError("phi is not coprime to the input")
        c = r1[0]
        out = [x / c for x in t1]
        out += [_ZERO] * (self.deg - len(out))
        return tuple(out[: self.deg])

    # -- scalar factories --

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def from_fraction(self, a):
        a = Fraction(a)
        if a == 0:
            return self._zero
        vec = (a,) + (_ZERO,) * (self.deg - 1)
        return FieldScalar(self, {(0, 0): vec})

    def zeta(self, j: int = 1):
        return self._zeta_scalar[j % (4 * self.p)]

    def q(self, n: int = 1):
        """q^n with q = zeta^4."""
        return self.zeta(4 * n)

    def i(self):
        return self.zeta(self.p)

    def sqrt_q(self, n: int = 1):
        """The canonical square root q^((p+1)/2), raised to the n-th power."""
        return self.q(n * (self.p + 1) // 2)

    def c_hat(self, n: int = 1):
        """c^n, with c^p = r folded down so the stored power sits in [0, p)."""
        fold, rem = divmod(n, self.p)
        scale = self.r ** fold
        vec = tuple(scale * c for c in self._zeta_pow[0])
        return FieldScalar(self, {(rem, 0): vec})

    def sqrt_pi(self, n: int = 1):
        return FieldScalar(self, {(0, n): self._zeta_pow[0]})

    # -- q-combinatorics (all inside Q(zeta), cached) --

    def qint(self, n: int):
        """[n] = (q^n - q^-n)/(q - q^-1), expanded as a balanced power sum."""
        if n < 0:
            return -self.qint(-n)
        got = self._qint_cache.get(n)
        if got is None:
            got = self._zero
            for t in range(n):
                got = got + self.q(n - 1 - 2 * t)
            self._qint_cache[n] = got
        return got

    def qfact(self, n: int):
        got = self._qfact_cache.get(n)
        if got is None:
            got = self.qfact(n - 1) * self.qint(n)
            self._qfact_cache[n] = got
        return got

    def qbinom_qminus2(self, a: int, b: int):
        """Gauss binomial in the variable q^-2 written on the balanced basis:
        q^(-b(a-b)) [a]! / ([b]! [a-b]!).  Defined for 0 <= a < p; at a >= p
        the factorials vanish and the quotient stops meaning anything."""
        if a >= self.p:
            raise ValueError("q-binomial undefined at or above p")
        if b < 0 or b > a:
            return self._zero
        num = self.qfact(a) * self.q(-b * (a - b))
        return num / (self.qfact(b) * self.qfact(a - b))

    def qbinom_qplus2(self, a: int, b: int):
        if a >= self.p:
            raise ValueError("q-binomial undefined at or above p")
        if b < 0 or b > a:
            return self._zero
        num = self.qfact(a) * self.q(b * (a - b))
        return num / (self.qfact(b) * self.qfact(a - b))
