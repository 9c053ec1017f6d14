"""The dual pairing between the enveloping side and the function side.

On ordered basis monomials the pairing is diagonal up to the grading index:

    < p+^n p-^m k^k P+^t P-^s H^l ,  e+^n' e-^m' zeta(k') z+^t' z-^s' L^l'' exp(u L) >
      = delta_{nn'} delta_{mm'} delta_{tt'} delta_{ss'} [l'' <= l]
        * i^{n+m+t+s} * qs^{n-m} * q^{-nm} * t! s! [n]! [m]!
        * i^l * (l!/(l-l'')!) * u^{l-l''}
        * [k' == k+n+m mod p]

where qs is a square root of q.  Three discrete choices are not fixed by the
formula alone: which tensor leg of a coproduct pairs with the left factor of
a product, the sign of qs, and the relative sign h of the boost commutators
on the enveloping side.  All three are determined empirically on generator
probes at context construction and frozen; see determine_convention.

From the pairing come the commuting left and right realizations on the
function algebra,

    R(phi) X = <phi, X_(1)> X_(2)        L(phi) X = X_(1) <phi, X_(2)>

(R is an anti-homomorphism, L a homomorphism), the closed-form conformance
checks, the invariant integral on the nilpotent sector, and the Gaussian
half-weight sector carrying the hermitian form used for the adjointness
checks.
"""

from __future__ import annotations

import itertools
import math
import random as _random
from dataclasses import dataclass
from fractions import Fraction

from .afalg import AAlgebra, AElement, random_a_element
from .report import NumericReport
from .scalars import FieldContext, FieldScalar
from .ufalg import GEN_NAMES, UAlgebra, UElement, random_u_element


@dataclass(frozen=True)
class PairingConvention:
    """The empirically fixed discrete choices.

    left_first:  True if <xy, a> = <x, a_(1)> <y, a_(2)>.
    sqrt_q_sign: qs = sqrt_q_sign * q^((p+1)/2).
    h:           boost commutator sign on the enveloping side.
    """

    left_first: bool
    sqrt_q_sign: int
    h: int

    def describe(self) -> str:
        leg = "left factor pairs first leg" if self.left_first else "left factor pairs second leg"
        return f"{leg}; sqrt_q = {self.sqrt_q_sign:+d} * q^((p+1)/2); h = {self.h:+d}"


class ConventionError(RuntimeError):
    pass


class DualityContext:
    """Pairing, actions and integrals for one scalar context.

    The convention is determined once per construction (or injected, for
    tests that want to watch the wrong ones fail)."""

    def __init__(self, ctx: FieldContext, convention: PairingConvention | None = None):
        self.ctx = ctx
        if convention is None:
            convention = determine_convention(ctx)
        self.convention = convention
        self.ualg = UAlgebra(ctx, h=convention.h)
        self.aalg = AAlgebra(ctx)
        self._sqrt_q = ctx.sqrt_q(1) * Fraction(convention.sqrt_q_sign)
        self._pair_cache = {}
        self._qfact_pair = {}

    # -- the pairing --

    def _pair_mono(self, u, a) -> FieldScalar:
        ctx = self.ctx
        n, m, k, t, s, l = u
        n2, m2, k2, t2, s2, l2, mu = a
        if n != n2 or m != m2 or t != t2 or s != s2 or l2 > l:
            return ctx._zero
        if l > l2 and mu == 0:
            return ctx._zero
        key = (u, a)
        got = self._pair_cache.get(key)
        if got is not None:
            return got
        p = ctx.p
        kk = (k + n + m) % p
        # i^(n+m+t+s+l) qs^(n-m) q^(k2 kk - nm) as one root-of-unity power
        w = p * (n + m + t + s + l) + 4 * ((n - m) * ((p + 1) // 2) + k2 * kk - n * m)
        frac = Fraction(
            math.factorial(t) * math.factorial(s) * math.factorial(l),
            math.factorial(l - l2),
        ) * mu ** (l - l2)
        if self.convention.sqrt_q_sign < 0 and (n - m) % 2:
            frac = -frac
        val = ctx.zeta(w) * frac
        if n > 1 or m > 1:
            qf = self._qfact_pair.get((n, m))
            if qf is None:
                qf = ctx.qfact(n) * ctx.qfact(m)
                self._qfact_pair[(n, m)] = qf
            val = val * qf
        self._pair_cache[key] = val
        return val

    def pair(self, x: UElement, a: AElement) -> FieldScalar:
        """Bilinear extension of the basis pairing."""
        acc = self.ctx.zero()
        for um, uc in x.terms.items():
            for am, ac in a.terms.items():
                v = self._pair_mono(um, am)
                if v:
                    acc = acc + uc * ac * v
        return acc

    def pair_tensor(self, x: UElement, y: UElement, ta) -> FieldScalar:
        """<x (x) y, ta> for a two-leg tensor on the function side, with the
        leg order given by the convention."""
        acc = self.ctx.zero()
        first, second = (x, y) if self.convention.left_first else (y, x)
        for (a1, a2), c in ta.terms.items():
            v1 = self._pair_mono_phi(first, a1)
            if not v1:
                continue
            v2 = self._pair_mono_phi(second, a2)
            if not v2:
                continue
            acc = acc + c * v1 * v2
        return acc

    # -- actions --

    def right_act(self, phi: UElement, x: AElement) -> AElement:
        """R(phi) x = <phi, x_(1)> x_(2): an anti-homomorphism in phi."""
        return self._act(phi, x, 0 if self.convention.left_first else 1)

    def left_act(self, phi: UElement, x: AElement) -> AElement:
        """L(phi) x = x_(1) <phi, x_(2)>: a homomorphism in phi."""
        return self._act(phi, x, 1 if self.convention.left_first else 0)

    def _act(self, phi: UElement, x: AElement, leg: int) -> AElement:
        out = {}
        keep = 1 - leg
        for mon, c in x.terms.items():
            for key, f in self.aalg._coproduct_mono(mon).terms.items():
                v = self._pair_mono_phi(phi, key[leg])
                if not v:
                    continue
                v = c * f * v
                tgt = key[keep]
                cur = out.get(tgt)
                s = v if cur is None else cur + v
                if s:
                    out[tgt] = s
                elif cur is not None:
                    del out[tgt]
        return AElement(self.aalg, out)

    def _pair_mono_phi(self, phi: UElement, amono) -> FieldScalar:
        acc = self.ctx.zero()
        for um, uc in phi.terms.items():
            v = self._pair_mono(um, amono)
            if v:
                acc = acc + uc * v
        return acc

    # -- closed-form right action (the conformance target) --

    def closed_right_act(self, gen: str, x: AElement, canonical_sqrt: bool = False) -> AElement:
        """The printed closed forms for R on the lambda-free symbolic sector,
        applied factor by factor through the twisted Leibniz rule.  With
        canonical_sqrt the textbook square root q^((p+1)/2) is used instead
        of the empirically signed one, so the conformance ratio becomes
        visible instead of being absorbed."""
        qs = self.ctx.sqrt_q(1) if canonical_sqrt else self._sqrt_q
        out = self.aalg.zero()
        for mon, c in x.terms.items():
            if mon[5] != 0 or mon[6] != 0:
                raise ValueError("closed forms cover the lambda-free sector only")
            out = out + self._closed_mono(gen, mon, qs) * c
        return out

    def _closed_mono(self, gen: str, mon, qs) -> AElement:
        ctx = self.ctx
        p = ctx.p
        aal = self.aalg
        n, m, k, t, s, _l, _mu = mon
        base = AElement(aal, {mon: ctx.one()})
        if gen == "k":
            return base * ctx.q(n - m + k)
        if gen == "k^-1":
            return base * ctx.q(m - n - k)
        if gen == "H":
            grade = Fraction(n - m, p) + (t - s)
            return base * (ctx.i() * grade)
        if gen == "P+":
            if t == 0:
                return aal.zero()
            return aal.monomial(n, m, k, t - 1, s, coeff=ctx.i() * t)
        if gen == "P-":
            if s == 0:
                return aal.zero()
            return aal.monomial(n, m, k, t, s - 1, coeff=ctx.i() * s)
        if gen == "p+":
            out = aal.zero()
            if n:
                out = out + aal.monomial(
                    n - 1, m, k, t, s, coeff=ctx.i() * qs * ctx.qfact(n) / ctx.qfact(n - 1) * ctx.q(k - m)
                )
            elif t:
                top = ctx.i() * qs * aal.kappa0 / ctx.qfact(p - 1) * ctx.q(k - m) * t
                out = out + aal.monomial(p - 1, m, k, t - 1, s, coeff=top)
            return out
        if gen == "p-":
            out = aal.zero()
            qsm = qs.invert()
            if m:
                out = out + aal.monomial(
                    n, m - 1, k, t, s, coeff=ctx.i() * qsm * ctx.qfact(m) / ctx.qfact(m - 1) * ctx.q(k - n)
                )
            elif s:
                top = ctx.i() * qsm * aal.kappa0 / ctx.qfact(p - 1) * ctx.q(k - n) * s
                out = out + aal.monomial(n, p - 1, k, t, s - 1, coeff=top)
            return out
        raise ValueError(f"no closed form for generator {gen!r}")

    # -- invariant integral on the nilpotent sector --

    def grassmann_integral(self, x: AElement) -> FieldScalar:
        """The invariant integral: q^{-1} times the coefficient of the top
        monomial e+^{p-1} e-^{p-1}, zero elsewhere on the nilpotent sector."""
        p = self.ctx.p
        acc = self.ctx.zero()
        for (n, m, k, t, s, l, mu), c in x.terms.items():
            if t or s or l or mu:
                raise ValueError("integrand outside the nilpotent sector")
            if n == m == p - 1 and k == 0:
                acc = acc + c * self.ctx.q(-1)
        return acc

    def _lenient_integral_mono(self, mon) -> FieldScalar:
        # used only inside the invariance contraction, where coproduct legs
        # may carry group-like classical factors that integrate to zero
        n, m, k, t, s, l, mu = mon
        p = self.ctx.p
        if n == m == p - 1 and k == 0 and t == s == l == 0 and mu == 0:
            return self.ctx.q(-1)
        return self.ctx.zero()

    def integral_invariance(self, a: AElement):
        """Both one-sided invariance contractions of the integral on a.
        Returns (left_side, right_side) where left = (id (x) I) Delta(a) and
        right = (I (x) id) Delta(a), both as elements to compare to I(a) 1."""
        cop = a.coproduct()
        left = self.aalg.zero()
        right = self.aalg.zero()
        for (a1, a2), c in cop.terms.items():
            v = self._lenient_integral_mono(a2)
            if v:
                left = left + AElement(self.aalg, {a1: c * v})
            w = self._lenient_integral_mono(a1)
            if w:
                right = right + AElement(self.aalg, {a2: c * w})
        return left, right


# -- convention determination -------------------------------------------------

def _probe_pass(ctx: FieldContext, left_first: bool, sqrt_sign: int, h: int) -> bool:
    conv = PairingConvention(left_first, sqrt_sign, h)
    dual = DualityContext(ctx, conv)
    ual, aal = dual.ualg, dual.aalg
    # group-like probe: <k, d^j> = q^j through the zeta decomposition
    for j in range(ctx.p):
        if dual.pair(ual.kappa(), aal.delta(j)) != ctx.q(j):
            return False
    # product/coproduct probe that separates the leg orientation
    for j in range(ctx.p):
        a = aal.eta_plus() * aal.delta(j)
        lhs = dual.pair(ual.kappa() * ual.p_plus(), a)
        rhs = dual.pair_tensor(ual.kappa(), ual.p_plus(), a.coproduct())
        if lhs != rhs:
            return False
    # fractional-to-classical splitting probe that pins the root sign
    for split in range(1, ctx.p):
        lhs = dual.pair(ual.p_plus() ** split * ual.p_plus() ** (ctx.p - split), aal.z_plus())
        if lhs != dual.pair(ual.P_plus(), aal.z_plus()):
            return False
        rhs = dual.pair_tensor(
            ual.p_plus() ** split,
            ual.p_plus() ** (ctx.p - split),
            aal.z_plus().coproduct(),
        )
        if lhs != rhs:
            return False
    # boost probe that pins h: <H p+, a> against the coproduct route
    a = aal.eta_plus() * aal.exp_lambda(Fraction(1, ctx.p))
    for x, y in ((ual.boost(), ual.p_plus()), (ual.p_plus(), ual.boost())):
        if dual.pair(x * y, a) != dual.pair_tensor(x, y, a.coproduct()):
            return False
    return True


_CONVENTION_CACHE: dict = {}


def determine_convention(ctx: FieldContext) -> PairingConvention:
    """Scan the eight discrete conventions against the generator probes.
    Exactly one must survive; anything else means the transcription broke."""
    got = _CONVENTION_CACHE.get(ctx.key)
    if got is not None:
        return got
    winners = []
    for left_first in (True, False):
        for sqrt_sign in (1, -1):
            for h in (1, -1):
                if _probe_pass(ctx, left_first, sqrt_sign, h):
                    winners.append(PairingConvention(left_first, sqrt_sign, h))
    if len(winners) != 1:
        raise ConventionError(f"probe scan found {len(winners)} consistent conventions")
    _CONVENTION_CACHE[ctx.key] = winners[0]
    return winners[0]


# -- the duality suite ---------------------------------------------------------

def _u_window(ual: UAlgebra, bound: int):
    p = ual.ctx.p
    rng_n = range(min(bound, p - 1) + 1)
    rng_k = range(min(bound, p - 1) + 1)
    rng_c = range(bound + 1)
    for n, m, k, t, s, l in itertools.product(rng_n, rng_n, rng_k, rng_c, rng_c, rng_c):
        yield (n, m, k, t, s, l)


def _matched_a_monos(dual: DualityContext, umono, mu_set, extra_l: int = 1):
    """Function-side basis monomials whose multidegree can pair with umono,
    with every grading index and a margin of lambda degrees."""
    n, m, _k, t, s, l = umono
    p = dual.ctx.p
    for k2 in range(p):
        for l2 in range(l + extra_l + 1):
            for mu in mu_set:
                yield (n, m, k2, t, s, l2, Fraction(mu))


def duality_suite(
    ctx: FieldContext,
    exponent_bound: int = 2,
    samples: int = 50,
    seed: int = 1,
    convention: PairingConvention | None = None,
) -> NumericReport:
    """Exact verification that the pairing is a Hopf pairing.

    Exhaustive over the bounded monomial window for the counit and antipode
    compatibilities; product and coproduct compatibilities run over the
    window against single generators (with pairing-matched partners on the
    other side), plus seeded random element triples.  Full bilinearity makes
    this spanning-set coverage equivalent to the identities on the bounded
    sector."""
    dual = DualityContext(ctx, convention)
    ual, aal = dual.ualg, dual.aalg
    rng = _random.Random(seed)
    rep = NumericReport(f"duality_suite p={ctx.p} bound={exponent_bound}")
    rep.measure("convention", dual.convention.describe())
    p = ctx.p
    mu_set = (0, Fraction(1, p), Fraction(-1, p), 1)

    u_monos = list(_u_window(ual, exponent_bound))
    a_monos = [
        (n, m, k, t, s, l, Fraction(mu))
        for n, m, k in itertools.product(
            range(min(exponent_bound, p - 1) + 1),
            range(min(exponent_bound, p - 1) + 1),
            range(min(exponent_bound, p - 1) + 1),
        )
        for t, s, l in itertools.product(*(range(exponent_bound + 1),) * 3)
        for mu in mu_set
    ]

    # counit compatibilities, exhaustive
    ok_u = all(
        dual.pair(UElement(ual, {um: ctx.one()}), aal.one())
        == UElement(ual, {um: ctx.one()}).counit()
        for um in u_monos
    )
    rep.check("pair_with_unit_a", ok_u)
    ok_a = all(
        dual.pair(ual.one(), AElement(aal, {am: ctx.one()}))
        == AElement(aal, {am: ctx.one()}).counit()
        for am in a_monos
    )
    rep.check("pair_with_unit_u", ok_a)

    # antipode compatibility <S(x), a> = <x, S(a)> on matched degrees
    bad = 0
    for um in u_monos:
        x = UElement(ual, {um: ctx.one()})
        sx = x.antipode()
        for am in _matched_a_monos(dual, um, mu_set):
            a = AElement(aal, {am: ctx.one()})
            if dual.pair(sx, a) != dual.pair(x, a.antipode()):
                bad += 1
    rep.check("antipode_compat", bad == 0, f"{bad} mismatches")

    # product rule <xy, a> = <x (x) y, Delta a> with generator second factors
    gens = [ual.generator(g) for g in GEN_NAMES]
    mu_small = (0, Fraction(1, p))
    bad = 0
    for um in u_monos:
        x = UElement(ual, {um: ctx.one()})
        for y in gens:
            xy = x * y
            seen = set()
            for xym in xy.terms:
                for am in _matched_a_monos(dual, xym, mu_small):
                    seen.add(am)
            for am in seen:
                a = AElement(aal, {am: ctx.one()})
                if dual.pair(xy, a) != dual.pair_tensor(x, y, a.coproduct()):
                    bad += 1
    rep.check("product_rule_gen", bad == 0, f"{bad} mismatches")

    # coproduct rule <x, ab> = sum <x_(1), a> <x_(2), b> with generator b
    a_gens = [
        aal.eta_plus(),
        aal.eta_minus(),
        aal.delta(),
        aal.z_plus(),
        aal.z_minus(),
        aal.lam(),
        aal.exp_lambda(Fraction(1, p)),
    ]
    small_a = [am for am in a_monos if am[3] + am[4] + am[5] <= max(1, exponent_bound - 1)]
    bad = 0
    for am in small_a:
        a = AElement(aal, {am: ctx.one()})
        for b in a_gens:
            ab = a * b
            if ab.is_zero():
                continue
            for um in set(
                itertools.chain.from_iterable(
                    _matched_u_monos(dual, abm, exponent_bound) for abm in ab.terms
                )
            ):
                x = UElement(ual, {um: ctx.one()})
                lhs = dual.pair(x, ab)
                rhs = _pair_cop_x(dual, x, a, b)
                if lhs != rhs:
                    bad += 1
    rep.check("coproduct_rule_gen", bad == 0, f"{bad} mismatches")

    # random element triples, both rules
    bad_p = bad_c = 0
    for _ in range(samples):
        x = random_u_element(ual, rng, degree=3)
        y = random_u_element(ual, rng, degree=3)
        a = random_a_element(aal, rng, degree=3)
        if dual.pair(x * y, a) != dual.pair_tensor(x, y, a.coproduct()):
            bad_p += 1
        b = random_a_element(aal, rng, degree=2)
        if dual.pair(x, a * b) != _pair_cop_x(dual, x, a, b):
            bad_c += 1
    rep.check("product_rule_random", bad_p == 0, f"{bad_p} mismatches")
    rep.check("coproduct_rule_random", bad_c == 0, f"{bad_c} mismatches")

    # star compatibility variants: evaluated and reported, never asserted
    variants = {"<x*,a> == conj<x, S(a)*>": 0, "<x*,a> == conj<x, a*>": 0, "total": 0}
    for um in u_monos[:: max(1, len(u_monos) // 60)]:
        x = UElement(ual, {um: ctx.one()})
        xs = x.star()
        for am in _matched_a_monos(dual, um, (0, Fraction(1, p))):
            a = AElement(aal, {am: ctx.one()})
            lhs = dual.pair(xs, a)
            variants["total"] += 1
            if lhs == dual.pair(x, a.antipode().star()).conjugate():
                variants["<x*,a> == conj<x, S(a)*>"] += 1
            if lhs == dual.pair(x, a.star()).conjugate():
                variants["<x*,a> == conj<x, a*>"] += 1
    for label, hits in variants.items():
        if label != "total":
            rep.measure(f"star_variant[{label}]", f"{hits}/{variants['total']}")
    return rep


def _matched_u_monos(dual: DualityContext, amono, bound: int):
    n, m, _k, t, s, l, _mu = amono
    p = dual.ctx.p
    if n >= p or m >= p:
        return
    for k in range(p):
        for ll in range(l, l + bound + 1):
            yield (n, m, k, t, s, ll)


def _pair_cop_x(dual: DualityContext, x: UElement, a: AElement, b: AElement) -> FieldScalar:
    ctx = dual.ctx
    acc = ctx.zero()
    legs = (0, 1) if dual.convention.left_first else (1, 0)
    for key, c in x.coproduct().terms.items():
        v1 = dual.pair(UElement(dual.ualg, {key[legs[0]]: ctx.one()}), a)
        if not v1:
            continue
        v2 = dual.pair(UElement(dual.ualg, {key[legs[1]]: ctx.one()}), b)
        if v2:
            acc = acc + c * v1 * v2
    return acc


# -- conformance of the printed closed forms -----------------------------------

def default_conformance_monomials(dual: DualityContext, zbound: int = 2):
    p = dual.ctx.p
    out = []
    for n, m in itertools.product(range(p), range(p)):
        for k in range(2):
            for t, s in itertools.product(range(zbound + 1), range(zbound + 1)):
                if n + m + t + s == 0 and k == 0:
                    continue
                out.append((n, m, k, t, s, 0, Fraction(0)))
    return out


def reo_conformance(
    ctx: FieldContext,
    monomial_set=None,
    convention: PairingConvention | None = None,
) -> NumericReport:
    """Compare the duality-derived right action against the printed closed
    forms.  Classical generators must match exactly.  For the fractional
    generators the closed form is evaluated with the canonical square root;
    the ratio against the duality route must be one monomial-independent
    unit, which is recorded (it is the visible face of the root-sign
    convention)."""
    dual = DualityContext(ctx, convention)
    aal = dual.aalg
    rep = NumericReport(f"reo_conformance p={ctx.p}")
    rep.measure("convention", dual.convention.describe())
    if monomial_set is None:
        monomial_set = default_conformance_monomials(dual)

    for gen in ("k", "H", "P+", "P-"):
        bad = 0
        for mon in monomial_set:
            x = AElement(aal, {mon: ctx.one()})
            if dual.closed_right_act(gen, x) != dual.right_act(dual.ualg.generator(gen), x):
                bad += 1
        rep.check(f"classical_exact[{gen}]", bad == 0, f"{bad} mismatches")

    for gen in ("p+", "p-"):
        ratios = []
        bad = 0
        for mon in monomial_set:
            x = AElement(aal, {mon: ctx.one()})
            truth = dual.right_act(dual.ualg.generator(gen), x)
            closed = dual.closed_right_act(gen, x, canonical_sqrt=True)
            if truth.is_zero() and closed.is_zero():
                continue
            if truth.is_zero() != closed.is_zero() or set(truth.terms) != set(closed.terms):
                bad += 1
                continue
            mons = sorted(truth.terms)
            first = closed.terms[mons[0]] / truth.terms[mons[0]]
            if any(closed.terms[mm] / truth.terms[mm] != first for mm in mons[1:]):
                bad += 1
                continue
            if not any(first == r for r in ratios):
                ratios.append(first)
        rep.check(f"support_match[{gen}]", bad == 0, f"{bad} mismatches")
        rep.check(f"single_unit_ratio[{gen}]", len(ratios) == 1, f"{len(ratios)} ratios")
        if len(ratios) == 1:
            unit = ratios[0]
            rep.check(f"ratio_is_unit[{gen}]", unit * unit.conjugate() == ctx.one())
            rep.measure(f"ratio[{gen}]", unit.pretty())
    return rep


# -- fractional root and Leibniz checks ----------------------------------------

def fractional_root_suite(
    ctx: FieldContext,
    degree_bound: int = 4,
    convention: PairingConvention | None = None,
) -> NumericReport:
    """R(p_pm)^p = R(P_pm) on every symbolic monomial of bounded degree, plus
    Casimir commutation and the twisted Leibniz rules on random pairs."""
    dual = DualityContext(ctx, convention)
    ual, aal = dual.ualg, dual.aalg
    rep = NumericReport(f"fractional_root p={ctx.p} degree<={degree_bound}")
    p = ctx.p
    monos = []
    for n, m in itertools.product(range(min(degree_bound, p - 1) + 1), repeat=2):
        for k in range(2):
            for t, s, l in itertools.product(range(degree_bound + 1), repeat=3):
                if n + m + t + s + l <= degree_bound:
                    for mu in (0, Fraction(1, p)):
                        monos.append((n, m, k, t, s, l, Fraction(mu)))

    for gen, target in (("p+", "P+"), ("p-", "P-")):
        g = ual.generator(gen)
        big = ual.generator(target)
        bad = 0
        for mon in monos:
            x = AElement(aal, {mon: ctx.one()})
            acc = x
            for _ in range(p):
                acc = dual.right_act(g, acc)
            if acc != dual.right_act(big, x):
                bad += 1
        rep.check(f"root[{gen}]^p == R[{target}]", bad == 0, f"{bad} mismatches")

    cas = ual.casimir()
    bad = 0
    for gname in GEN_NAMES:
        g = ual.generator(gname)
        for mon in monos[:: max(1, len(monos) // 40)]:
            x = AElement(aal, {mon: ctx.one()})
            if dual.right_act(g, dual.right_act(cas, x)) != dual.right_act(
                cas, dual.right_act(g, x)
            ):
                bad += 1
    rep.check("casimir_commutes", bad == 0, f"{bad} mismatches")

    rng = _random.Random(7)
    kap, kinv = ual.kappa(), ual.kappa(-1)
    bad_p = bad_k = bad_h = 0
    for _ in range(25):
        x = random_a_element(aal, rng, 2)
        y = random_a_element(aal, rng, 2)
        for g, sign in ((ual.p_plus(), 1), (ual.p_minus(), -1)):
            lhs = dual.right_act(g, x * y)
            rhs = dual.right_act(g, x) * dual.right_act(kap, y) + dual.right_act(
                kinv, x
            ) * dual.right_act(g, y)
            if lhs != rhs:
                bad_p += 1
        if dual.right_act(kap, x * y) != dual.right_act(kap, x) * dual.right_act(kap, y):
            bad_k += 1
        H = ual.boost()
        if dual.right_act(H, x * y) != dual.right_act(H, x) * y + x * dual.right_act(H, y):
            bad_h += 1
    rep.check("leibniz_fractional", bad_p == 0, f"{bad_p} mismatches")
    rep.check("leibniz_kappa", bad_k == 0)
    rep.check("leibniz_boost", bad_h == 0)

    # the two realizations commute: L(g) R(g') = R(g') L(g)
    bad = 0
    for _ in range(10):
        x = random_a_element(aal, rng, 2)
        for g1 in (ual.p_plus(), ual.boost(), ual.kappa()):
            for g2 in (ual.p_minus(), ual.P_plus()):
                if dual.left_act(g1, dual.right_act(g2, x)) != dual.right_act(
                    g2, dual.left_act(g1, x)
                ):
                    bad += 1
    rep.check("left_right_commute", bad == 0, f"{bad} mismatches")
    return rep


# -- Gaussian half-weight sector -----------------------------------------------

class GaussianElement:
    """Nilpotent coordinates times z-polynomials, each term silently carrying
    one factor of exp(-(z+^2 + z-^2)/2).  Products of two such carry the full
    Gaussian, which is what the classical integral is defined on; keeping a
    half weight per element is what makes all moments land in Q(zeta) sqrt(pi)
    powers instead of needing sqrt(2)."""

    __slots__ = ("dual", "terms")

    def __init__(self, dual: DualityContext, terms):
        self.dual = dual
        self.terms = terms  # {(n, m, a, b): FieldScalar}

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            cur = out.get(key)
            s = c if cur is None else cur + c
            if s:
                out[key] = s
            elif cur is not None:
                del out[key]
        return GaussianElement(self.dual, out)

    def __sub__(self, other):
        return self + other * Fraction(-1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.dual.ctx.from_fraction(other)
        if isinstance(other, FieldScalar):
            return GaussianElement(
                self.dual, {k: c * other for k, c in self.terms.items() if c * other}
            )
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, GaussianElement) and self.terms == other.terms

    __hash__ = None

    def is_zero(self):
        return not self.terms


def gaussian_monomial(dual: DualityContext, n=0, m=0, a=0, b=0, coeff=1) -> GaussianElement:
    if n >= dual.ctx.p or m >= dual.ctx.p:
        return GaussianElement(dual, {})
    c = dual.ctx.from_fraction(coeff) if isinstance(coeff, (int, Fraction)) else coeff
    return GaussianElement(dual, {(n, m, a, b): c} if c else {})


def gaussian_moment(ctx: FieldContext, k: int) -> FieldScalar:
    """integral of z^k exp(-z^2) dz: (k-1)!! 2^{-k/2} sqrt(pi) for even k."""
    if k % 2:
        return ctx.zero()
    acc = Fraction(1)
    for j in range(k - 1, 0, -2):
        acc *= j
    return ctx.sqrt_pi(1) * (acc / Fraction(2) ** (k // 2))


def classical_integral(ctx: FieldContext, zpoly: dict) -> FieldScalar:
    """integral over both coordinates of a z-polynomial against the full
    Gaussian exp(-z+^2 - z-^2)."""
    acc = ctx.zero()
    for (a, b), c in zpoly.items():
        v = gaussian_moment(ctx, a) * gaussian_moment(ctx, b)
        if v:
            acc = acc + c * v
    return acc


def hermitian_form(x: GaussianElement, y: GaussianElement) -> FieldScalar:
    """(X, Y) = I_E(X Y*): nilpotent integral times Gaussian moments.  The
    half weights of the two factors combine into the full Gaussian."""
    dual = x.dual
    ctx = dual.ctx
    p = ctx.p
    acc = ctx.zero()
    for (n1, m1, a1, b1), c1 in x.terms.items():
        for (n2, m2, a2, b2), c2 in y.terms.items():
            # y* term: conj coefficient, eta-part reversal phase q^{2 n2 m2}
            if n1 + n2 != p - 1 or m1 + m2 != p - 1:
                continue
            # e+^{n1} e-^{m1} e+^{n2} e-^{m2}: crossing e-^{m1} past e+^{n2}
            phase = ctx.q(2 * n2 * m2 + 2 * m1 * n2)
            mom = gaussian_moment(ctx, a1 + a2) * gaussian_moment(ctx, b1 + b2)
            if not mom:
                continue
            acc = acc + c1 * c2.conjugate() * phase * mom * ctx.q(-1)
    return acc


def gaussian_right_act(dual: DualityContext, gen: str, x: GaussianElement) -> GaussianElement:
    """The right action transported to the half-weight sector.  Derivatives
    see the carried weight: d/dz (z^a w) = (a z^{a-1} - z^{a+1}) w."""
    ctx = dual.ctx
    p = ctx.p
    qs = dual._sqrt_q
    out = GaussianElement(dual, {})
    for (n, m, a, b), c in x.terms.items():
        if gen == "k":
            out = out + gaussian_monomial(dual, n, m, a, b, coeff=c * ctx.q(n - m))
        elif gen == "k^-1":
            out = out + gaussian_monomial(dual, n, m, a, b, coeff=c * ctx.q(m - n))
        elif gen == "P+":
            i = ctx.i()
            if a:
                out = out + gaussian_monomial(dual, n, m, a - 1, b, coeff=c * i * a)
            out = out + gaussian_monomial(dual, n, m, a + 1, b, coeff=-c * i)
        elif gen == "P-":
            i = ctx.i()
            if b:
                out = out + gaussian_monomial(dual, n, m, a, b - 1, coeff=c * i * b)
            out = out + gaussian_monomial(dual, n, m, a, b + 1, coeff=-c * i)
        elif gen == "H":
            i = ctx.i()
            grade = Fraction(n - m, p) + (a - b)
            out = out + gaussian_monomial(dual, n, m, a, b, coeff=c * i * grade)
            out = out + gaussian_monomial(dual, n, m, a + 2, b, coeff=-c * i)
            out = out + gaussian_monomial(dual, n, m, a, b + 2, coeff=c * i)
        elif gen == "p+":
            if n:
                cc = c * ctx.i() * qs * ctx.qfact(n) / ctx.qfact(n - 1) * ctx.q(-m)
                out = out + gaussian_monomial(dual, n - 1, m, a, b, coeff=cc)
            else:
                top = c * ctx.i() * qs * dual.aalg.kappa0 / ctx.qfact(p - 1) * ctx.q(-m)
                if a:
                    out = out + gaussian_monomial(dual, p - 1, m, a - 1, b, coeff=top * a)
                out = out + gaussian_monomial(dual, p - 1, m, a + 1, b, coeff=-top)
        elif gen == "p-":
            qsm = qs.invert()
            if m:
                cc = c * ctx.i() * qsm * ctx.qfact(m) / ctx.qfact(m - 1) * ctx.q(-n)
                out = out + gaussian_monomial(dual, n, m - 1, a, b, coeff=cc)
            else:
                top = c * ctx.i() * qsm * dual.aalg.kappa0 / ctx.qfact(p - 1) * ctx.q(-n)
                if b:
                    out = out + gaussian_monomial(dual, n, p - 1, a, b - 1, coeff=top * b)
                out = out + gaussian_monomial(dual, n, p - 1, a, b + 1, coeff=-top)
        else:
            raise ValueError(f"unknown generator {gen!r}")
    return out


def star_representation_suite(
    ctx: FieldContext,
    zbound: int = 1,
    convention: PairingConvention | None = None,
) -> NumericReport:
    """Adjointness of the right action under the hermitian form.  The
    classical generators and the grading unit must be exactly self-adjoint
    (all generators are star-fixed); the fractional pair is measured against
    both natural candidates and the outcome recorded, not asserted."""
    dual = DualityContext(ctx, convention)
    rep = NumericReport(f"star_representation p={ctx.p} zbound={zbound}")
    p = ctx.p
    window = [
        gaussian_monomial(dual, n, m, a, b)
        for n, m, a, b in itertools.product(range(p), range(p), range(zbound + 1), range(zbound + 1))
    ]
    acted = {g: [gaussian_right_act(dual, g, x) for x in window] for g in ("k", "H", "P+", "P-", "p+", "p-")}

    for g in ("k", "H", "P+", "P-"):
        bad = 0
        for ix, x in enumerate(window):
            for iy, y in enumerate(window):
                if hermitian_form(acted[g][ix], y) != hermitian_form(x, acted[g][iy]):
                    bad += 1
        rep.check(f"self_adjoint[{g}]", bad == 0, f"{bad} mismatches")

    for g, other in (("p+", "p-"), ("p-", "p+")):
        hits_self = hits_other = total = 0
        for ix, x in enumerate(window):
            for iy, y in enumerate(window):
                lhs = hermitian_form(acted[g][ix], y)
                rs = hermitian_form(x, acted[g][iy])
                ro = hermitian_form(x, acted[other][iy])
                if lhs or rs or ro:
                    total += 1
                    hits_self += lhs == rs
                    hits_other += lhs == ro
        rep.measure(f"adjoint_candidate[{g} vs {g}]", f"{hits_self}/{total}")
        rep.measure(f"adjoint_candidate[{g} vs {other}]", f"{hits_other}/{total}")

    # the transported action closes the fractional root on the sector too
    bad = 0
    for x in window:
        acc = x
        for _ in range(p):
            acc = gaussian_right_act(dual, "p+", acc)
        if acc != gaussian_right_act(dual, "P+", x):
            bad += 1
    rep.check("sector_root_plus", bad == 0, f"{bad} mismatches")
    return rep


def integral_suite(ctx: FieldContext, convention: PairingConvention | None = None) -> NumericReport:
    """Values and invariance of the nilpotent-sector integral, plus the
    Gaussian moment anchors."""
    dual = DualityContext(ctx, convention)
    aal = dual.aalg
    rep = NumericReport(f"integral_suite p={ctx.p}")
    p = ctx.p

    top = aal.monomial(n=p - 1, m=p - 1)
    rep.check("top_value", dual.grassmann_integral(top) == ctx.q(-1))
    rep.check("below_top", dual.grassmann_integral(aal.eta_plus()).is_zero())
    rep.check(
        "delta_shifted_zero",
        dual.grassmann_integral(aal.monomial(n=p - 1, m=p - 1, k=1)).is_zero(),
    )

    left_ok = right_ok = True
    for n, m, k in itertools.product(range(p), range(p), range(p)):
        a = aal.monomial(n=n, m=m, k=k)
        value = dual.grassmann_integral(a)
        left, right = dual.integral_invariance(a)
        expect = aal.one() * value
        left_ok &= left == expect
        right_ok &= right == expect
    rep.check("left_invariance", left_ok)
    # both orientations hold on this sector; the right one is kept as a
    # check rather than a measurement so a regression is loud
    rep.check("right_invariance", right_ok)

    rep.check("classical_unit", classical_integral(ctx, {(0, 0): ctx.one()}) == ctx.sqrt_pi(2))
    rep.check("odd_moment", classical_integral(ctx, {(1, 0): ctx.one()}).is_zero())
    rep.check(
        "second_moment",
        classical_integral(ctx, {(2, 2): ctx.one()})
        == ctx.sqrt_pi(2) * Fraction(1, 4),
    )
    return rep
