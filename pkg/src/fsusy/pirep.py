"""The weight-basis representation of the enveloping side.

The carrier is spanned by formal vectors (mu, j): an exponential weight
e^(mu x) with mu rational of denominator dividing p, and a cyclic power t^j
with t^p = 1.  Every generator acts monomially,

    p_pm: (mu, j) -> (-c) (mu +- 1/p, j +- 1)      c^p = r
    P_pm: (mu, j) -> (-r) (mu +- 1,   j)
    H:    (mu, j) -> h i mu (mu, j)
    k:    (mu, j) -> q^j    (mu, j)

where h is the boost sign shared with the enveloping algebra (taken from the
empirically determined pairing convention unless overridden).  A general
element therefore acts by a finite sum of terms

    (sigma, tau, e, poly):  (mu, j) -> poly(mu) q^(e j) (mu + sigma, j + tau)

and this calculus is closed under composition and the formal adjoint, which
makes operator identities decidable exactly and globally, with no window.

The adjoint combines the cyclic-part conjugation through the Gram matrix
G_jk = [j + k = 0 mod p] of the pseudo-Euclidean form on t-polynomials with
the formal rules on the weight part (multiplication by a real exponential is
self-adjoint, differentiation is skew).  On a single term it reads

    (sigma, tau, e, c mu^d)^adj = (sigma, tau, e, conj(c) (-1)^d (mu+sigma)^d q^(e tau)).

Matrices on finite windows are provided for display and spot checks; windows
are never closed under the weight shifts, so escaping actions raise with the
list of missing vectors rather than truncating silently.
"""

from __future__ import annotations

import itertools
import math
import random as _random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .afalg import AAlgebra, AElement
from .duality import DualityContext, determine_convention
from .report import NumericReport
from .scalars import FieldContext, FieldScalar
from .ufalg import GEN_NAMES, UAlgebra, UElement, random_u_element


class BasisVector(NamedTuple):
    mu: Fraction
    j: int

    def pretty(self) -> str:
        return f"(mu={self.mu}, j={self.j})"


class WindowEscape(ValueError):
    """An action left the window; carries the vectors that would be needed."""

    def __init__(self, missing):
        self.missing = tuple(missing)
        names = ", ".join(v.pretty() for v in self.missing)
        super().__init__(f"action leaves the window; missing {names}")


def _check_mu(mu: Fraction, p: int) -> Fraction:
    mu = Fraction(mu)
    if mu.denominator not in (1, p):
        raise ValueError(f"weight denominator must divide {p}: {mu}")
    return mu


class PiOperator:
    """Finite sum of monomial terms, keyed (sigma, tau, e) with a polynomial
    coefficient in the source weight.  Closed under sum, composition and
    adjoint; equality is decidable because distinct keys act through
    linearly independent functions of (mu, j)."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldContext, terms):
        self.ctx = ctx
        self.terms = {key: poly for key, poly in terms.items() if poly}

    @classmethod
    def zero(cls, ctx: FieldContext):
        return cls(ctx, {})

    @classmethod
    def identity(cls, ctx: FieldContext):
        return cls(ctx, {(Fraction(0), 0, 0): {0: ctx.one()}})

    def _clean(self, terms):
        out = {}
        for key, poly in terms.items():
            poly = {d: c for d, c in poly.items() if c}
            if poly:
                out[key] = poly
        return PiOperator(self.ctx, out)

    def __add__(self, other):
        if not isinstance(other, PiOperator):
            return NotImplemented
        out = {k: dict(p) for k, p in self.terms.items()}
        for key, poly in other.terms.items():
            tgt = out.setdefault(key, {})
            for d, c in poly.items():
                acc = tgt.get(d)
                tgt[d] = c if acc is None else acc + c
        return self._clean(out)

    def __neg__(self):
        return PiOperator(
            self.ctx, {k: {d: -c for d, c in p.items()} for k, p in self.terms.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Operator composition self after other, or scaling by a scalar."""
        if isinstance(other, PiOperator):
            return self.compose(other)
        return PiOperator(
            self.ctx,
            {k: {d: c * other for d, c in p.items() if c * other} for k, p in self.terms.items()},
        )

    def __rmul__(self, other):
        if isinstance(other, PiOperator):
            return NotImplemented
        return self * other

    def compose(self, other: PiOperator) -> PiOperator:
        ctx = self.ctx
        p = ctx.p
        out = {}
        for (s1, t1, e1), p1 in self.terms.items():
            for (s2, t2, e2), p2 in other.terms.items():
                key = (s1 + s2, (t1 + t2) % p, (e1 + e2) % p)
                tgt = out.setdefault(key, {})
                phase = ctx.q(e1 * t2)
                for d1, c1 in p1.items():
                    for d2, c2 in p2.items():
                        base = c1 * c2 * phase
                        # source-weight shift: mu^d2 (mu + s2)^d1
                        for a in range(d1 + 1):
                            coeff = base * (Fraction(math.comb(d1, a)) * s2 ** (d1 - a))
                            if not coeff:
                                continue
                            d = d2 + a
                            acc = tgt.get(d)
                            tgt[d] = coeff if acc is None else acc + coeff
        return self._clean(out)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative operator power")
        acc = PiOperator.identity(self.ctx)
        for _ in range(n):
            acc = acc.compose(self)
        return acc

    def adjoint(self) -> PiOperator:
        ctx = self.ctx
        out = {}
        for (sig, tau, e), poly in self.terms.items():
            phase = ctx.q(e * tau)
            tgt = out.setdefault((sig, tau, e), {})
            for d, c in poly.items():
                base = c.conjugate() * phase
                if d % 2:
                    base = -base
                for a in range(d + 1):
                    coeff = base * (Fraction(math.comb(d, a)) * sig ** (d - a))
                    if not coeff:
                        continue
                    acc = tgt.get(a)
                    tgt[a] = coeff if acc is None else acc + coeff
        return self._clean(out)

    def apply(self, v: BasisVector) -> dict:
        """Image of a basis vector as {BasisVector: FieldScalar}."""
        ctx = self.ctx
        p = ctx.p
        out = {}
        for (sig, tau, e), poly in self.terms.items():
            val = ctx.zero()
            for d, c in poly.items():
                val = val + c * (v.mu ** d)
            if e:
                val = val * ctx.q(e * v.j)
            if not val:
                continue
            w = BasisVector(v.mu + sig, (v.j + tau) % p)
            acc = out.get(w)
            total = val if acc is None else acc + val
            if total:
                out[w] = total
            elif acc is not None:
                del out[w]
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, PiOperator):
            return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    def __hash__(self):
        raise TypeError("unhashable")

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        rows = []
        for (sig, tau, e), poly in sorted(
            self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2])
        ):
            parts = " + ".join(
                f"({poly[d].pretty()})mu^{d}" if d else f"({poly[d].pretty()})"
                for d in sorted(poly)
            )
            rows.append(f"shift(mu+{sig}, j+{tau}) q^({e}j) [{parts}]")
        return "\n".join(rows)


class OperatorMatrix:
    """Square matrix of an operator on an ordered window of basis vectors.

    Column convention: entries[i][j] is the coefficient of window[i] in the
    image of window[j], so matrices compose covariantly with composition:
    matrix(x compose y) = matrix(x) matrix(y)."""

    __slots__ = ("ctx", "window", "entries")

    def __init__(self, ctx: FieldContext, window, entries):
        self.ctx = ctx
        self.window = tuple(window)
        self.entries = tuple(tuple(row) for row in entries)

    def __mul__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        if self.window != other.window:
            raise ValueError("matrix windows differ")
        n = len(self.window)
        zero = self.ctx.zero()
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return OperatorMatrix(self.ctx, self.window, rows)

    def __eq__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self.window == other.window and self.entries == other.entries

    def __hash__(self):
        raise TypeError("unhashable")

    def entry(self, i: int, j: int) -> FieldScalar:
        return self.entries[i][j]

    def is_diagonal(self) -> bool:
        return all(
            not self.entries[i][j]
            for i in range(len(self.window))
            for j in range(len(self.window))
            if i != j
        )

    def column_support(self, j: int) -> int:
        return sum(1 for i in range(len(self.window)) if self.entries[i][j])

    def pretty(self) -> str:
        labels = [v.pretty() for v in self.window]
        rows = [f"window: {', '.join(labels)}"]
        for i, row in enumerate(self.entries):
            cells = ", ".join(c.pretty() if c else "0" for c in row)
            rows.append(f"[{i}] {cells}")
        return "\n".join(rows)


@dataclass(frozen=True)
class CorepTerm:
    """One term of the universal corepresentation sum: the function-side
    coefficient (already divided by the pairing normalization), and the
    scaled image vector."""

    a_coeff: AElement
    scalar: FieldScalar
    vector: BasisVector


class PiRepresentation:
    """Exact action of the enveloping side on the weight basis."""

    def __init__(self, ctx: FieldContext, h: int | None = None):
        if h is None:
            h = determine_convention(ctx).h
        if h not in (1, -1):
            raise ValueError("boost sign must be +1 or -1")
        self.ctx = ctx
        self.h = h
        self.ualg = UAlgebra(ctx, h=h)
        self._minus_c = -ctx.c_hat(1)
        self._minus_r = -ctx.c_hat(ctx.p)
        self._dual = None
        self._gen_ops = {}

    # -- vectors and windows --

    def vector(self, mu=0, j: int = 0) -> BasisVector:
        return BasisVector(_check_mu(Fraction(mu), self.ctx.p), j % self.ctx.p)

    def chain_window(self, length: int, mu0=0, j0: int = 0):
        """Vectors along the raising chain from (mu0, j0)."""
        p = self.ctx.p
        base = _check_mu(Fraction(mu0), p)
        return [self.vector(base + Fraction(b, p), j0 + b) for b in range(length)]

    def weight_window(self, mu=0):
        """All cyclic powers at one weight; closed for the diagonal actions."""
        return [self.vector(mu, j) for j in range(self.ctx.p)]

    # -- operators --

    def generator(self, name: str) -> PiOperator:
        op = self._gen_ops.get(name)
        if op is None:
            op = self.operator(self.ualg.generator(name))
            self._gen_ops[name] = op
        return op

    def operator(self, x: UElement) -> PiOperator:
        ctx = self.ctx
        p = ctx.p
        acc = PiOperator.zero(ctx)
        for (n, m, k, t, s, l), c in x.terms.items():
            sig = Fraction(n - m, p) + t - s
            coeff = c * ctx.c_hat(n + m) * (ctx.i() ** l)
            scale = Fraction(ctx.r) ** (t + s)
            if (n + m + t + s) % 2:
                scale = -scale
            if self.h < 0 and l % 2:
                scale = -scale
            coeff = coeff * scale
            term = PiOperator(ctx, {(sig, (n - m) % p, k % p): {l: coeff}})
            acc = acc + term
        return acc

    def apply_generator(self, name: str, v: BasisVector):
        """(scalar, vector) image of a basis vector under one generator."""
        out = self.generator(name).apply(v)
        if not out:
            return self.ctx.zero(), v
        (w, c), = out.items()
        return c, w

    def matrix(self, x, window) -> OperatorMatrix:
        """Square matrix on the window; raises WindowEscape when the action
        needs vectors outside it."""
        op = self.operator(x) if isinstance(x, UElement) else x
        window = tuple(window)
        index = {v: i for i, v in enumerate(window)}
        zero = self.ctx.zero()
        entries = [[zero] * len(window) for _ in window]
        missing = []
        for col, v in enumerate(window):
            for w, val in op.apply(v).items():
                row = index.get(w)
                if row is None:
                    missing.append(w)
                else:
                    entries[row][col] = val
        if missing:
            raise WindowEscape(sorted(set(missing)))
        return OperatorMatrix(self.ctx, window, entries)

    # -- corepresentation terms --

    @property
    def duality(self) -> DualityContext:
        if self._dual is None:
            self._dual = DualityContext(self.ctx)
        return self._dual

    def corep_term(self, indices, v: BasisVector) -> CorepTerm:
        """One (n,m,k,t,s,l) term of the universal corepresentation sum on a
        basis vector: the function-side coefficient carries the inverse of
        the pairing normalization, the vector side carries the action."""
        n, m, k, t, s, l = indices
        p = self.ctx.p
        if not (0 <= n < p and 0 <= m < p and 0 <= k < p):
            raise ValueError("cyclic indices must sit in [0, p)")
        if t < 0 or s < 0 or l < 0:
            raise ValueError("classical indices must be nonnegative")
        dual = self.duality
        phi = self.ualg.monomial(n=n, m=m, k=k, t=t, s=s, l=l)
        aal = dual.aalg
        a_elem = aal.monomial(n=n, m=m, t=t, s=s, l=l) * aal.zeta_projector((k + n + m) % p)
        denom = dual.pair(phi, a_elem)
        if not denom:
            raise RuntimeError(f"pairing normalization vanished at {indices}")
        out = self.operator(phi).apply(v)
        if not out:
            raise RuntimeError(f"action vanished at {indices}")
        (w, c), = out.items()
        return CorepTerm(a_elem * denom.invert(), c, w)


# -- the Gram form on the cyclic factor -----------------------------------------


@dataclass(frozen=True)
class SignatureResult:
    n_plus: int
    n_minus: int
    n_zero: int


def gram_matrix(p: int):
    """G_jk = [j + k = 0 mod p] on the basis t^0 .. t^(p-1)."""
    return tuple(
        tuple(1 if (j + k) % p == 0 else 0 for k in range(p)) for j in range(p)
    )


def gram_char_poly(p: int):
    """Characteristic polynomial of the Gram matrix by the trace recursion,
    exact over the rationals; coefficients from x^p down to x^0."""
    M = [[Fraction(x) for x in row] for row in gram_matrix(p)]
    n = len(M)
    coeffs = [Fraction(1)]
    A = [row[:] for row in M]
    for k in range(1, n + 1):
        ck = -sum(A[i][i] for i in range(n)) / k
        coeffs.append(ck)
        if k == n:
            break
        for i in range(n):
            A[i][i] += ck
        A = [
            [sum(M[i][t] * A[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
    return tuple(coeffs)


def _root_multiplicity(coeffs, root: Fraction):
    """Multiplicity of a rational root by repeated synthetic division."""
    coeffs = list(coeffs)
    mult = 0
    while len(coeffs) > 1:
        out = [coeffs[0]]
        for c in coeffs[1:]:
            out.append(c + root * out[-1])
        if out[-1] != 0:
            break
        coeffs = out[:-1]
        mult += 1
    return mult, coeffs


def _inertia(M):
    """Sylvester inertia of a symmetric rational matrix by congruence
    elimination with symmetric pivoting."""
    M = [[Fraction(x) for x in row] for row in M]
    n = len(M)
    pos = neg = zero = 0
    k = 0
    while k < n:
        pivot = next((i for i in range(k, n) if M[i][i] != 0), None)
        if pivot is None:
            off = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if M[i][j] != 0),
                None,
            )
            if off is None:
                zero += n - k
                break
            i, j = off
            # symmetric congruence: push the off-diagonal onto the diagonal
            for c in range(n):
                M[i][c] += M[j][c]
            for r in range(n):
                M[r][i] += M[r][j]
            pivot = i
        if pivot != k:
            M[k], M[pivot] = M[pivot], M[k]
            for r in range(n):
                M[r][k], M[r][pivot] = M[r][pivot], M[r][k]
        d = M[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = M[i][k] / d
            if f:
                for c in range(k, n):
                    M[i][c] -= f * M[k][c]
        for j in range(k + 1, n):
            M[k][j] = Fraction(0)
            M[j][k] = Fraction(0)
        k += 1
    return pos, neg, zero


def gram_signature(ctx_or_p) -> SignatureResult:
    """Signature of the Gram form by two independent exact routes: root
    counting on the characteristic polynomial, and congruence inertia."""
    p = ctx_or_p if isinstance(ctx_or_p, int) else ctx_or_p.p
    coeffs = gram_char_poly(p)
    m_plus, rest = _root_multiplicity(coeffs, Fraction(1))
    m_minus, rest = _root_multiplicity(rest, Fraction(-1))
    m_zero, rest = _root_multiplicity(rest, Fraction(0))
    if len(rest) != 1:
        raise RuntimeError("Gram spectrum is not supported on {1, -1, 0}")
    inertia = _inertia(gram_matrix(p))
    if inertia != (m_plus, m_minus, m_zero):
        raise RuntimeError(f"signature routes disagree: {inertia} vs char poly")
    return SignatureResult(m_plus, m_minus, m_zero)


# -- the mechanical adjoint route ------------------------------------------------


def _gram_conjugate(ctx: FieldContext, N):
    """A -> G^-1 conj(A)^T G on the cyclic factor, entrywise exact."""
    p = ctx.p
    return [
        [N[(-j) % p][(-i) % p].conjugate() for j in range(p)] for i in range(p)
    ]


def _tshift_matrix(ctx: FieldContext, tau: int):
    p = ctx.p
    one, zero = ctx.one(), ctx.zero()
    return [[one if i == (j + tau) % p else zero for j in range(p)] for i in range(p)]


def _tdiag_matrix(ctx: FieldContext, e: int):
    p = ctx.p
    zero = ctx.zero()
    return [[ctx.q(e * j) if i == j else zero for j in range(p)] for i in range(p)]


def _apply_t_matrix(ctx, M, state):
    """state: {(mu, j): coeff} -> matrix acting on the cyclic index."""
    p = ctx.p
    out = {}
    for (mu, j), c in state.items():
        for i in range(p):
            v = M[i][j]
            if v:
                key = (mu, i)
                acc = out.get(key)
                total = c * v if acc is None else acc + c * v
                if total:
                    out[key] = total
                elif acc is not None:
                    del out[key]
    return out


def _monomial_word(rep: PiRepresentation, mono):
    """The atomic word of one monomial action, in application order."""
    n, m, k, t, s, l = mono
    ctx = rep.ctx
    p = ctx.p
    word = []
    if l:
        word.append(("scalar", (ctx.i() * Fraction(rep.h)) ** l))
        word.append(("ddx", l))
    if s:
        word.append(("scalar", ctx.from_fraction(Fraction(-ctx.r) ** s)))
        word.append(("xshift", Fraction(-s)))
    if t:
        word.append(("scalar", ctx.from_fraction(Fraction(-ctx.r) ** t)))
        word.append(("xshift", Fraction(t)))
    if k:
        word.append(("tdiag", k % p))
    if m:
        word.append(("scalar", (-ctx.c_hat(1)) ** m))
        word.append(("xshift", Fraction(-m, p)))
        word.append(("tshift", (-m) % p))
    if n:
        word.append(("scalar", (-ctx.c_hat(1)) ** n))
        word.append(("xshift", Fraction(n, p)))
        word.append(("tshift", n % p))
    return word


def _apply_adjoint_word(rep: PiRepresentation, word, v: BasisVector):
    """Mechanical adjoint: reverse the word, conjugate the scalars, flip the
    derivative sign, and conjugate the cyclic atoms through the Gram matrix."""
    ctx = rep.ctx
    state = {(v.mu, v.j): ctx.one()}
    for kind, arg in reversed(word):
        if kind == "scalar":
            state = {key: c * arg.conjugate() for key, c in state.items()}
        elif kind == "ddx":
            out = {}
            for (mu, j), c in state.items():
                val = c * ((-mu) ** arg)
                if val:
                    out[(mu, j)] = val
            state = out
        elif kind == "xshift":
            state = {(mu + arg, j): c for (mu, j), c in state.items()}
        elif kind == "tshift":
            M = _gram_conjugate(ctx, _tshift_matrix(ctx, arg))
            state = _apply_t_matrix(ctx, M, state)
        elif kind == "tdiag":
            M = _gram_conjugate(ctx, _tdiag_matrix(ctx, arg))
            state = _apply_t_matrix(ctx, M, state)
        else:
            raise ValueError(kind)
    return {BasisVector(mu, j): c for (mu, j), c in state.items()}


# -- the commutant spot check ----------------------------------------------------


def commutant_dimension(rep: PiRepresentation, chain_length: int | None = None) -> int:
    """Dimension of the commutant restricted to a raising chain, by exact
    structured elimination: the boost eigenvalues are pairwise distinct, so a
    commuting operator is diagonal there; the chain coefficients of the
    raising action are nonzero, so the diagonal is constant."""
    p = rep.ctx.p
    length = chain_length if chain_length is not None else 3 * p
    window = rep.chain_window(length)
    eigs = []
    for v in window:
        out = rep.generator("H").apply(v)
        if out and (len(out) > 1 or v not in out):
            raise RuntimeError("boost action is not diagonal")
        eigs.append(out.get(v, rep.ctx.zero()))
    for a, b in itertools.combinations(range(length), 2):
        if eigs[a] == eigs[b]:
            raise RuntimeError("boost eigenvalues collide; elimination invalid")
    # distinct diagonal forces X diagonal; the raising chain then chains the
    # diagonal entries together wherever its coefficient is nonzero
    classes = list(range(length))

    def find(i):
        while classes[i] != i:
            classes[i] = classes[classes[i]]
            i = classes[i]
        return i

    raise_op = rep.generator("p+")
    for b in range(length - 1):
        out = raise_op.apply(window[b])
        if out.get(window[b + 1]):
            classes[find(b + 1)] = find(b)
    return sum(1 for i in range(length) if find(i) == i)


# -- the verification suite -------------------------------------------------------


def representation_suite(
    ctx: FieldContext,
    chain_length: int | None = None,
    samples: int = 15,
    seed: int = 7,
    h: int | None = None,
) -> NumericReport:
    """Exact checks of the representation: the defining relations as operator
    identities, the fractional root both in the calculus and pointwise on a
    chain window, formal self-adjointness of the star-fixed generators by two
    routes, the Gram signature, and the corepresentation reassembly."""
    rep = PiRepresentation(ctx, h=h)
    ual = rep.ualg
    p = ctx.p
    length = chain_length if chain_length is not None else 3 * p
    rng = _random.Random(seed)
    rrep = NumericReport(f"representation_suite p={p} r={ctx.r}")
    rrep.measure("h", rep.h)
    rrep.measure("chain_length", length)

    gens = {g: rep.generator(g) for g in GEN_NAMES}

    # products of generator pairs against the normalized algebra products
    bad = 0
    for g1, g2 in itertools.product(GEN_NAMES, repeat=2):
        lhs = gens[g1].compose(gens[g2])
        rhs = rep.operator(ual.generator(g1) * ual.generator(g2))
        if lhs != rhs:
            bad += 1
    rrep.check("generator_pair_products", bad == 0, f"{bad} of 36 mismatch")

    bad = 0
    for _ in range(samples):
        x = random_u_element(ual, rng, degree=3)
        y = random_u_element(ual, rng, degree=3)
        if rep.operator(x * y) != rep.operator(x).compose(rep.operator(y)):
            bad += 1
    rrep.check("homomorphism_random", bad == 0, f"{bad} mismatches")

    rrep.check("grading_order", gens["k"] ** p == PiOperator.identity(ctx))
    q = ctx.q(1)
    kap_inv = gens["k"] ** (p - 1)
    rrep.check(
        "grading_conjugation",
        gens["k"].compose(gens["p+"]).compose(kap_inv) == gens["p+"] * q
        and gens["k"].compose(gens["p-"]).compose(kap_inv) == gens["p-"] * ctx.q(-1),
    )
    ih = ctx.i() * Fraction(rep.h, p)
    comm = gens["p+"].compose(gens["H"]) - gens["H"].compose(gens["p+"])
    rrep.check("boost_commutator_plus", comm == gens["p+"] * (-ih))
    comm = gens["p-"].compose(gens["H"]) - gens["H"].compose(gens["p-"])
    rrep.check("boost_commutator_minus", comm == gens["p-"] * ih)

    # the fractional root, globally in the calculus
    rrep.check("root_calculus_plus", gens["p+"] ** p == gens["P+"])
    rrep.check("root_calculus_minus", gens["p-"] ** p == gens["P-"])

    # and pointwise along a chain of distinct vectors
    for name, whole in (("p+", "P+"), ("p-", "P-")):
        bad = 0
        for v in rep.chain_window(length):
            state = {v: ctx.one()}
            for _ in range(p):
                nxt = {}
                for w, c in state.items():
                    for u, d in gens[name].apply(w).items():
                        acc = nxt.get(u)
                        nxt[u] = c * d if acc is None else acc + c * d
                state = nxt
            if state != gens[whole].apply(v):
                bad += 1
        rrep.check(f"root_window[{name}]", bad == 0, f"{bad} of {length} vectors")

    # eigenvalue anchors
    v = rep.vector(Fraction(1, p), 0)
    c, w = rep.apply_generator("H", v)
    rrep.check("boost_eigenvalue", w == v and c == ctx.i() * Fraction(rep.h, p))
    c, w = rep.apply_generator("k", rep.vector(0, 1))
    rrep.check("grading_eigenvalue", w == rep.vector(0, 1) and c == q)
    c, w = rep.apply_generator("p+", rep.vector(0, 0))
    rrep.check(
        "raising_step",
        w == rep.vector(Fraction(1, p), 1) and c == -ctx.c_hat(1),
    )

    # adjoints: closed formula, star element, and the mechanical word route
    bad_closed = bad_word = 0
    word_monos = [
        (1, 0, 0, 0, 0, 0),
        (0, 1, 0, 0, 0, 0),
        (0, 0, 1, 0, 0, 0),
        (0, 0, 0, 1, 0, 0),
        (0, 0, 0, 0, 1, 0),
        (0, 0, 0, 0, 0, 1),
        (1, 0, 2, 0, 0, 1),
        (2, 1, 1, 1, 0, 0),
        (0, 2, 0, 0, 1, 2),
    ]
    probe_vectors = [rep.vector(Fraction(b, p), j) for b in (-1, 0, 2) for j in range(p)]
    for mono in word_monos:
        x = ual.monomial(*mono)
        adj = rep.operator(x).adjoint()
        if adj != rep.operator(x.star()):
            bad_closed += 1
        word = _monomial_word(rep, mono)
        if any(_apply_adjoint_word(rep, word, v) != adj.apply(v) for v in probe_vectors):
            bad_word += 1
    rrep.check("adjoint_matches_star", bad_closed == 0, f"{bad_closed} mismatches")
    rrep.check("adjoint_word_gram_route", bad_word == 0, f"{bad_word} mismatches")

    for g in GEN_NAMES:
        rrep.check(f"self_adjoint[{g}]", gens[g].adjoint() == gens[g])

    bad_star = bad_anti = bad_invol = 0
    for _ in range(samples):
        x = random_u_element(ual, rng, degree=3)
        y = random_u_element(ual, rng, degree=2)
        ox, oy = rep.operator(x), rep.operator(y)
        if rep.operator(x.star()) != ox.adjoint():
            bad_star += 1
        if ox.compose(oy).adjoint() != oy.adjoint().compose(ox.adjoint()):
            bad_anti += 1
        if ox.adjoint().adjoint() != ox:
            bad_invol += 1
    rrep.check("adjoint_star_random", bad_star == 0, f"{bad_star} mismatches")
    rrep.check("adjoint_antimultiplicative", bad_anti == 0, f"{bad_anti} mismatches")
    rrep.check("adjoint_involutive", bad_invol == 0, f"{bad_invol} mismatches")

    # the quadratic invariant acts as the scalar c^2 and commutes with all
    cas = rep.operator(ual.casimir())
    rrep.check("casimir_scalar", cas == PiOperator.identity(ctx) * (ctx.c_hat(2)))
    bad = sum(
        1 for g in GEN_NAMES if cas.compose(gens[g]) != gens[g].compose(cas)
    )
    rrep.check("casimir_central", bad == 0, f"{bad} mismatches")

    # matrices on closed windows
    wnd = rep.weight_window(mu=Fraction(1, p))
    mk = rep.matrix(ual.kappa(), wnd)
    rrep.check(
        "matrix_grading_diagonal",
        mk.is_diagonal() and all(mk.entry(j, j) == ctx.q(j) for j in range(p)),
    )
    rrep.check("matrix_identity", rep.matrix(ual.one(), wnd).is_diagonal())
    rrep.check("matrix_covariant", mk * rep.matrix(ual.boost(), wnd) == rep.matrix(ual.kappa() * ual.boost(), wnd))
    mc = rep.matrix(ual.casimir(), wnd)
    rrep.check(
        "matrix_casimir_scalar",
        mc.is_diagonal() and all(mc.entry(j, j) == ctx.c_hat(2) for j in range(p)),
    )
    bad = 0
    for g in GEN_NAMES:
        for v in rep.chain_window(length):
            if len(gens[g].apply(v)) > 1:
                bad += 1
    rrep.check("monomial_columns", bad == 0, f"{bad} multi-target images")
    try:
        rep.matrix(ual.p_plus(), wnd)
        rrep.check("window_escape_raises", False, "no escape raised")
    except WindowEscape as exc:
        rrep.check(
            "window_escape_raises",
            len(exc.missing) == p
            and all(w.mu == Fraction(1, p) + Fraction(1, p) for w in exc.missing),
        )

    sig = gram_signature(ctx)
    rrep.check(
        "gram_signature",
        (sig.n_plus, sig.n_minus, sig.n_zero) == ((p + 1) // 2, (p - 1) // 2, 0),
        f"{sig}",
    )
    rrep.measure("signature", f"(+{sig.n_plus}, -{sig.n_minus}, 0x{sig.n_zero})")
    # multiply out (x - 1)^((p+1)/2) (x + 1)^((p-1)/2) and compare
    poly = [Fraction(1)]
    for root in [Fraction(1)] * ((p + 1) // 2) + [Fraction(-1)] * ((p - 1) // 2):
        nxt = [Fraction(0)] * (len(poly) + 1)
        for idx, cc in enumerate(poly):
            nxt[idx] += cc
            nxt[idx + 1] -= cc * root
        poly = nxt
    rrep.check("gram_char_poly_closed_form", tuple(poly) == gram_char_poly(p))

    rrep.check("commutant_dimension", commutant_dimension(rep, length) == 1, "expected 1")

    # group-like sector of the corepresentation reassembles the cyclic basis
    bad = 0
    for j in range(p):
        v = rep.vector(0, j)
        acc = rep.duality.aalg.zero()
        for k in range(p):
            term = rep.corep_term((0, 0, k, 0, 0, 0), v)
            if term.vector != v:
                bad += 1
                continue
            acc = acc + term.a_coeff * term.scalar
        if acc != rep.duality.aalg.delta(j):
            bad += 1
    rrep.check("corep_grouplike_sector", bad == 0, f"{bad} mismatches")
    return rrep
