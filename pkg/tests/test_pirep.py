import random
from fractions import Fraction

import pytest

from fsusy.pirep import (
    BasisVector,
    OperatorMatrix,
    PiOperator,
    PiRepresentation,
    WindowEscape,
    _inertia,
    commutant_dimension,
    gram_char_poly,
    gram_matrix,
    gram_signature,
    representation_suite,
)
from fsusy.scalars import FieldContext
from fsusy.ufalg import random_u_element


@pytest.fixture(scope="session")
def rep3(ctx3):
    return PiRepresentation(ctx3)


@pytest.fixture(scope="session")
def rep5(ctx5):
    return PiRepresentation(ctx5)


# -- single-generator actions ----------------------------------------------------


def test_grading_action(rep3):
    ctx = rep3.ctx
    for j in range(3):
        c, w = rep3.apply_generator("k", rep3.vector(0, j))
        assert w == rep3.vector(0, j)
        assert c == ctx.q(j)


def test_boost_action(rep3):
    # the boost sign follows the determined convention (h = +1)
    ctx = rep3.ctx
    assert rep3.h == 1
    c, w = rep3.apply_generator("H", rep3.vector(Fraction(1, 3), 0))
    assert w == rep3.vector(Fraction(1, 3), 0)
    assert c == ctx.i() * Fraction(1, 3)
    c, _ = rep3.apply_generator("H", rep3.vector(2, 1))
    assert c == ctx.i() * 2


def test_raising_lowering_steps(rep3):
    ctx = rep3.ctx
    c, w = rep3.apply_generator("p+", rep3.vector(0, 0))
    assert w == rep3.vector(Fraction(1, 3), 1)
    assert c == -ctx.c_hat(1)
    c, w = rep3.apply_generator("p-", rep3.vector(0, 0))
    assert w == rep3.vector(Fraction(-1, 3), 2)
    assert c == -ctx.c_hat(1)
    c, w = rep3.apply_generator("P-", rep3.vector(1, 2))
    assert w == rep3.vector(0, 2)
    assert c == -ctx.from_fraction(ctx.r)


def test_root_by_iteration(rep3):
    # p raising steps compose to the whole translation
    ctx = rep3.ctx
    v = rep3.vector(0, 0)
    c_total = ctx.one()
    for _ in range(3):
        c, v = rep3.apply_generator("p+", v)
        c_total = c_total * c
    assert v == rep3.vector(1, 0)
    assert c_total == -ctx.from_fraction(ctx.r)
    cP, vP = rep3.apply_generator("P+", rep3.vector(0, 0))
    assert (cP, vP) == (c_total, v)


def test_steps_at_five(rep5):
    ctx = rep5.ctx
    c, w = rep5.apply_generator("p-", rep5.vector(Fraction(2, 5), 3))
    assert w == rep5.vector(Fraction(1, 5), 2)
    assert c == -ctx.c_hat(1)
    assert rep5.generator("p-") ** 5 == rep5.generator("P-")


def test_vector_validation(rep3):
    with pytest.raises(ValueError):
        rep3.vector(Fraction(1, 2), 0)
    assert rep3.vector(Fraction(4, 3), 5) == BasisVector(Fraction(4, 3), 2)


# -- operator calculus -----------------------------------------------------------


def test_operator_unit(rep3):
    assert rep3.operator(rep3.ualg.one()) == PiOperator.identity(rep3.ctx)
    assert rep3.operator(rep3.ualg.zero()).is_zero()


def test_operator_homomorphism_random(rep3):
    rng = random.Random(31)
    for _ in range(6):
        x = random_u_element(rep3.ualg, rng, degree=3)
        y = random_u_element(rep3.ualg, rng, degree=3)
        assert rep3.operator(x * y) == rep3.operator(x).compose(rep3.operator(y))


def test_grading_order_and_roots(rep3):
    ctx = rep3.ctx
    assert rep3.generator("k") ** 3 == PiOperator.identity(ctx)
    assert rep3.generator("p+") ** 3 == rep3.generator("P+")
    assert rep3.generator("p-") ** 3 == rep3.generator("P-")


def test_casimir_is_scalar(rep3):
    cas = rep3.operator(rep3.ualg.casimir())
    assert cas == PiOperator.identity(rep3.ctx) * rep3.ctx.c_hat(2)


def test_adjoint_atoms(rep3):
    for g in ("p+", "p-", "k", "P+", "P-", "H"):
        op = rep3.generator(g)
        assert op.adjoint() == op


def test_adjoint_products(rep3):
    ual = rep3.ualg
    x = ual.boost() * ual.p_plus()
    assert rep3.operator(x).adjoint() == rep3.operator(x.star())
    rng = random.Random(5)
    y = random_u_element(ual, rng, degree=3)
    oy = rep3.operator(y)
    assert oy.adjoint().adjoint() == oy
    assert rep3.operator(y.star()) == oy.adjoint()


def test_operator_linearity(rep3):
    ctx = rep3.ctx
    a = rep3.generator("p+")
    b = rep3.generator("H")
    s = a + b * ctx.q(1)
    v = rep3.vector(Fraction(1, 3), 1)
    img = s.apply(v)
    ia = a.apply(v)
    ib = b.apply(v)
    for w in set(ia) | set(ib):
        got = img.get(w, ctx.zero())
        want = ia.get(w, ctx.zero()) + ib.get(w, ctx.zero()) * ctx.q(1)
        assert got == want


# -- matrices ---------------------------------------------------------------------


def test_grading_matrix_diagonal(rep3):
    ctx = rep3.ctx
    wnd = rep3.weight_window(mu=Fraction(1, 3))
    mk = rep3.matrix(rep3.ualg.kappa(), wnd)
    assert mk.is_diagonal()
    for j in range(3):
        assert mk.entry(j, j) == ctx.q(j)
        assert mk.column_support(j) == 1


def test_matrix_covariant_composition(rep3):
    ual = rep3.ualg
    wnd = rep3.weight_window(mu=Fraction(1, 3))
    mk = rep3.matrix(ual.kappa(), wnd)
    mh = rep3.matrix(ual.boost(), wnd)
    assert mk * mh == rep3.matrix(ual.kappa() * ual.boost(), wnd)


def test_window_escape(rep3):
    wnd = rep3.weight_window(mu=0)
    with pytest.raises(WindowEscape) as exc:
        rep3.matrix(rep3.ualg.p_plus(), wnd)
    assert len(exc.value.missing) == 3
    assert all(w.mu == Fraction(1, 3) for w in exc.value.missing)


# -- the Gram form ------------------------------------------------------------------


def test_gram_matrix_shape(ctx):
    p = ctx.p
    G = gram_matrix(p)
    assert all(G[j][k] == G[k][j] for j in range(p) for k in range(p))
    # G is an involution: the squared matrix is the identity
    sq = [
        [sum(G[i][t] * G[t][j] for t in range(p)) for j in range(p)]
        for i in range(p)
    ]
    assert all(sq[i][j] == (1 if i == j else 0) for i in range(p) for j in range(p))


def test_gram_signature(ctx):
    sig = gram_signature(ctx)
    assert (sig.n_plus, sig.n_minus, sig.n_zero) == ((ctx.p + 1) // 2, (ctx.p - 1) // 2, 0)


def test_gram_char_poly_pinned():
    # p=3: (x-1)^2 (x+1) = x^3 - x^2 - x + 1
    assert gram_char_poly(3) == (1, -1, -1, 1)


def test_inertia_helper():
    assert _inertia([[2, 0, 0], [0, -3, 0], [0, 0, 0]]) == (1, 1, 1)
    # zero diagonal, handled by the congruence push
    assert _inertia([[0, 1], [1, 0]]) == (1, 1, 0)


def test_commutant_dimension(rep3):
    assert commutant_dimension(rep3) == 1
    assert commutant_dimension(rep3, chain_length=12) == 1


# -- corepresentation terms ----------------------------------------------------------


def test_corep_term_unit(rep3):
    v = rep3.vector(0, 0)
    term = rep3.corep_term((0, 0, 0, 0, 0, 0), v)
    assert term.vector == v
    assert term.scalar == rep3.ctx.one()
    assert term.a_coeff == rep3.duality.aalg.zeta_projector(0)


def test_corep_term_grading(rep3):
    ctx = rep3.ctx
    for j in range(3):
        term = rep3.corep_term((0, 0, 1, 0, 0, 0), rep3.vector(0, j))
        assert term.vector == rep3.vector(0, j)
        assert term.scalar == ctx.q(j)
        assert term.a_coeff == rep3.duality.aalg.zeta_projector(1)


def test_corep_term_raising(rep3):
    ctx = rep3.ctx
    dual = rep3.duality
    term = rep3.corep_term((1, 0, 0, 0, 0, 0), rep3.vector(0, 0))
    assert term.vector == rep3.vector(Fraction(1, 3), 1)
    assert term.scalar == -ctx.c_hat(1)
    qs = ctx.sqrt_q(1) * Fraction(dual.convention.sqrt_q_sign)
    expect = (dual.aalg.eta_plus() * dual.aalg.zeta_projector(1)) * (ctx.i() * qs).invert()
    assert term.a_coeff == expect


def test_corep_grouplike_reassembly(rep3):
    aal = rep3.duality.aalg
    for j in range(3):
        v = rep3.vector(0, j)
        acc = aal.zero()
        for k in range(3):
            term = rep3.corep_term((0, 0, k, 0, 0, 0), v)
            assert term.vector == v
            acc = acc + term.a_coeff * term.scalar
        assert acc == aal.delta(j)


def test_corep_term_validation(rep3):
    with pytest.raises(ValueError):
        rep3.corep_term((3, 0, 0, 0, 0, 0), rep3.vector(0, 0))
    with pytest.raises(ValueError):
        rep3.corep_term((0, 0, 0, -1, 0, 0), rep3.vector(0, 0))


# -- suite ------------------------------------------------------------------------------


def test_representation_suite(ctx3):
    rep = representation_suite(ctx3)
    assert rep.passed, rep.summary()
    assert rep.measurements["h"] == 1


def test_representation_suite_nonunit_r(ctx3):
    rep = representation_suite(FieldContext(3, r=Fraction(2)))
    assert rep.passed, rep.summary()
