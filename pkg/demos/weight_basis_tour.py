#!/usr/bin/env python3

"""
The pseudo-unitary weight-basis representation: raising chain, the p-th
root collapsing to the translation, the indefinite Gram signature, and
one term of the universal corepresentation sum.

Run:  python3 demos/weight_basis_tour.py
"""

from fractions import Fraction

from fsusy.pirep import PiRepresentation, gram_signature
from fsusy.scalars import FieldContext

ctx = FieldContext(3)
rep = PiRepresentation(ctx)
p = ctx.p

print(f"raising chain out of the vacuum weight (p = {p}):")
v = rep.vector(0, 0)
for step in range(p + 1):
    c, w = rep.apply_generator("p+", v)
    print(f"  p+ . {v.pretty():14s} = {c.pretty():>10s} * {w.pretty()}")
    v = w
print()

v0 = rep.vector(0, 0)
state = {v0: ctx.one()}
for _ in range(p):
    nxt = {}
    for w, c in state.items():
        for u, d in rep.generator("p+").apply(w).items():
            nxt[u] = nxt.get(u, ctx.zero()) + c * d
    state = nxt
(whole_v, whole_c), = rep.generator("P+").apply(v0).items()
(root_v, root_c), = state.items()
print(f"p applications of p+ on {v0.pretty()}: {root_c.pretty()} * {root_v.pretty()}")
print(f"one application of P+ on {v0.pretty()}: {whole_c.pretty()} * {whole_v.pretty()}")
print(f"agree exactly: {state == rep.generator('P+').apply(v0)}")
print()

print("Gram signature of the cyclic form (n_plus, n_minus, n_zero):")
for pp in (3, 5, 7):
    sig = gram_signature(pp)
    print(f"  p = {pp}:  ({sig.n_plus}, {sig.n_minus}, {sig.n_zero})")
print("the form is indefinite but nondegenerate at every odd prime.")
print()

term = rep.corep_term((1, 0, 1, 0, 0, 0), rep.vector(Fraction(1, 3), 0))
print("one corepresentation term on the weight-1/3 vector:")
print(f"  function factor: {term.a_coeff}")
print(f"  scalar:          {term.scalar.pretty()}")
print(f"  image vector:    {term.vector.pretty()}")
