#!/usr/bin/env python3

"""
Walk through the two symbolic algebras: normal ordering, the cyclic and
nilpotent power rules, and a coproduct/antipode round trip.

Run from the repository root:  python3 demos/normal_ordering_tour.py [p]
"""

import sys

from fsusy.afalg import AAlgebra, parse_a
from fsusy.scalars import FieldContext
from fsusy.ufalg import UAlgebra, parse_u

p = int(sys.argv[1]) if len(sys.argv) > 1 else 3
ctx = FieldContext(p)
ual = UAlgebra(ctx)
aal = AAlgebra(ctx)

print(f"working at p = {p}, q = exp(2*pi*i/{p})")
print()

print("-- enveloping side --")
for text in ("k p+", "p- k", f"p+^{p}", f"k^{p}", "p+ p- H"):
    x = parse_u(ual, text)
    print(f"  {text:12s} -> {x}")

x = parse_u(ual, "p+ k")
y = parse_u(ual, "p- k^-1")
print(f"  product      ({x}) * ({y}) = {x * y}")

casimir = parse_u(ual, "p+ p-")
h = parse_u(ual, "H")
print(f"  Casimir commutes with the boost: {casimir * h == h * casimir}")
print()

print("-- function side --")
for text in ("e- e+", "d^-1", f"e+^{p}", f"d^{p}", "z+ e+ d"):
    a = parse_a(aal, text)
    print(f"  {text:12s} -> {a}")

ep = aal.eta_plus()
print(f"  nilpotency survives the coproduct: {(ep.coproduct() ** p).is_zero()}")

# antipode is a coinverse: m (S x id) Delta = eps(a) 1
for text in ("d", "e+ e- d"):
    a = parse_a(aal, text)
    collapsed = a.coproduct().map_leg(0, type(a).antipode).multiply_legs()
    print(f"  antipode collapses {text:8s} to {collapsed}  (counit {a.counit()})")
