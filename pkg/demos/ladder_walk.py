#!/usr/bin/env python3

"""
The symmetry ladder on the kernel family: exact grading action, boost
eigenvalue, translation and fractional steps checked by finite
differences, and the denominator-reading discrimination.

Run:  python3 demos/ladder_walk.py   (about twenty seconds)
"""

from fractions import Fraction

from fsusy.kernels import d_ladder_suite

for n in (0, 1):
    report = d_ladder_suite(n=n, nu=Fraction(1, 5))
    print(report.summary())
    print()

print("the fractional steps move n by one and the weight by 1/p; the")
print("discrimination row certifies that changing the q-factorial reading")
print("inside the kernel polynomials breaks the fractional step while the")
print("shipped reading satisfies it.")
