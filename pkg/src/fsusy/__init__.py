"""Exact symbolic engine for a fractional-supersymmetry Hopf-algebra pair at
odd-prime roots of unity, together with numerically validated integral
kernels for its corepresentations."""

__version__ = "0.1.0"

from .scalars import FieldContext, FieldScalar, cyclotomic

__all__ = ["FieldContext", "FieldScalar", "cyclotomic"]
