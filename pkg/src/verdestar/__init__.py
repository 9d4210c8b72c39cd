"""Exact computations with Verde-Star data triples ``(h_k, x_k, g_k)``.

Modules: :mod:`exactnum` (Gaussian rationals, polynomials, rational
functions), :mod:`spectral` (the monic family and its identities),
:mod:`classify` (constraints, degree triples, the scheme graph),
:mod:`catalog` (named families with oracles), :mod:`qlimits` (exact q -> 1
limits) and :mod:`cli`.
"""

from .exactnum import I, ONE, ZERO, Poly, RatFun, Scalar
from .spectral import TripleData, monic_u

__all__ = ["I", "ONE", "ZERO", "Poly", "RatFun", "Scalar", "TripleData", "monic_u"]
__version__ = "0.1.0"
