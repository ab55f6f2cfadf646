"""Exact-arithmetic commutative algebra for Gorenstein Calabi-Yau ideals.

The package computes graded Betti tables, Hilbert functions, Macaulay
inverse systems, the classification of Betti tables for Artinian
Gorenstein algebras with codimension 4 = regularity 4, and Hodge-theoretic
invariants (chi of the cotangent sheaf, h^{1,1}, h^{1,2}) of the
associated Calabi-Yau threefolds.  All arithmetic is exact: prime fields
GF(p) or the rationals; no floating-point rounding anywhere (the modular
linear algebra uses float64 only as an exact integer carrier with proven
overflow bounds).
"""

from gocy.field import GF, QQ, DEFAULT_PRIME
from gocy.ring import PolynomialRing, Polynomial, diff_apply
from gocy.groebner import GradedIdeal

__all__ = [
    "GF",
    "QQ",
    "DEFAULT_PRIME",
    "PolynomialRing",
    "Polynomial",
    "diff_apply",
    "GradedIdeal",
]
