"""r-matrices: skewness, coboundaries and the classical Yang-Baxter expression."""
from fractions import Fraction

from twistedn2 import twisted
from twistedn2.bialgebra import (
    coboundary_delta,
    cocycle_residual,
    cybe,
    graded_cocycle_residual,
    skew_check,
    tensor,
)

A = twisted()
L, G = A.L, A.G

r = tensor(L(0), L(1)) - tensor(L(1), L(0))
print("r =", r, " skew:", skew_check(r))
print("Δ_r(L(0)) =", coboundary_delta(A, r, L(0)))
print("c(r) =", cybe(A, r) or 0)

# A non-skew r fails the check.
print("L(1)⊗L(2) skew:", skew_check(tensor(L(1), L(2))))

# For odd r the unsigned cocycle form leaves a residual; the Koszul-signed
# form vanishes.
r = tensor(L(0), G(0)) - tensor(G(0), L(0))
x, y = G(Fraction(1, 2)), L(1)
print("unsigned:", cocycle_residual(A, r, x, y))
print("signed:  ", graded_cocycle_residual(A, r, x, y) or 0)
