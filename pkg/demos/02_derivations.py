"""Solving for derivations on a finite window."""
from fractions import Fraction

from twistedn2 import rank2, twisted
from twistedn2.derivations import solve_derivation_space

A = twisted()

# Each homogeneous derivation found on the window is a multiple of one ad(x).
for parity, degree in (("odd", Fraction(1, 2)), ("even", 1), ("even", Fraction(-3, 2))):
    rep = solve_derivation_space(A, parity, degree, 8, 3)
    print(rep.to_text())
    print()

# In degree 0 the central coefficients are forced to zero by the equations.
rep = solve_derivation_space(A, "even", 0, 8, 3)
print("D(C) coefficient on C:", [str(v) for v in rep.kernel_column(A.C, A.C)])

# On the rank-2 instance, degree 0 has two dimensions: the additive maps φ(γ)
# on Z + Zθ give derivations that ad(L_0) alone does not reach.
rep = solve_derivation_space(rank2(), "even", 0, 3, 3)
print(rep.to_text())
