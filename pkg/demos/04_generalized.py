"""Automorphisms of the rank-2 algebra from a small set of parameters."""
from twistedn2 import rank2, twisted
from twistedn2.automorphisms import (
    AutoSpec,
    ConstraintViolation,
    GeneralizedAutoSpec,
    generalized_auto,
    homomorphism_residuals,
)
from twistedn2.scalars import I

R = rank2()

# ε = -1 reverses the grading; a_γ on the generators and e_s fix the rest.
spec = GeneralizedAutoSpec(-1, (-4, 5), 2, I)
table = generalized_auto(spec, R, 2)
print(len(table.images), "basis vectors,",
      sum(1 for r in homomorphism_residuals(table) if r.value), "nonzero residuals")

# Parameters that break a defining identity are rejected with a witness.
try:
    generalized_auto(GeneralizedAutoSpec(1, (4, 3), 3, 1), R, 2)
except ConstraintViolation as e:
    print("rejected:", e)

# On rank 1 the ε = -1 family is ϖ composed with an inner automorphism.
A = twisted()
g = generalized_auto(GeneralizedAutoSpec(-1, (-9,), 3, I), A, 3)
print("matches varpi o inner(3):", g == AutoSpec(1, 3).table(window=3))
