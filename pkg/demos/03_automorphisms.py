"""Automorphism tables, their relations and their classification."""
from fractions import Fraction

from twistedn2 import twisted
from twistedn2.automorphisms import (
    AutoSpec,
    classify,
    epsilon_auto,
    homomorphism_residuals,
    identity_auto,
    inner_auto,
    varpi,
)

A = twisted()
w = varpi()

# ϖ reverses indices, negates C, and multiplies G by i.
print("varpi(G(1/2)) =", w(A.G(Fraction(1, 2))))
print("varpi^2 == epsilon:", w.power(2) == epsilon_auto())
print("varpi^4 == id:", w.power(4) == identity_auto())

# Conjugating an inner automorphism by ϖ inverts its parameter.
print("varpi inner(2) varpi^3 == inner(1/2):",
      w.compose(inner_auto(2)).compose(w.power(3)) == inner_auto(Fraction(1, 2)))

# Every table is a homomorphism wherever both sides stay in the window.
t = AutoSpec(3, 2).table()
print("nonzero residuals:", sum(1 for r in homomorphism_residuals(t) if r.value))

# classify recovers (k, β) from the images of L_0, T_{±1/2} and G_0.
print("classify:", classify(t))
print(t.to_text().splitlines()[0])
