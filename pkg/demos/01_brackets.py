"""Brackets in the twisted algebra and its rank-2 cousin."""
from fractions import Fraction

from twistedn2 import rank2, twisted
from twistedn2.scalars import THETA

A = twisted()
L, T, G, C = A.L, A.T, A.G, A.c()
h = Fraction(1, 2)

# The Virasoro part carries the (m^3 - m)/12 central term.
print("[L(2), L(-2)] =", A.bracket(L(2), L(-2)))

# Two odd generators close on L, T or C depending on the sector of the index.
print("[G(1), G(-1)] =", A.bracket(G(1), G(-1)))
print("[G(0), G(1/2)] =", A.bracket(G(0), G(h)))

# Every basis pair and triple up to index 2 passes both identities.
bad, pairs, triples = A.identity_sweep(2, ordered=True)
print(f"sweep: {pairs} pairs, {triples} triples, {len(bad)} violations")

# The rank-2 instance indexes by Z + Zθ, with θ a formal transcendental.
R = rank2()
g = 1 + THETA
print(f"[L({g}), L({-g})] =", R.bracket(R.L(g), R.L(-g)))
