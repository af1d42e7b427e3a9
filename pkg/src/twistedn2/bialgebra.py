"""Tensor machinery for Lie super-bialgebra checks.

Tensors are sparse maps from tuples of basis vectors to scalars.  The
operations are the super-twist τ, the super-cyclic map ξ, the adjoint
diagonal action, the coboundary Δ_r, the cocycle identity and the classical
Yang-Baxter expression c(r).
"""

from __future__ import annotations

from .algebra import MIXED
from .scalars import ONE, ZERO, as_scalar

__all__ = [
    "Tensor",
    "tensor",
    "tau",
    "xi",
    "diag_action",
    "coboundary_delta",
    "cocycle_residual",
    "graded_cocycle_residual",
    "cybe",
    "skew_check",
    "ParityError",
]


class ParityError(ValueError):
    """An operation needed a parity-homogeneous input."""


def _add(out, key, c):
    v = out.get(key, ZERO) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class Tensor:
    """An element of g^{⊗n}, stored as {(b_1, ..., b_n): coefficient}."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity, terms=None):
        self.arity = arity
        clean = {}
        for key, c in (terms or {}).items():
            if len(key) != arity:
                raise ValueError(f"term {key} does not have {arity} factors")
            c = as_scalar(c)
            if c:
                clean[tuple(key)] = c
        self.terms = clean

    @classmethod
    def _wrap(cls, arity, terms):
        obj = object.__new__(cls)
        obj.arity = arity
        obj.terms = terms
        return obj

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: tuple(b.sort_key() for b in kv[0]))

    def __add__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        if other.arity != self.arity:
            raise ValueError("cannot add tensors of different arity")
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add(out, k, c)
        return Tensor._wrap(self.arity, out)

    def __neg__(self):
        return Tensor._wrap(self.arity, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        try:
            s = as_scalar(s)
        except TypeError:
            return NotImplemented
        if not s:
            return Tensor._wrap(self.arity, {})
        return Tensor._wrap(self.arity, {k: c * s for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Tensor):
            return self.arity == other.arity and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def parity(self):
        """Sum of factor parities, common to all terms; MIXED otherwise (0 for zero)."""
        ps = {sum(b.parity for b in k) % 2 for k in self.terms}
        if len(ps) > 1:
            return MIXED
        return ps.pop() if ps else 0

    def degree(self, rank):
        degs = set()
        for k in self.terms:
            d = [0] * rank
            for b in k:
                if b.kind != "C":
                    d = [p + q for p, q in zip(d, b.index)]
            degs.add(tuple(d))
        if not degs:
            return None
        return degs.pop() if len(degs) == 1 else MIXED

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for key, c in self.items():
            body = "⊗".join(str(b) for b in key)
            if c.is_rational():
                q = c.to_fraction()
                sign = "-" if q < 0 else "+"
                coef = "" if abs(q) == 1 else f"{abs(q)}*"
            else:
                sign, coef = "+", f"({c})*"
            if out:
                out.append(f" {sign} {coef}{body}")
            else:
                out.append(f"{'-' if sign == '-' else ''}{coef}{body}")
        return "".join(out)

    def __repr__(self):
        return f"Tensor({str(self)!r})"


def _factor_terms(f):
    if isinstance(f, Tensor):
        return f.arity, list(f.terms.items())
    return 1, [((b,), c) for b, c in f.terms.items()]


def tensor(*factors):
    """x_1 ⊗ ... ⊗ x_n for Elements; Tensor factors are flattened in."""
    terms = {(): ONE}
    arity = 0
    for f in factors:
        n, parts = _factor_terms(f)
        arity += n
        new = {}
        for k, c in terms.items():
            for k2, c2 in parts:
                _add(new, k + k2, c * c2)
        terms = new
    return Tensor._wrap(arity, terms)


def tau(t):
    """Super-twist x⊗y -> (-1)^{|x||y|} y⊗x."""
    out = {}
    for (x, y), c in t.terms.items():
        _add(out, (y, x), -c if (x.parity and y.parity) else c)
    return Tensor._wrap(2, out)


def xi(t):
    """Super-cyclic map x1⊗x2⊗x3 -> (-1)^{|x1|(|x2|+|x3|)} x2⊗x3⊗x1."""
    out = {}
    for (a, b, c3), c in t.terms.items():
        odd = a.parity and (b.parity + c3.parity) % 2
        _add(out, (b, c3, a), -c if odd else c)
    return Tensor._wrap(3, out)


def _homogeneous_parity(x, what):
    p = x.parity()
    if p == MIXED:
        raise ParityError(f"{what} must have homogeneous parity, got {x}")
    return p


def diag_action(algebra, x, t):
    """x * Σ a⊗b = Σ [x,a]⊗b + (-1)^{|x||a|} a⊗[x,b]  (x parity-homogeneous)."""
    _homogeneous_parity(x, "x")
    out = {}
    for bx, cx in x.terms.items():
        for (a, b), c in t.terms.items():
            k = cx * c
            for w, cw in algebra.bracket_basis(bx, a).items():
                _add(out, (w, b), k * cw)
            sign = -1 if (bx.parity and a.parity) else 1
            for w, cw in algebra.bracket_basis(bx, b).items():
                _add(out, (a, w), k * cw if sign == 1 else -(k * cw))
    return Tensor._wrap(2, out)


def coboundary_delta(algebra, r, x):
    """Δ_r(x) = (-1)^{|r||x|} x * r; r and x must be parity-homogeneous."""
    pr = _homogeneous_parity(r, "r")
    px = _homogeneous_parity(x, "x")
    out = diag_action(algebra, x, r)
    return -out if (pr and px) else out


def cocycle_residual(algebra, r, x, y):
    """Δ_r([x,y]) - x*Δ_r(y) + (-1)^{|x||y|} y*Δ_r(x)."""
    _homogeneous_parity(r, "r")
    px = _homogeneous_parity(x, "x")
    py = _homogeneous_parity(y, "y")
    xy = algebra.bracket(x, y)
    out = coboundary_delta(algebra, r, xy) if xy else Tensor._wrap(2, {})
    out = out - diag_action(algebra, x, coboundary_delta(algebra, r, y))
    t = diag_action(algebra, y, coboundary_delta(algebra, r, x))
    return out - t if (px and py) else out + t


def graded_cocycle_residual(algebra, r, x, y):
    """Cocycle residual with the Koszul signs of a map of parity |r|.

    Δ_r([x,y]) - (-1)^{|r||x|} x*Δ_r(y) + (-1)^{|x||y| + |r||y|} y*Δ_r(x).
    Agrees with :func:`cocycle_residual` for even r; for odd r this is the
    form that coboundaries actually satisfy.
    """
    pr = _homogeneous_parity(r, "r")
    px = _homogeneous_parity(x, "x")
    py = _homogeneous_parity(y, "y")
    xy = algebra.bracket(x, y)
    out = coboundary_delta(algebra, r, xy) if xy else Tensor._wrap(2, {})
    a = diag_action(algebra, x, coboundary_delta(algebra, r, y))
    b = diag_action(algebra, y, coboundary_delta(algebra, r, x))
    out = out + a if (pr and px) else out - a
    return out - b if (px * py + pr * py) % 2 else out + b


def cybe(algebra, r):
    """c(r) = [r12, r13] + [r12, r23] + [r13, r23] in g⊗g⊗g."""
    out = {}
    terms = list(r.terms.items())
    for (ai, bi), ci in terms:
        for (aj, bj), cj in terms:
            k = ci * cj
            sign = -1 if (aj.parity and bi.parity) else 1
            ks = k if sign == 1 else -k
            # [r12, r13] = Σ (-1)^{|a_j||b_i|} [a_i, a_j] ⊗ b_i ⊗ b_j
            for w, c in algebra.bracket_basis(ai, aj).items():
                _add(out, (w, bi, bj), ks * c)
            # [r12, r23] = Σ a_i ⊗ [b_i, a_j] ⊗ b_j
            for w, c in algebra.bracket_basis(bi, aj).items():
                _add(out, (ai, w, bj), k * c)
            # [r13, r23] = Σ (-1)^{|a_j||b_i|} a_i ⊗ a_j ⊗ [b_i, b_j]
            for w, c in algebra.bracket_basis(bi, bj).items():
                _add(out, (ai, aj, w), ks * c)
    return Tensor._wrap(3, out)


def skew_residual(r):
    """r + τ(r); its terms name the witnesses when r is not skew."""
    return r + tau(r)


def skew_check(r):
    """True iff r + τ(r) = 0."""
    return not skew_residual(r)
