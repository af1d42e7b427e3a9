"""Basis, elements and the superbracket of the (generalized) twisted N=2 algebra.

Indices are integer coordinate tuples.  The first coordinate counts halves
(its unit realizes to 1/2, which is also the shift ``s``); further coordinates
count copies of a transcendental generator.  A point lies in Γ when its first
coordinate is even and in Γ_s = s + Γ when it is odd.

The twisted algebra is the rank-1 instance (Γ = Z, Γ_s = 1/2 + Z); the shipped
rank-2 instance has Γ = Z + Zθ.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .scalars import ONE, THETA, ZERO, Scalar, as_scalar

__all__ = [
    "BasisVector",
    "Element",
    "AlgebraInstance",
    "MIXED",
    "twisted",
    "rank2",
    "format_index",
    "twisted_table_bracket",
]

KIND_ORDER = {"L": 0, "T": 1, "G": 2, "C": 3}
MIXED = "mixed"


class BasisVector(NamedTuple):
    kind: str
    index: tuple = ()

    @property
    def parity(self):
        return 1 if self.kind == "G" else 0

    def sort_key(self):
        return (KIND_ORDER[self.kind], self.index)

    def __str__(self):
        if self.kind == "C":
            return "C"
        return f"{self.kind}({format_index(self.index)})"


def format_index(coords):
    """Render index coordinates as the realized value, e.g. ``3/2`` or ``1+θ``."""
    half = Fraction(coords[0], 2)
    parts = []
    if half or len(coords) == 1:
        parts.append(str(half))
    for k, b in enumerate(coords[1:]):
        if not b:
            continue
        sym = "θ" if k == 0 else f"θ{k + 1}"
        if b == 1:
            s = sym
        elif b == -1:
            s = "-" + sym
        else:
            s = f"{b}*{sym}"
        if parts and not s.startswith("-"):
            s = "+" + s
        parts.append(s)
    return "".join(parts) or "0"


def _scalar_str(c):
    """Coefficient prefix for a term; returns (sign, text) with text '' for unit."""
    if c.is_rational():
        q = c.to_fraction()
        sign = "-" if q < 0 else "+"
        q = abs(q)
        return sign, "" if q == 1 else f"{q}*"
    return "+", f"({c})*"


class Element:
    """A finite linear combination of basis vectors with Scalar coefficients.

    Value-semantic: arithmetic returns new elements and zero coefficients are
    never stored.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for b, c in dict(terms).items():
                c = as_scalar(c)
                if c:
                    clean[b] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms):
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def basis(cls, b, coeff=ONE):
        return cls._wrap({b: as_scalar(coeff)}) if coeff else cls._wrap({})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.items())

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def coeff(self, b):
        return self.terms.get(b, ZERO)

    def support(self):
        return set(self.terms)

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        out = dict(self.terms)
        for b, c in other.terms.items():
            v = out.get(b)
            v = c if v is None else v + c
            if v:
                out[b] = v
            else:
                out.pop(b, None)
        return Element._wrap(out)

    def __neg__(self):
        return Element._wrap({b: -c for b, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __mul__(self, s):
        try:
            s = as_scalar(s)
        except TypeError:
            return NotImplemented
        if not s:
            return Element._wrap({})
        return Element._wrap({b: c * s for b, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def parity(self):
        """0, 1, or MIXED; the zero element reports 0."""
        ps = {b.parity for b in self.terms}
        if len(ps) > 1:
            return MIXED
        return ps.pop() if ps else 0

    def degree(self, rank):
        """Common degree (coordinate tuple) of all terms, MIXED, or None for zero."""
        degs = {(0,) * rank if b.kind == "C" else b.index for b in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            return MIXED
        return degs.pop()

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for b, c in self.items():
            sign, coef = _scalar_str(c)
            if out:
                out.append(f" {sign} {coef}{b}")
            else:
                out.append(f"{'-' if sign == '-' else ''}{coef}{b}")
        return "".join(out)

    def __repr__(self):
        return f"Element({str(self)!r})"


_C = BasisVector("C", ())


@dataclass(frozen=True)
class AlgebraInstance:
    """A concrete algebra: index lattice realization and central-charge switch.

    ``generators[k]`` is the field value of the k-th coordinate unit; the
    first unit is the shift ``s`` (so ``2s`` generates the first Γ direction).
    """

    name: str
    generators: tuple
    central: bool = True
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def rank(self):
        return len(self.generators)

    @property
    def zero(self):
        return (0,) * self.rank

    @property
    def s(self):
        return (1,) + (0,) * (self.rank - 1)

    @property
    def gamma_generators(self):
        """Coordinates of the Z-basis of Γ: 2s, then the remaining units."""
        gens = [(2,) + (0,) * (self.rank - 1)]
        for k in range(1, self.rank):
            e = [0] * self.rank
            e[k] = 1
            gens.append(tuple(e))
        return gens

    @property
    def C(self):
        return _C

    # -- indices ---------------------------------------------------------

    @staticmethod
    def in_gamma(idx):
        return idx[0] % 2 == 0

    def realize(self, idx):
        key = ("r", idx)
        v = self._cache.get(key)
        if v is None:
            v = ZERO
            for c, g in zip(idx, self.generators):
                if c:
                    v = v + g * c
            self._cache[key] = v
        return v

    def index(self, value):
        """Convert a user index to coordinates.

        Accepts coordinate tuples, rationals (rank 1: multiples of 1/2), rational
        strings, or Scalars of the form ``x + b*θ`` (rank 2).
        """
        if isinstance(value, tuple):
            if len(value) != self.rank or not all(isinstance(v, int) for v in value):
                raise ValueError(f"bad coordinate tuple {value!r} for rank {self.rank}")
            return value
        s = as_scalar(value)
        if self.rank == 1:
            if not s.is_rational():
                raise ValueError(f"index {s} is not rational")
            q = s.to_fraction() * 2
            if q.denominator != 1:
                raise ValueError(f"index {s} is not in (1/2)Z")
            return (int(q),)
        if self.rank == 2 and self.generators[1] == THETA:
            if not s.is_polynomial() or s.degree() > 1:
                raise ValueError(f"index {s} is not of the form x + b*θ")
            cs = s.coefficients() + [(Fraction(0), Fraction(0))] * 2
            (x, xi), (b, bi) = cs[0], cs[1]
            if xi or bi:
                raise ValueError(f"index {s} has imaginary part")
            if (2 * x).denominator != 1 or b.denominator != 1:
                raise ValueError(f"index {s} is not in Γ ∪ Γ_s")
            return (int(2 * x), int(b))
        raise ValueError("index conversion needs a coordinate tuple for this instance")

    def basis(self, kind, value=None):
        if kind == "C":
            return _C
        idx = self.index(value)
        self.check_basis(BasisVector(kind, idx))
        return BasisVector(kind, idx)

    def check_basis(self, b):
        """Raise ValueError when ``b`` violates the sector rules."""
        if b.kind == "C":
            return
        if b.kind not in ("L", "T", "G"):
            raise ValueError(f"unknown basis kind {b.kind!r}")
        if len(b.index) != self.rank:
            raise ValueError(f"{b} has rank {len(b.index)} index; instance has rank {self.rank}")
        if b.kind == "L" and not self.in_gamma(b.index):
            raise ValueError(f"L index {format_index(b.index)} is not in Γ")
        if b.kind == "T" and self.in_gamma(b.index):
            raise ValueError(f"T index {format_index(b.index)} is not in Γ_s")

    def L(self, value):
        return Element.basis(self.basis("L", value))

    def T(self, value):
        return Element.basis(self.basis("T", value))

    def G(self, value):
        return Element.basis(self.basis("G", value))

    def c(self):
        return Element.basis(_C)

    def degree(self, b):
        return self.zero if b.kind == "C" else b.index

    # -- bracket -----------------------------------------------------------

    def bracket_basis(self, x, y):
        """[x, y] for basis vectors, as a dict {BasisVector: Scalar} (shared, do not mutate)."""
        key = (x, y)
        cache = self._cache
        out = cache.get(key)
        if out is None:
            out = self._bracket(x, y)
            cache[key] = out
        return out

    def _bracket(self, x, y):
        kx, ky = KIND_ORDER[x.kind], KIND_ORDER[y.kind]
        if kx > ky:
            # never both odd here, so [x, y] = -[y, x]
            return {b: -c for b, c in self._bracket(y, x).items()}
        if x.kind == "C" or y.kind == "C":
            return {}
        a, b = x.index, y.index
        ab = tuple(p + q for p, q in zip(a, b))
        central = self.central and ab == self.zero
        A = self.realize(a)
        B = self.realize(b)
        out = {}
        if x.kind == "L":
            if y.kind == "L":
                c = A - B
                if c:
                    out[BasisVector("L", ab)] = c
                if central:
                    z = (A * A * A - A) / 12
                    if z:
                        out[_C] = z
            elif y.kind == "T":
                c = -B
                if c:
                    out[BasisVector("T", ab)] = c
            else:
                c = A / 2 - B
                if c:
                    out[BasisVector("G", ab)] = c
        elif x.kind == "T":
            if y.kind == "T":
                if central:
                    out[_C] = A / 3
            else:
                out[BasisVector("G", ab)] = ONE
        else:
            ga, gb = self.in_gamma(a), self.in_gamma(b)
            if ga == gb:
                sign = 1 if ga else -1
                out[BasisVector("L", ab)] = as_scalar(2 * sign)
                if central:
                    z = (A * A - Fraction(1, 4)) / 3
                    if z:
                        out[_C] = z * sign
            else:
                c = (B - A) if ga else (A - B)
                if c:
                    out[BasisVector("T", ab)] = c
        return out

    def bracket(self, x, y):
        """Bilinear superbracket of two Elements."""
        out = {}
        for bx, cx in x.terms.items():
            for by, cy in y.terms.items():
                br = self.bracket_basis(bx, by)
                if not br:
                    continue
                k = cx * cy
                for b, c in br.items():
                    v = out.get(b, ZERO) + k * c
                    if v:
                        out[b] = v
                    else:
                        out.pop(b, None)
        return Element._wrap(out)

    def _br(self, x, y):
        return Element._wrap(dict(self.bracket_basis(x, y)))

    def jacobi_residual(self, x, y, z):
        """Cyclic super-Jacobi sum for basis vectors; zero for a valid table.

        (-1)^{|x||z|}[[x,y],z] + (-1)^{|y||x|}[[y,z],x] + (-1)^{|z||y|}[[z,x],y]
        """
        px, py, pz = x.parity, y.parity, z.parity
        out = {}
        br = self.bracket_basis
        for (a, b, c, odd) in ((x, y, z, px & pz), (y, z, x, py & px), (z, x, y, pz & py)):
            for w, cw in br(a, b).items():
                for v, cv in br(w, c).items():
                    k = cw * cv
                    acc = out.get(v, ZERO) + (-k if odd else k)
                    if acc:
                        out[v] = acc
                    else:
                        out.pop(v, None)
        return Element._wrap(out)

    def antisymmetry_residual(self, x, y):
        """[x, y] + (-1)^{|x||y|} [y, x] for basis vectors."""
        a = self._br(x, y)
        b = self._br(y, x)
        return a - b if (x.parity and y.parity) else a + b

    def identity_sweep(self, bound, ordered=False):
        """Antisymmetry over all window pairs and super-Jacobi over window triples.

        Returns ``(violations, n_pairs, n_triples)`` where violations lists
        ``(identity, operands, residual)`` for every nonzero residual.  Once
        antisymmetry holds, permuting a triple only changes the Jacobi sum by a
        sign, so unordered triples suffice unless ``ordered`` is set.
        """
        basis = self.window_basis(bound)
        bad = []
        n_pairs = n_triples = 0
        for x, y in itertools.combinations_with_replacement(basis, 2):
            n_pairs += 1
            r = self.antisymmetry_residual(x, y)
            if r:
                bad.append(("antisymmetry", (x, y), r))
        triples = (itertools.product(basis, repeat=3) if ordered
                   else itertools.combinations_with_replacement(basis, 3))
        for x, y, z in triples:
            n_triples += 1
            r = self.jacobi_residual(x, y, z)
            if r:
                bad.append(("jacobi", (x, y, z), r))
        return bad, n_pairs, n_triples

    def ad(self, z):
        """The operator x -> [z, x]."""

        def op(x):
            return self.bracket(z, x)

        op.generator = z
        return op

    # -- windows -------------------------------------------------------------

    def window_basis(self, bound):
        """All basis vectors with |first coord / 2| <= bound and |other coords| <= bound, plus C."""
        bound = Fraction(bound)
        amax = int(2 * bound)
        others = int(bound)
        ranges = [range(-amax, amax + 1)] + [range(-others, others + 1)] * (self.rank - 1)
        idxs = [()]
        for r in ranges:
            idxs = [i + (v,) for i in idxs for v in r]
        out = []
        for kind in ("L", "T", "G"):
            for idx in idxs:
                if kind == "L" and not self.in_gamma(idx):
                    continue
                if kind == "T" and self.in_gamma(idx):
                    continue
                out.append(BasisVector(kind, idx))
        out.append(_C)
        out.sort(key=BasisVector.sort_key)
        return out

    def in_window(self, b, bound):
        if b.kind == "C":
            return True
        bound = Fraction(bound)
        if abs(Fraction(b.index[0], 2)) > bound:
            return False
        return all(abs(v) <= bound for v in b.index[1:])

    def homogeneous_basis(self, parity, degree):
        """Basis of the homogeneous component of given parity and degree."""
        if parity:
            return [BasisVector("G", degree)]
        if self.in_gamma(degree):
            out = [BasisVector("L", degree)]
            if degree == self.zero:
                out.append(_C)
            return out
        return [BasisVector("T", degree)]

    def __str__(self):
        return self.name


def twisted(central=True):
    """The twisted N=2 superconformal algebra (rank 1, unit 1/2)."""
    return AlgebraInstance("twisted" if central else "twisted-nc", (as_scalar(Fraction(1, 2)),), central)


def rank2(central=True):
    """The generalized algebra with Γ = Z + Zθ and s = 1/2."""
    return AlgebraInstance("rank2" if central else "rank2-nc", (as_scalar(Fraction(1, 2)), THETA), central)


def twisted_table_bracket(x, y, central=True):
    """[x, y] straight from the (-1)^{2p} form of the twisted bracket table.

    Independent of :meth:`AlgebraInstance.bracket_basis`; used to cross-check
    the sector-based table on the rank-1 instance.  Indices are rank-1
    coordinate tuples (twice the index value).
    """

    def val(b):
        return Fraction(b.index[0], 2)

    def vec(kind, v):
        return BasisVector(kind, (int(2 * v),))

    swap = KIND_ORDER[x.kind] > KIND_ORDER[y.kind]
    if swap:
        x, y = y, x
    out = {}
    if x.kind == "C" or y.kind == "C":
        pass
    elif x.kind == "L" and y.kind == "L":
        m, n = val(x), val(y)
        if m - n:
            out[vec("L", m + n)] = m - n
        if central and m + n == 0 and m**3 - m:
            out[_C] = (m**3 - m) / 12
    elif x.kind == "L" and y.kind == "T":
        m, r = val(x), val(y)
        out[vec("T", r + m)] = -r
    elif x.kind == "L" and y.kind == "G":
        m, p = val(x), val(y)
        if m / 2 - p:
            out[vec("G", p + m)] = m / 2 - p
    elif x.kind == "T" and y.kind == "T":
        r, s = val(x), val(y)
        if central and r + s == 0:
            out[_C] = r / 3
    elif x.kind == "T" and y.kind == "G":
        r, p = val(x), val(y)
        out[vec("G", p + r)] = Fraction(1)
    else:
        p, q = val(x), val(y)
        if (p + q).denominator == 1:
            sgn = -1 if int(2 * p) % 2 else 1
            out[vec("L", p + q)] = 2 * sgn
            if central and p + q == 0 and p * p - Fraction(1, 4):
                out[_C] = sgn * (p * p - Fraction(1, 4)) / 3
        else:
            c = (1 if int(2 * p) % 2 else -1) * (p - q)
            if c:
                out[vec("T", p + q)] = c
    if swap:
        sign = 1 if (x.parity and y.parity) else -1
        out = {b: c * sign for b, c in out.items()}
    return Element({b: as_scalar(c) for b, c in out.items()})
