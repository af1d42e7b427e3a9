"""Homogeneous derivations on finite basis windows.

A derivation of parity ``p`` and degree ``δ`` is stored as a table of images
of window basis vectors.  :func:`solve_derivation_space` assembles the Leibniz
identity over every pair of window vectors as one exact linear system, takes
its kernel, restricts it to an inner window and compares the result with the
inner derivations ``ad(z)`` (and, in degree zero on rank >= 2 lattices, with
the maps ``δ_φ`` built from additive functions on Γ).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .algebra import BasisVector, Element, format_index
from .linalg import kernel_basis, rref, solve_in_span
from .scalars import ONE, ZERO, as_scalar

__all__ = [
    "WindowError",
    "Window",
    "DerivationTable",
    "GammaHom",
    "Residual",
    "valid_pairs",
    "derivation_residuals",
    "inner_generator",
    "inner_oracle",
    "delta_phi",
    "ad_table",
    "solve_derivation_space",
    "DerivationReport",
]


class WindowError(ValueError):
    """An evaluation needed a basis vector outside the available window."""


class Residual(NamedTuple):
    x: BasisVector
    y: BasisVector
    value: Element

    def __str__(self):
        return f"({self.x}, {self.y}): {self.value}"


@dataclass(frozen=True)
class Window:
    """The finite basis set B_N of an algebra instance."""

    algebra: object
    bound: Fraction

    def __post_init__(self):
        object.__setattr__(self, "bound", Fraction(self.bound))
        if self.bound <= 0:
            raise ValueError("window bound must be positive")

    def basis(self):
        return self.algebra.window_basis(self.bound)

    def __contains__(self, b):
        return self.algebra.in_window(b, self.bound)


def _parity(p):
    if p in (0, 1):
        return int(p)
    if p in ("even", "odd"):
        return 0 if p == "even" else 1
    raise ValueError(f"parity must be even/odd, got {p!r}")


@dataclass
class DerivationTable:
    """A homogeneous linear map given on a finite set of basis vectors."""

    algebra: object
    parity: int
    degree: tuple
    images: dict
    label: str = ""

    def image(self, b):
        try:
            return self.images[b]
        except KeyError:
            raise WindowError(f"image of {b} is not defined on this table") from None

    def __call__(self, x):
        out = Element()
        for b, c in x.terms.items():
            out = out + self.image(b) * c
        return out

    def restrict(self, basis):
        return DerivationTable(self.algebra, self.parity, self.degree,
                               {b: self.images[b] for b in basis if b in self.images}, self.label)

    def check_homogeneous(self):
        """Raise ValueError if some image has the wrong parity or degree."""
        alg = self.algebra
        for b, im in self.images.items():
            if not im:
                continue
            if b.kind == "C":
                if self.parity or any(t.kind != "C" for t in im.terms):
                    raise ValueError(f"image of C must be a multiple of C, got {im}")
                continue
            want = tuple(p + q for p, q in zip(alg.degree(b), self.degree))
            if im.degree(alg.rank) != want or im.parity() != (b.parity ^ self.parity):
                raise ValueError(f"image of {b} is not homogeneous of the declared type: {im}")

    def __eq__(self, other):
        if not isinstance(other, DerivationTable):
            return NotImplemented
        keys = set(self.images) | set(other.images)
        return all(self.images.get(k, Element()) == other.images.get(k, Element()) for k in keys)

    def __str__(self):
        lines = [f"# {self.label or 'derivation'} parity={self.parity} degree={format_index(self.degree)}"]
        for b in sorted(self.images, key=BasisVector.sort_key):
            lines.append(f"{b} -> {self.images[b]}")
        return "\n".join(lines)


@dataclass(frozen=True)
class GammaHom:
    """An additive map φ: Γ -> F given by its values on the Z-basis of Γ.

    Calling it on any point u of Γ ∪ Γ_s returns φ(2u)/2, which is φ(u) on Γ.
    """

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(as_scalar(v) for v in self.values))

    def __call__(self, coords):
        # coords[0] counts halves, so φ(2u)/2 = (coords[0]*φ(1) + 2*Σ b_k φ(g_k)) / 2
        v = self.values[0] * Fraction(coords[0], 2)
        for b, phi in zip(coords[1:], self.values[1:]):
            if b:
                v = v + phi * b
        return v


def valid_pairs(algebra, basis, domain=None):
    """Unordered pairs from ``basis`` whose bracket support lies in ``domain``."""
    basis = list(basis)
    domain = set(basis) if domain is None else set(domain)
    out = []
    for i, x in enumerate(basis):
        if x not in domain:
            continue
        for y in basis[i:]:
            if y not in domain:
                continue
            if all(z in domain for z in algebra.bracket_basis(x, y)):
                out.append((x, y))
    return out


def derivation_residuals(d, pairs):
    """d([x,y]) - [d(x),y] - (-1)^{|d||x|}[x,d(y)] for each pair."""
    alg = d.algebra
    out = []
    for x, y in pairs:
        br = alg.bracket_basis(x, y)
        try:
            lhs = d(Element._wrap(dict(br)))
        except WindowError as e:
            raise WindowError(f"pair ({x}, {y}): d([x,y]) escapes the window ({e})") from None
        dx = d.image(x)
        dy = d.image(y)
        X = Element.basis(x)
        Y = Element.basis(y)
        t2 = alg.bracket(X, dy)
        if d.parity and x.parity:
            t2 = -t2
        out.append(Residual(x, y, lhs - alg.bracket(dx, Y) - t2))
    return out


def inner_generator(algebra, parity, degree):
    """The (sign, basis vector) with sign*ad(basis vector) the normalized inner oracle.

    Odd degree p: -G_p.  Even degree 0: -L_0.  Even p in Γ: L_p.  Even p in Γ_s: T_p.
    """
    parity = _parity(parity)
    degree = algebra.index(degree)
    if parity:
        return -1, BasisVector("G", degree)
    if degree == algebra.zero:
        return -1, BasisVector("L", degree)
    if algebra.in_gamma(degree):
        return 1, BasisVector("L", degree)
    return 1, BasisVector("T", degree)


def ad_table(algebra, z, basis, parity, degree, label=""):
    """Restriction of ad(z) to ``basis`` as a DerivationTable."""
    op = algebra.ad(z)
    return DerivationTable(algebra, _parity(parity), algebra.index(degree),
                           {b: op(Element.basis(b)) for b in basis}, label)


def inner_oracle(algebra, parity, degree, basis):
    """Normalized inner derivation of the given type, restricted to ``basis``."""
    sign, g = inner_generator(algebra, parity, degree)
    z = Element.basis(g, sign)
    return ad_table(algebra, z, basis, parity, degree, label=f"ad({z})")


def delta_phi(algebra, phi, basis):
    """δ_φ: L_γ -> φ(γ)L_γ, T_μ -> φ(2μ)/2 T_μ, G_u likewise, C -> 0."""
    images = {}
    for b in basis:
        if b.kind == "C":
            images[b] = Element()
        else:
            images[b] = Element.basis(b, phi(b.index))
    label = "delta(" + ",".join(str(v) for v in phi.values) + ")"
    return DerivationTable(algebra, 0, algebra.zero, images, label)


# -- the window solver ----------------------------------------------------------


def _max_shift(degree):
    return max([abs(Fraction(degree[0], 2))] + [Fraction(abs(b)) for b in degree[1:]])


@dataclass
class Match:
    coefficients: tuple = None
    references: tuple = ()

    @property
    def matched(self):
        return self.coefficients is not None


@dataclass
class DerivationReport:
    algebra: object
    parity: int
    degree: tuple
    window: Fraction
    inner: Fraction
    unknowns: list
    kernel: list
    tables: list
    references: list
    matches: list
    full_dimension: int = 0
    equations: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def dimension(self):
        return len(self.tables)

    @property
    def all_matched(self):
        return all(m.matched for m in self.matches)

    def kernel_column(self, source, target):
        """Values of one unknown (image coefficient) across the full kernel basis."""
        col = self.unknowns.index((source, target))
        return [v[col] for v in self.kernel]

    def match_lines(self):
        lines = []
        for k, m in enumerate(self.matches):
            if not m.matched:
                lines.append(f"solution {k}: unmatched")
                continue
            terms = {name: c for c, (name, _) in zip(m.coefficients, self.references) if c}
            lines.append(f"solution {k}: {_combo(terms)}")
        return lines

    def match_summary(self):
        names = [name for name, _ in self.references]
        if self.all_matched and len(names) == 1 and self.dimension == 1:
            return names[0]
        if self.all_matched:
            return "span(" + ", ".join(names) + ")"
        return "unmatched"

    def to_dict(self):
        return {
            "instance": self.algebra.name,
            "parity": "odd" if self.parity else "even",
            "degree": format_index(self.degree),
            "N": str(self.window),
            "K": str(self.inner),
            "equations": self.equations,
            "unknowns": len(self.unknowns),
            "full_dimension": self.full_dimension,
            "dimension": self.dimension,
            "references": [name for name, _ in self.references],
            "match": self.match_summary(),
            "matches": [
                None if not m.matched else [str(c) for c in m.coefficients] for m in self.matches
            ],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def to_text(self):
        d = self.to_dict()
        head = (f"instance={d['instance']} parity={d['parity']} degree={d['degree']} "
                f"N={d['N']} K={d['K']}")
        lines = [head, f"dim={d['dimension']}, match={d['match']}"]
        lines += self.match_lines()
        return "\n".join(lines)


def _combo(terms):
    out = ""
    for name, c in terms.items():
        text = str(c)
        neg = c.is_rational() and c.to_fraction() < 0
        if neg:
            text = str(-c)
        elif not c.is_rational():
            text = f"({text})"
        piece = name if text == "1" else f"{text}*{name}"
        if not out:
            out = ("-" if neg else "") + piece
        else:
            out += (" - " if neg else " + ") + piece
    return out or "0"


def _references(algebra, parity, degree, basis):
    """Named reference tables the restricted kernel is compared against."""
    if parity == 0 and degree == algebra.zero and algebra.rank > 1:
        refs = []
        for k in range(algebra.rank):
            vals = [ZERO] * algebra.rank
            vals[k] = ONE
            phi = GammaHom(tuple(vals))
            refs.append((f"delta(phi_{k + 1})", delta_phi(algebra, phi, basis)))
        return refs
    _, g = inner_generator(algebra, parity, degree)
    return [(f"ad({g})", ad_table(algebra, Element.basis(g), basis, parity, degree, f"ad({g})"))]


def solve_derivation_space(algebra, parity, degree, window, inner):
    """Solve for all derivations of one (parity, degree) on B_window, restricted to B_inner.

    Requires ``window >= 2`` and ``inner + 2*|degree| <= window``.
    """
    parity = _parity(parity)
    degree = algebra.index(degree)
    window = Fraction(window)
    inner = Fraction(inner)
    if window < 2:
        raise WindowError(f"window N={window} too small: N >= 2 is required")
    if inner <= 0 or inner + 2 * _max_shift(degree) > window:
        raise WindowError(
            f"window too small: need 0 < K and K + 2*|degree| <= N "
            f"(K={inner}, |degree|={_max_shift(degree)}, N={window})"
        )
    basis = algebra.window_basis(window)
    domain = set(basis)

    # unknowns: one per (source, target) allowed by homogeneity
    unknowns = []
    by_source = {}
    for b in basis:
        if b.kind == "C":
            # the centre is preserved: only an even degree-0 map may rescale C
            targets = [b] if (parity == 0 and degree == algebra.zero) else []
        else:
            tdeg = tuple(p + q for p, q in zip(b.index, degree))
            targets = algebra.homogeneous_basis(b.parity ^ parity, tdeg)
        cols = []
        for t in targets:
            cols.append((len(unknowns), t))
            unknowns.append((b, t))
        by_source[b] = cols

    rows = []
    bracket_basis = algebra.bracket_basis
    for i, x in enumerate(basis):
        sx = -1 if (parity and x.parity) else 1
        for y in basis[i:]:
            br = bracket_basis(x, y)
            if any(z not in domain for z in br):
                continue
            acc = {}

            def add(w, col, c):
                r = acc.setdefault(w, {})
                v = r.get(col, ZERO) + c
                if v:
                    r[col] = v
                else:
                    r.pop(col, None)

            for z, c in br.items():
                for col, t in by_source[z]:
                    add(t, col, c)
            for col, t in by_source[x]:
                for w, c in bracket_basis(t, y).items():
                    add(w, col, -c)
            for col, t in by_source[y]:
                for w, c in bracket_basis(x, t).items():
                    add(w, col, -c if sx == 1 else c)
            rows.extend(r for r in acc.values() if r)

    kernel = kernel_basis(rows, len(unknowns))

    inner_basis = [b for b in basis if algebra.in_window(b, inner)]
    inner_set = set(inner_basis)
    keep = [j for j, (src, _) in enumerate(unknowns) if src in inner_set]
    projected = [{k: v[j] for k, j in enumerate(keep) if v[j]} for v in kernel]
    red = rref(projected)
    restricted = [[row.get(k, ZERO) for k in range(len(keep))] for row in red.values()]

    def to_table(vec, label):
        images = {b: Element() for b in inner_basis}
        for k, j in enumerate(keep):
            if vec[k]:
                src, tgt = unknowns[j]
                images[src] = images[src] + Element.basis(tgt, vec[k])
        return DerivationTable(algebra, parity, degree, images, label)

    tables = [to_table(v, f"solution {k}") for k, v in enumerate(restricted)]

    refs = _references(algebra, parity, degree, inner_basis)
    ref_vecs = []
    for _, tab in refs:
        vec = []
        for j in keep:
            src, tgt = unknowns[j]
            vec.append(tab.image(src).coeff(tgt))
        ref_vecs.append(vec)
    matches = [Match(solve_in_span(v, ref_vecs), tuple(n for n, _ in refs)) for v in restricted]

    return DerivationReport(
        algebra=algebra,
        parity=parity,
        degree=degree,
        window=window,
        inner=inner,
        unknowns=unknowns,
        kernel=kernel,
        tables=tables,
        references=refs,
        matches=matches,
        full_dimension=len(kernel),
        equations=len(rows),
    )
