"""Automorphisms as finite tables.

An :class:`AutoTable` records the images of the basis vectors of a window.
The twisted algebra has the inner family ``inner_auto(β)`` (diagonal scaling
by β^{2·index}), the order-four map ϖ and its square ε; every automorphism is
ϖ^k ∘ inner(β), which :func:`classify` recovers from a table.  The generalized
algebra is handled through :class:`GeneralizedAutoSpec`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .algebra import BasisVector, Element, twisted
from .derivations import Residual, WindowError, valid_pairs
from .scalars import I, ONE, as_scalar

__all__ = [
    "AutoTable",
    "AutoSpec",
    "GeneralizedAutoSpec",
    "ClassificationError",
    "ConstraintViolation",
    "identity_auto",
    "inner_auto",
    "varpi",
    "epsilon_auto",
    "auto_from_spec",
    "homomorphism_residuals",
    "classify",
    "generalized_auto",
]


class ClassificationError(ValueError):
    pass


class ConstraintViolation(ValueError):
    """A generalized automorphism spec breaks one of its defining identities."""

    def __init__(self, identity, witness, detail=""):
        self.identity = identity
        self.witness = witness
        msg = f"constraint {identity} fails at {witness}"
        super().__init__(f"{msg}: {detail}" if detail else msg)


@dataclass(frozen=True, eq=False)
class AutoTable:
    """Images of the basis vectors of a window under an even linear map."""

    algebra: object
    images: dict
    label: str = ""

    @property
    def domain(self):
        return sorted(self.images, key=BasisVector.sort_key)

    def image(self, b):
        try:
            return self.images[b]
        except KeyError:
            raise WindowError(f"{self.label or 'table'}: no image for {b}") from None

    def __call__(self, x):
        out = Element()
        for b, c in x.terms.items():
            out = out + self.image(b) * c
        return out

    apply = __call__

    def compose(self, other):
        """self ∘ other on other's domain."""
        return AutoTable(self.algebra, {b: self(im) for b, im in other.images.items()},
                         f"{self.label}∘{other.label}")

    def power(self, n):
        if n < 0:
            raise ValueError("negative powers are not supported; use the finite order")
        out = identity_auto(self.algebra, basis=self.images)
        for _ in range(n):
            out = self.compose(out)
        return AutoTable(self.algebra, out.images, f"{self.label}^{n}")

    def is_monomial(self):
        """Every image is a nonzero multiple of a single basis vector, and no two collide."""
        targets = set()
        for im in self.images.values():
            if len(im) != 1:
                return False
            (t,) = im.support()
            targets.add(t)
        return len(targets) == len(self.images)

    def __eq__(self, other):
        if not isinstance(other, AutoTable):
            return NotImplemented
        keys = set(self.images) | set(other.images)
        return all(self.images.get(k, Element()) == other.images.get(k, Element()) for k in keys)

    __hash__ = None

    def to_text(self):
        return "\n".join(f"{b} -> {self.images[b]}" for b in self.domain)

    __str__ = to_text

    @classmethod
    def from_text(cls, algebra, text, label="table"):
        """Parse lines ``L(1) -> -1*L(-1)``; blank lines and ``#`` comments are skipped."""
        from .parser import ParseError, evaluate, parse

        images = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "->" not in line:
                raise ParseError("expected 'basis -> image'", lineno, 1)
            lhs, rhs = line.split("->", 1)
            src = evaluate(parse(lhs, line=lineno), algebra)
            key = next(iter(src.terms), None) if isinstance(src, Element) else None
            if key is None or len(src) != 1 or src.coeff(key) != ONE:
                raise ParseError(f"left side {lhs.strip()!r} is not a basis vector", lineno, 1)
            col = len(lhs) + 3
            img = evaluate(parse(rhs, line=lineno, col=col), algebra)
            if not isinstance(img, Element):
                img = Element() if img == 0 else None
                if img is None:
                    raise ParseError("image must be an algebra element", lineno, col)
            images[key] = img
        return cls(algebra, images, label)


def _window(algebra, window, basis):
    if basis is not None:
        return list(basis)
    return algebra.window_basis(window)


def _neg_index(b):
    return BasisVector(b.kind, tuple(-v for v in b.index))


def identity_auto(algebra=None, window=4, basis=None):
    algebra = algebra or twisted()
    return AutoTable(algebra, {b: Element.basis(b) for b in _window(algebra, window, basis)}, "id")


def _require_rank1(algebra, what):
    if algebra.rank != 1:
        raise ValueError(f"{what} is defined on the twisted (rank-1) instance only")


def inner_auto(beta, algebra=None, window=4, basis=None):
    """C -> C and X_u -> β^{2u} X_u for X in {L, T, G}."""
    algebra = algebra or twisted()
    _require_rank1(algebra, "inner_auto")
    beta = as_scalar(beta)
    if not beta:
        raise ValueError("beta must be nonzero")
    images = {}
    for b in _window(algebra, window, basis):
        c = ONE if b.kind == "C" else beta ** b.index[0]
        images[b] = Element.basis(b, c)
    return AutoTable(algebra, images, f"inner({beta})")


def varpi(algebra=None, window=4, basis=None):
    """C -> -C, L_i -> -L_{-i}, T_r -> T_{-r}, G_q -> i G_{-q}."""
    algebra = algebra or twisted()
    _require_rank1(algebra, "varpi")
    coef = {"L": -ONE, "T": ONE, "G": I}
    images = {}
    for b in _window(algebra, window, basis):
        if b.kind == "C":
            images[b] = Element.basis(b, -ONE)
        else:
            images[b] = Element.basis(_neg_index(b), coef[b.kind])
    return AutoTable(algebra, images, "varpi")


def epsilon_auto(algebra=None, window=4, basis=None):
    """G_q -> -G_q, everything else fixed."""
    algebra = algebra or twisted()
    images = {}
    for b in _window(algebra, window, basis):
        images[b] = Element.basis(b, -ONE if b.kind == "G" else ONE)
    return AutoTable(algebra, images, "epsilon")


@dataclass(frozen=True)
class AutoSpec:
    """σ = ϖ^k ∘ inner(β)."""

    k: int
    beta: object

    def __post_init__(self):
        object.__setattr__(self, "k", int(self.k) % 4)
        object.__setattr__(self, "beta", as_scalar(self.beta))
        if not self.beta:
            raise ValueError("beta must be nonzero")

    def compose(self, other):
        """Spec of self ∘ other, using inner(β)∘ϖ = ϖ∘inner(1/β)."""
        b = self.beta if other.k % 2 == 0 else self.beta.inverse()
        return AutoSpec(self.k + other.k, b * other.beta)

    def table(self, algebra=None, window=4, basis=None):
        return auto_from_spec(self, algebra, window, basis)

    def __str__(self):
        return f"k={self.k},beta={self.beta}"


def auto_from_spec(spec, algebra=None, window=4, basis=None):
    algebra = algebra or twisted()
    inner = inner_auto(spec.beta, algebra, window, basis)
    w = varpi(algebra, basis=inner.images)
    out = inner
    for _ in range(spec.k):
        out = w.compose(out)
    return AutoTable(algebra, out.images, f"varpi^{spec.k}∘inner({spec.beta})")


def homomorphism_residuals(table, window=None, pairs=None):
    """σ([x,y]) - [σx, σy] for every unordered window pair whose bracket stays in the window.

    Returns one :class:`Residual` per pair; the table is a homomorphism on the
    window iff every value is zero.
    """
    alg = table.algebra
    if pairs is None:
        basis = table.domain if window is None else alg.window_basis(window)
        pairs = valid_pairs(alg, basis)
    out = []
    for x, y in pairs:
        lhs = table(Element._wrap(dict(alg.bracket_basis(x, y))))
        rhs = alg.bracket(table.image(x), table.image(y))
        out.append(Residual(x, y, lhs - rhs))
    return out


_FOURTH = {ONE: 0, I: 1, -ONE: 2, -I: 3}


def classify(table):
    """Recover the (k, β) with table == ϖ^k ∘ inner(β) on the table's window."""
    alg = table.algebra
    if alg.rank != 1:
        raise ClassificationError("classification is implemented for the twisted instance")
    L0, T_half, G0 = BasisVector("L", (0,)), BasisVector("T", (1,)), BasisVector("G", (0,))
    for b in (L0, T_half, G0, _neg_index(T_half), BasisVector("L", (2,)), BasisVector("L", (-2,))):
        if b not in table.images:
            raise ClassificationError(f"window too small: no image for {b}")
    a0 = table.images[L0].coeff(L0)
    if a0 not in (ONE, -ONE) or len(table.images[L0]) != 1:
        raise ClassificationError(f"not an automorphism of the classified form: L(0) -> {table.images[L0]}")
    t_img = table.images[T_half]
    target = T_half if a0 == ONE else _neg_index(T_half)
    beta = t_img.coeff(target)
    if not beta:
        raise ClassificationError(f"not an automorphism of the classified form: T(1/2) -> {t_img}")
    k = _FOURTH.get(table.images[G0].coeff(G0))
    if k is None or (k % 2 == 1) != (a0 == -ONE):
        raise ClassificationError(
            f"not an automorphism of the classified form: G(0) -> {table.images[G0]} with L(0) -> {table.images[L0]}")
    spec = AutoSpec(k, beta)
    rebuilt = auto_from_spec(spec, alg, basis=table.images)
    if rebuilt != table:
        bad = next(b for b in table.domain if rebuilt.images[b] != table.images[b])
        raise ClassificationError(
            f"not an automorphism of the classified form: {spec} predicts {bad} -> {rebuilt.images[bad]}, "
            f"table has {table.images[bad]}")
    return spec


@dataclass(frozen=True)
class GeneralizedAutoSpec:
    """Data of an automorphism of the Γ-graded algebra.

    ``a`` holds a_g on the Z-basis of Γ (2s first), ``e_s`` is e at the base
    point s of Γ_s, and ``root`` squares to ``epsilon``.  The rest follows from
    a_{γ+α} = ε a_γ a_α and e_{μ+γ} = ε e_μ a_γ.
    """

    epsilon: int
    a: tuple
    e_s: object
    root: object

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(as_scalar(v) for v in self.a))
        object.__setattr__(self, "e_s", as_scalar(self.e_s))
        object.__setattr__(self, "root", as_scalar(self.root))

    def a_at(self, idx):
        """a_γ for γ ∈ Γ given in coordinates; f = ε·a is a character, so a_γ = ε Π (ε a_g)^{n_g}."""
        eps = self.epsilon
        n = (idx[0] // 2,) + tuple(idx[1:])
        return prod(((self.a[j] * eps) ** n[j] for j in range(len(n))), start=ONE) * eps

    def e_at(self, idx):
        """e_μ for μ ∈ Γ_s: e_μ = ε e_s a_{μ-s}."""
        shifted = (idx[0] - 1,) + tuple(idx[1:])
        return self.e_s * self.a_at(shifted) * self.epsilon

    def multiplier(self, idx):
        """The root factor ω^u_ε attached to σ(G_u)."""
        if self.epsilon == 1 or idx[0] % 2:
            return self.root
        return -self.root


def validate_generalized(spec, algebra, window=2, basis=None):
    """Raise ConstraintViolation naming the first failed identity and its witness."""
    eps = spec.epsilon
    if eps not in (1, -1):
        raise ConstraintViolation("epsilon ∈ {±1}", eps)
    if len(spec.a) != algebra.rank:
        raise ConstraintViolation("a given on every generator of Γ", f"{len(spec.a)} values for rank {algebra.rank}")
    for j, v in enumerate(spec.a):
        if not v:
            raise ConstraintViolation("a_g ≠ 0", f"generator {j}")
    if not spec.e_s:
        raise ConstraintViolation("e_s ≠ 0", "s")
    if spec.root * spec.root != eps:
        raise ConstraintViolation("root^2 = epsilon", f"root={spec.root}", f"root^2 = {spec.root * spec.root}")
    basis = _window(algebra, window, basis)
    gammas = sorted({b.index for b in basis if b.kind == "L"})
    # nearest points first, so a failure names the simplest witness
    mus = sorted({b.index for b in basis if b.kind == "T"}, key=lambda m: (sum(map(abs, m)), m))
    zero = algebra.zero
    if spec.a_at(zero) != eps:
        raise ConstraintViolation("a_0 = epsilon", "0", f"a_0 = {spec.a_at(zero)}")
    for g in gammas:
        for h in gammas:
            gh = tuple(p + q for p, q in zip(g, h))
            if spec.a_at(gh) != eps * spec.a_at(g) * spec.a_at(h):
                raise ConstraintViolation("a_{γ+α} = ε a_γ a_α", f"γ={g}, α={h}")
    for m in mus:
        e = spec.e_at(m)
        if e * e != eps * spec.a_at(tuple(2 * v for v in m)):
            raise ConstraintViolation("e_μ^2 = ε a_{2μ}", f"μ={_fmt(m)}", f"e_μ = {e}")
        for g in gammas:
            mg = tuple(p + q for p, q in zip(m, g))
            if spec.e_at(mg) != eps * e * spec.a_at(g):
                raise ConstraintViolation("e_{μ+γ} = ε e_μ a_γ", f"μ={_fmt(m)}, γ={_fmt(g)}")


def _fmt(idx):
    from .algebra import format_index

    return format_index(idx)


def generalized_auto(spec, algebra, window=2, basis=None):
    """σ(C) = εC, σ(L_γ) = a_γ L_{εγ}, σ(T_μ) = e_μ T_{εμ}, σ(G_u) = ω^u_ε (a_u or e_u) G_{εu}."""
    validate_generalized(spec, algebra, window, basis)
    eps = spec.epsilon
    images = {}
    for b in _window(algebra, window, basis):
        if b.kind == "C":
            images[b] = Element.basis(b, as_scalar(eps))
            continue
        target = b if eps == 1 else _neg_index(b)
        idx = b.index
        if b.kind == "L":
            c = spec.a_at(idx)
        elif b.kind == "T":
            c = spec.e_at(idx)
        else:
            base = spec.e_at(idx) if idx[0] % 2 else spec.a_at(idx)
            c = spec.multiplier(idx) * base
        images[b] = Element.basis(target, c)
    return AutoTable(algebra, images, f"gauto(eps={eps})")
