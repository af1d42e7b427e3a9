"""Expression language for elements, tensors and scalars.

    expr    := tensor (('+' | '-') tensor)*
    tensor  := product (('ox' | '⊗') product)*
    product := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := primary ('^' unary)?
    primary := INT | 'i' | 'θ' | 'th' | 's' | 'C'
             | ('L' | 'T' | 'G') '(' expr ')'
             | '[' expr ',' expr ']' | '(' expr ')' | 'auto' '(' expr ')'

Indices are scalar expressions (``3/2``, ``1+2*th``, ``1+s``) turned into
coordinates by the algebra instance; sector rules are enforced when the tree
is evaluated, not by the grammar.
"""

from __future__ import annotations

from typing import NamedTuple

from .algebra import BasisVector, Element
from .bialgebra import Tensor, tensor
from .scalars import I, THETA, Scalar, as_scalar

__all__ = ["ParseError", "EvalError", "Node", "tokenize", "parse", "evaluate", "parse_eval", "render"]


class ParseError(ValueError):
    """Syntax error; carries the 1-based line and column."""

    def __init__(self, msg, line=1, col=1):
        self.msg = msg
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {msg}")


class EvalError(ParseError):
    """The tree is well formed but does not denote a value (bad index, type clash)."""


class Token(NamedTuple):
    kind: str  # INT, NAME, OP, END
    text: str
    line: int
    col: int


class Node(NamedTuple):
    kind: str
    args: tuple
    line: int
    col: int


_SINGLE = set("+-*/^()[],⊗")
_NAMES = {"L", "T", "G", "C", "i", "th", "θ", "s", "ox", "auto"}


def tokenize(src, line=1, col=1):
    out = []
    pos, n = 0, len(src)
    while pos < n:
        ch = src[pos]
        if ch == "\n":
            line, col = line + 1, 1
            pos += 1
            continue
        if ch.isspace():
            pos += 1
            col += 1
            continue
        if ch.isdigit():
            j = pos
            while j < n and src[j].isdigit():
                j += 1
            out.append(Token("INT", src[pos:j], line, col))
            col += j - pos
            pos = j
            continue
        if ch.isalpha():
            j = pos
            while j < n and src[j].isalnum() and src[j] != "θ":
                j += 1
            if j == pos:
                j = pos + 1
            word = src[pos:j]
            if word not in _NAMES:
                raise ParseError(f"unknown name {word!r}", line, col)
            out.append(Token("NAME", word, line, col))
            col += j - pos
            pos = j
            continue
        if ch in _SINGLE:
            out.append(Token("OP", ch, line, col))
            pos += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    out.append(Token("END", "", line, col))
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def at(self, *texts):
        t = self.tok
        return t.kind in ("OP", "NAME") and t.text in texts

    def expect(self, text):
        t = self.tok
        if not self.at(text):
            shown = t.text or "end of input"
            raise ParseError(f"expected {text!r}, found {shown!r}", t.line, t.col)
        return self.take()

    def expr(self):
        left = self.tensor()
        while self.at("+", "-"):
            op = self.take()
            right = self.tensor()
            left = Node("add" if op.text == "+" else "sub", (left, right), op.line, op.col)
        return left

    def tensor(self):
        left = self.product()
        while self.at("ox", "⊗"):
            op = self.take()
            left = Node("tensor", (left, self.product()), op.line, op.col)
        return left

    def product(self):
        left = self.unary()
        while self.at("*", "/"):
            op = self.take()
            right = self.unary()
            left = Node("mul" if op.text == "*" else "div", (left, right), op.line, op.col)
        return left

    def unary(self):
        if self.at("-", "+"):
            op = self.take()
            inner = self.unary()
            return inner if op.text == "+" else Node("neg", (inner,), op.line, op.col)
        return self.power()

    def power(self):
        base = self.primary()
        if self.at("^"):
            op = self.take()
            return Node("pow", (base, self.unary()), op.line, op.col)
        return base

    def primary(self):
        t = self.tok
        if t.kind == "INT":
            self.take()
            return Node("int", (int(t.text),), t.line, t.col)
        if t.kind == "NAME":
            self.take()
            w = t.text
            if w in ("L", "T", "G"):
                self.expect("(")
                idx = self.expr()
                self.expect(")")
                return Node("basis", (w, idx), t.line, t.col)
            if w == "C":
                return Node("central", (), t.line, t.col)
            if w == "auto":
                self.expect("(")
                e = self.expr()
                self.expect(")")
                return Node("auto", (e,), t.line, t.col)
            if w in ("th", "θ"):
                return Node("const", ("θ",), t.line, t.col)
            if w in ("i", "s"):
                return Node("const", (w,), t.line, t.col)
            raise ParseError(f"unexpected {w!r}", t.line, t.col)
        if self.at("("):
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        if self.at("["):
            self.take()
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("]")
            return Node("bracket", (a, b), t.line, t.col)
        shown = t.text or "end of input"
        raise ParseError(f"unexpected {shown!r}", t.line, t.col)


def parse(src, line=1, col=1):
    """Parse ``src`` into a :class:`Node` tree."""
    p = _Parser(tokenize(src, line, col))
    tree = p.expr()
    if p.tok.kind != "END":
        raise ParseError(f"unexpected {p.tok.text!r}", p.tok.line, p.tok.col)
    return tree


def _fail(node, msg):
    raise EvalError(msg, node.line, node.col)


def _kind(v):
    if isinstance(v, Scalar):
        return "scalar"
    if isinstance(v, Element):
        return "element"
    return f"tensor{v.arity}"


def _zero_like(v):
    return Element() if isinstance(v, Element) else Tensor(v.arity)


def evaluate(node, algebra, auto=None):
    """Evaluate a tree to a Scalar, Element or Tensor.

    ``auto`` is an automorphism table used by ``auto(...)`` nodes.
    """
    ev = lambda n: evaluate(n, algebra, auto)  # noqa: E731
    k = node.kind
    if k == "int":
        return as_scalar(node.args[0])
    if k == "const":
        name = node.args[0]
        if name == "i":
            return I
        if name == "θ":
            return THETA
        return algebra.generators[0]
    if k == "central":
        return algebra.c()
    if k == "basis":
        kind, idx_node = node.args
        idx = ev(idx_node)
        if not isinstance(idx, Scalar):
            _fail(idx_node, "index must be a scalar")
        try:
            return Element.basis(algebra.basis(kind, idx))
        except ValueError as e:
            _fail(node, str(e))
    if k == "neg":
        return -ev(node.args[0])
    if k in ("add", "sub"):
        a, b = ev(node.args[0]), ev(node.args[1])
        ka, kb = _kind(a), _kind(b)
        if ka != kb:
            # a literal 0 is the zero of every space
            if ka == "scalar" and not a:
                a = _zero_like(b)
            elif kb == "scalar" and not b:
                b = _zero_like(a)
            else:
                _fail(node, f"cannot add {ka} and {kb}")
        return a + b if k == "add" else a - b
    if k == "mul":
        a, b = ev(node.args[0]), ev(node.args[1])
        if isinstance(a, Scalar):
            return b * a if not isinstance(b, Scalar) else a * b
        if isinstance(b, Scalar):
            return a * b
        _fail(node, f"cannot multiply {_kind(a)} by {_kind(b)}; use [x, y] or ox")
    if k == "div":
        a, b = ev(node.args[0]), ev(node.args[1])
        if not isinstance(b, Scalar):
            _fail(node, "can only divide by a scalar")
        if not b:
            _fail(node, "division by zero")
        return a * b.inverse()
    if k == "pow":
        a, b = ev(node.args[0]), ev(node.args[1])
        if not isinstance(a, Scalar) or not isinstance(b, Scalar) or not b.is_rational() \
                or b.to_fraction().denominator != 1:
            _fail(node, "only scalars raised to integer powers are supported")
        n = int(b.to_fraction())
        if n < 0 and not a:
            _fail(node, "division by zero")
        return a ** n
    if k == "tensor":
        a, b = ev(node.args[0]), ev(node.args[1])
        for v, n in ((a, node.args[0]), (b, node.args[1])):
            if isinstance(v, Scalar):
                _fail(n, "tensor factors must be elements")
        return tensor(a, b)
    if k == "bracket":
        a, b = ev(node.args[0]), ev(node.args[1])
        if not isinstance(a, Element) or not isinstance(b, Element):
            _fail(node, "bracket arguments must be elements")
        return algebra.bracket(a, b)
    if k == "auto":
        if auto is None:
            _fail(node, "auto(...) needs an automorphism (--auto, --gauto or --table)")
        v = ev(node.args[0])
        if not isinstance(v, Element):
            _fail(node, "auto(...) applies to elements")
        try:
            return auto(v)
        except ValueError as e:
            _fail(node, str(e))
    raise AssertionError(f"unknown node {k}")


def parse_eval(src, algebra, auto=None):
    return evaluate(parse(src), algebra, auto)


def render(value):
    """Canonical text; parsing it back gives the same value."""
    return str(value)
