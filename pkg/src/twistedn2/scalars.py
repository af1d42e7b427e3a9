"""Exact arithmetic in the field Q(i)(θ).

A :class:`Scalar` is a quotient of two polynomials in one formal variable θ
whose coefficients are Gaussian rationals.  Values are kept in canonical form
(coprime numerator and denominator, monic denominator), so equality is plain
structural equality.

Gaussian rationals are stored as integer triples ``(re, im, den)`` meaning
``(re + im*i) / den`` with ``den > 0`` and ``gcd(re, im, den) == 1``.
Polynomials are tuples of such triples, lowest degree first, with no trailing
zero coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
import numbers

__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "I",
    "THETA",
    "as_scalar",
    "scalar_arith",
]


# -- Gaussian rationals ------------------------------------------------------

_GQ_ZERO = (0, 0, 1)
_GQ_ONE = (1, 0, 1)


def _gq(a, b, d):
    if d < 0:
        a, b, d = -a, -b, -d
    g = gcd(a, b, d)
    if g != 1:
        a //= g
        b //= g
        d //= g
    return (a, b, d)


def _gq_add(x, y):
    a1, b1, d1 = x
    a2, b2, d2 = y
    if d1 == d2:
        return _gq(a1 + a2, b1 + b2, d1)
    return _gq(a1 * d2 + a2 * d1, b1 * d2 + b2 * d1, d1 * d2)


def _gq_sub(x, y):
    a2, b2, d2 = y
    return _gq_add(x, (-a2, -b2, d2))


def _gq_mul(x, y):
    a1, b1, d1 = x
    a2, b2, d2 = y
    if b1 == 0 and b2 == 0:
        return _gq(a1 * a2, 0, d1 * d2)
    return _gq(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, d1 * d2)


def _gq_inv(x):
    a, b, d = x
    if a == 0 and b == 0:
        raise ZeroDivisionError("division by zero in Q(i)(θ)")
    return _gq(d * a, -d * b, a * a + b * b)


def _gq_neg(x):
    return (-x[0], -x[1], x[2])


# -- polynomials over Q(i) -----------------------------------------------------

_P_ONE = (_GQ_ONE,)


def _p_trim(coeffs):
    n = len(coeffs)
    while n and coeffs[n - 1][0] == 0 and coeffs[n - 1][1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _p_add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for k, c in enumerate(q):
        out[k] = _gq_add(out[k], c)
    return _p_trim(out)


def _p_neg(p):
    return tuple(_gq_neg(c) for c in p)


def _p_sub(p, q):
    return _p_add(p, _p_neg(q))


def _p_scale(p, c):
    if c == _GQ_ONE:
        return p
    return _p_trim([_gq_mul(a, c) for a in p])


def _p_mul(p, q):
    if not p or not q:
        return ()
    if len(p) == 1:
        return _p_scale(q, p[0])
    if len(q) == 1:
        return _p_scale(p, q[0])
    out = [_GQ_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a[0] == 0 and a[1] == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = _gq_add(out[i + j], _gq_mul(a, b))
    return _p_trim(out)


def _p_divmod(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lc = _gq_inv(q[-1])
    rem = list(p)
    dq = len(q) - 1
    quot = [_GQ_ZERO] * max(len(p) - dq, 0)
    while len(rem) > dq and rem:
        c = _gq_mul(rem[-1], inv_lc)
        shift = len(rem) - 1 - dq
        quot[shift] = c
        for k, b in enumerate(q):
            rem[shift + k] = _gq_sub(rem[shift + k], _gq_mul(c, b))
        rem = list(_p_trim(rem))
    return _p_trim(quot), _p_trim(rem)


def _p_monic(p):
    return _p_scale(p, _gq_inv(p[-1]))


def _p_gcd(p, q):
    while q:
        p, q = q, _p_divmod(p, q)[1]
    return _p_monic(p) if p else ()


# -- the field ----------------------------------------------------------------


class Scalar:
    """An element of Q(i)(θ) in canonical form.

    Construct from ints, Fractions or other Scalars with :func:`as_scalar`;
    the module constants :data:`I` and :data:`THETA` give the generators.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value=0):
        s = as_scalar(value)
        self.num = s.num
        self.den = s.den
        self._hash = None

    @classmethod
    def _raw(cls, num, den=_P_ONE):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def _canonical(cls, num, den):
        if not den:
            raise ZeroDivisionError("division by zero in Q(i)(θ)")
        if not num:
            return ZERO
        if len(den) > 1:
            g = _p_gcd(num, den)
            if len(g) > 1:
                num = _p_divmod(num, g)[0]
                den = _p_divmod(den, g)[0]
        lc = den[-1]
        if lc != _GQ_ONE:
            inv = _gq_inv(lc)
            num = _p_scale(num, inv)
            den = _p_scale(den, inv)
        return cls._raw(num, den)

    @classmethod
    def gaussian(cls, re, im=0):
        """Build ``re + im*i`` from rationals."""
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        c = _gq(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)
        return cls._raw((c,)) if c[0] or c[1] else ZERO

    @classmethod
    def polynomial(cls, coeffs):
        """Build a polynomial in θ from Gaussian-rational coefficients (low degree first)."""
        out = []
        for c in coeffs:
            s = as_scalar(c)
            if not s.is_constant():
                raise ValueError("polynomial coefficients must be constants")
            out.append(s.num[0] if s.num else _GQ_ZERO)
        return cls._raw(_p_trim(out))

    # -- predicates -------------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def is_constant(self):
        return len(self.num) <= 1 and len(self.den) == 1

    def is_rational(self):
        return self.is_constant() and (not self.num or self.num[0][1] == 0)

    def is_polynomial(self):
        return len(self.den) == 1

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        if not self.num:
            return Fraction(0)
        a, _, d = self.num[0]
        return Fraction(a, d)

    def degree(self):
        """Degree in θ of the numerator (-1 for zero)."""
        return len(self.num) - 1

    def coefficients(self):
        """Numerator coefficients as (re, im) Fraction pairs, low degree first."""
        if len(self.den) != 1:
            raise ValueError(f"{self} is not a polynomial in θ")
        return [(Fraction(a, d), Fraction(b, d)) for a, b, d in self.num]

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den is _P_ONE or self.den == _P_ONE:
            if other.den == _P_ONE:
                if len(self.num) == 1 and len(other.num) == 1:
                    c = _gq_add(self.num[0], other.num[0])
                    return Scalar._raw((c,)) if c[0] or c[1] else ZERO
                n = _p_add(self.num, other.num)
                return Scalar._raw(n) if n else ZERO
        if self.den == other.den:
            return Scalar._canonical(_p_add(self.num, other.num), self.den)
        num = _p_add(_p_mul(self.num, other.den), _p_mul(other.num, self.den))
        return Scalar._canonical(num, _p_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        if not self.num:
            return self
        return Scalar._raw(_p_neg(self.num), self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        if not self.num or not other.num:
            return ZERO
        if len(self.den) == 1 and len(other.den) == 1:
            if len(self.num) == 1 and len(other.num) == 1:
                return Scalar._raw((_gq_mul(self.num[0], other.num[0]),))
            return Scalar._raw(_p_mul(self.num, other.num))
        if len(other.den) == 1 and len(other.num) == 1:
            return Scalar._raw(_p_scale(self.num, other.num[0]), self.den)
        if len(self.den) == 1 and len(self.num) == 1:
            return Scalar._raw(_p_scale(other.num, self.num[0]), other.den)
        num = _p_mul(self.num, other.num)
        den = _p_mul(self.den, other.den)
        return Scalar._canonical(num, den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("division by zero in Q(i)(θ)")
        if len(self.num) == 1 and len(self.den) == 1:
            return Scalar._raw((_gq_inv(self.num[0]),))
        return Scalar._canonical(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, numbers.Integral):
            return NotImplemented
        n = int(n)
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = ONE
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self):
        """Complex conjugation (i -> -i), θ treated as real."""

        def conj(p):
            return tuple((a, -b, d) for a, b, d in p)

        return Scalar._raw(conj(self.num), conj(self.den))

    # -- comparison and hashing --------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        h = self._hash
        if h is None:
            if self.is_rational():
                h = hash(self.to_fraction())
            else:
                h = hash((self.num, self.den))
            self._hash = h
        return h

    # -- rendering ---------------------------------------------------------

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def __str__(self):
        if not self.num:
            return "0"
        num = _fmt_poly(self.num)
        if len(self.den) == 1:
            return num
        if len(self.num) > 1 or _needs_parens(self.num[0]):
            num = f"({num})"
        return f"{num}/({_fmt_poly(self.den)})"


def _needs_parens(c):
    a, b, d = c
    return (a != 0 and b != 0) or d != 1


def _fmt_rat(n, d):
    return str(n) if d == 1 else f"{n}/{d}"


def _fmt_gq(c):
    a, b, d = c
    re = Fraction(a, d)
    im = Fraction(b, d)
    parts = []
    if re:
        parts.append(_fmt_rat(re.numerator, re.denominator))
    if im:
        if im == 1:
            s = "i"
        elif im == -1:
            s = "-i"
        else:
            s = f"{_fmt_rat(im.numerator, im.denominator)}*i"
        if parts and not s.startswith("-"):
            s = "+" + s
        parts.append(s)
    return "".join(parts) or "0"


def _fmt_poly(p):
    if len(p) == 1:
        return _fmt_gq(p[0])
    out = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c[0] == 0 and c[1] == 0:
            continue
        mono = "" if k == 0 else ("θ" if k == 1 else f"θ^{k}")
        if k == 0:
            s = _fmt_gq(c)
        elif c == _GQ_ONE:
            s = mono
        elif c == (-1, 0, 1):
            s = "-" + mono
        elif c[0] != 0 and c[1] != 0:
            s = f"({_fmt_gq(c)})*{mono}"
        else:
            s = f"{_fmt_gq(c)}*{mono}"
        if out and not s.startswith("-"):
            s = "+" + s
        out.append(s)
    return "".join(out)


def _coerce(value):
    if isinstance(value, Scalar):
        return value
    if isinstance(value, bool):
        return None
    if isinstance(value, numbers.Integral):
        value = int(value)
        return Scalar._raw(((value, 0, 1),)) if value else ZERO
    if isinstance(value, Fraction):
        if not value:
            return ZERO
        return Scalar._raw(((value.numerator, 0, value.denominator),))
    if isinstance(value, numbers.Rational):
        return _coerce(Fraction(value.numerator, value.denominator))
    return None


def as_scalar(value):
    """Coerce ints, Fractions, rational strings or Scalars into a Scalar."""
    if isinstance(value, str):
        return _coerce(Fraction(value))
    s = _coerce(value)
    if s is None:
        raise TypeError(f"cannot interpret {value!r} as an exact scalar")
    return s


def scalar_arith(x, y, op):
    """Apply ``op`` in {'add', 'sub', 'mul', 'div'} to two scalars."""
    x = as_scalar(x)
    y = as_scalar(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


ZERO = Scalar._raw(())
ONE = Scalar._raw(_P_ONE)
I = Scalar._raw(((0, 1, 1),))
THETA = Scalar._raw((_GQ_ZERO, _GQ_ONE))
