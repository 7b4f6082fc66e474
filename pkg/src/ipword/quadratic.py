"""Exact arithmetic in Q(sqrt d).

Every decision (comparison, floor, membership in a rotation interval) is made
with integers only; floats appear solely in ``__float__`` for display.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from math import isqrt, lcm

from .errors import InvalidArgument

Rational = int | Fraction


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def surd_sign(a: int, b: int, d: int) -> int:
    """Sign of ``a + b*sqrt(d)`` for integers a, b and non-square d."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return 1 if b > 0 else -1
    if (a > 0) == (b > 0):
        return 1 if a > 0 else -1
    # opposite signs; a*a == b*b*d is impossible for non-square d
    if a * a > b * b * d:
        return 1 if a > 0 else -1
    return 1 if b > 0 else -1


def floor_surd(a: int, b: int, d: int, den: int) -> int:
    """``floor((a + b*sqrt(d)) / den)`` for den > 0, d non-square."""
    if b == 0:
        return a // den
    s = isqrt(b * b * d)
    # b*sqrt(d) is irrational, so it lies strictly between s and s+1 (in magnitude)
    whole = a + s if b > 0 else a - s - 1
    return whole // den


@total_ordering
class QuadraticReal:
    """The number ``a + b*sqrt(d)`` with rational a, b."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Rational = 0, b: Rational = 0, d: int = 5):
        d = int(d)
        if d <= 1 or _is_square(d):
            raise InvalidArgument(f"d must be a positive non-square integer, got {d}")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    @classmethod
    def rational(cls, value: Rational, d: int = 5) -> QuadraticReal:
        return cls(value, 0, d)

    @classmethod
    def parse(cls, text: str) -> QuadraticReal:
        lin = parse_linear(text, allow_alpha=False)
        return cls(lin.one, lin.root, lin.d or 5)

    # -- structure -------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> QuadraticReal:
        return QuadraticReal(self.a, -self.b, self.d)

    def integer_form(self) -> tuple[int, int, int]:
        """Integers (A, B, D) with value (A + B*sqrt(d)) / D and D > 0."""
        den = lcm(self.a.denominator, self.b.denominator)
        return (self.a.numerator * (den // self.a.denominator),
                self.b.numerator * (den // self.b.denominator), den)

    def _coerce(self, other) -> QuadraticReal | None:
        if isinstance(other, QuadraticReal):
            if other.b != 0 and self.b != 0 and other.d != self.d:
                raise InvalidArgument(f"mixing sqrt({self.d}) and sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticReal(other, 0, self.d)
        return None

    def _field(self, other: QuadraticReal) -> int:
        return self.d if self.b != 0 else other.d

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticReal(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticReal(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticReal(self.a - o.a, self.b - o.b, self._field(o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._field(o)
        return QuadraticReal(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def reciprocal(self) -> QuadraticReal:
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("reciprocal of zero")
        return QuadraticReal(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.reciprocal()

    # -- order -------------------------------------------------------

    def sign(self) -> int:
        A, B, _ = self.integer_form()
        return surd_sign(A, B, self.d)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadraticReal):
            return self.a == other.a and self.b == other.b and (self.b == 0 or self.d == other.d)
        return NotImplemented

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self):
        return hash((self.a, self.b, self.d if self.b else 0))

    def floor(self) -> int:
        A, B, D = self.integer_form()
        return floor_surd(A, B, self.d, D)

    def ceil(self) -> int:
        return -(-self).floor()

    def frac(self) -> QuadraticReal:
        return self - self.floor()

    def __floor__(self):
        return self.floor()

    def __ceil__(self):
        return self.ceil()

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __str__(self):
        return (f"({self.a.numerator}/{self.a.denominator}) + "
                f"({self.b.numerator}/{self.b.denominator})*sqrt({self.d})")

    def __repr__(self):
        return f"QuadraticReal({self.a!s}, {self.b!s}, {self.d})"


def continued_fraction(x: QuadraticReal, terms: int) -> list[int]:
    """First ``terms`` partial quotients of x (exact)."""
    out = []
    for _ in range(terms):
        a = x.floor()
        out.append(a)
        rest = x - a
        if rest == 0:
            break
        x = rest.reciprocal()
    return out


def convergent_denominators(x: QuadraticReal, terms: int) -> list[int]:
    q_prev, q = 0, 1
    dens = [1]
    for a in continued_fraction(x, terms)[1:]:
        q_prev, q = q, a * q + q_prev
        dens.append(q)
    return dens


# -- literal parsing -----------------------------------------------------

class Linear:
    """Intermediate value ``one + root*sqrt(d) + alpha*ALPHA`` during parsing."""

    __slots__ = ("one", "root", "alpha", "d")

    def __init__(self, one=Fraction(0), root=Fraction(0), alpha=Fraction(0), d=None):
        self.one, self.root, self.alpha, self.d = Fraction(one), Fraction(root), Fraction(alpha), d

    @property
    def is_rational(self):
        return self.root == 0 and self.alpha == 0

    def _d(self, other):
        if self.d is not None and other.d is not None and self.d != other.d:
            raise InvalidArgument("mixed square roots in literal")
        return self.d if self.d is not None else other.d

    def __add__(self, o):
        return Linear(self.one + o.one, self.root + o.root, self.alpha + o.alpha, self._d(o))

    def __neg__(self):
        return Linear(-self.one, -self.root, -self.alpha, self.d)

    def __mul__(self, o):
        if o.is_rational:
            s = o.one
            return Linear(self.one * s, self.root * s, self.alpha * s, self._d(o))
        if self.is_rational:
            return o * self
        if self.alpha or o.alpha:
            raise InvalidArgument("alpha may only be scaled by a rational")
        d = self._d(o)
        return Linear(self.one * o.one + self.root * o.root * d,
                      self.one * o.root + self.root * o.one, 0, d)

    def reciprocal(self):
        if self.alpha:
            raise InvalidArgument("cannot divide by alpha")
        if self.root == 0:
            if self.one == 0:
                raise InvalidArgument("division by zero in literal")
            return Linear(1 / self.one, 0, 0, self.d)
        norm = self.one * self.one - self.root * self.root * self.d
        return Linear(self.one / norm, -self.root / norm, 0, self.d)


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|(sqrt|alpha|α|√)|(.))")


def _tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        num, word, ch = m.groups()
        if num is not None:
            out.append(("num", num))
        elif word is not None:
            out.append(("word", "alpha" if word == "α" else word))
        elif ch is not None and not ch.isspace():
            out.append(("op", ch))
    return out


def parse_linear(text: str, allow_alpha: bool = True) -> Linear:
    """Parse expressions such as ``(3-sqrt(5))/2``, ``(3/2) + (-1/2)*sqrt(5)``,
    ``(3-√5)/2`` or ``1/2+(1/3)α``.  Juxtaposition binds like ``*``."""
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i] if i < len(toks) else (None, None)

    def take():
        nonlocal i
        tok = peek()
        i += 1
        return tok

    def expect(op):
        kind, val = take()
        if kind != "op" or val != op:
            raise InvalidArgument(f"expected {op!r} in literal {text!r}")

    def atom():
        kind, val = take()
        if kind == "num":
            return Linear(Fraction(val))
        if kind == "word" and val == "alpha":
            if not allow_alpha:
                raise InvalidArgument(f"alpha not allowed in {text!r}")
            return Linear(0, 0, 1)
        if kind == "word" and val in ("sqrt", "√"):
            paren = peek() == ("op", "(")
            if paren:
                take()
            k2, v2 = take()
            if k2 != "num" or not v2.isdigit():
                raise InvalidArgument(f"sqrt needs an integer radicand in {text!r}")
            if paren:
                expect(")")
            d = int(v2)
            if _is_square(d):
                return Linear(isqrt(d))
            return Linear(0, 1, 0, d)
        if kind == "op" and val == "(":
            v = expr()
            expect(")")
            return v
        if kind == "op" and val in "+-":
            v = atom_chain()
            return -v if val == "-" else v
        raise InvalidArgument(f"unexpected token {val!r} in literal {text!r}")

    def atom_chain():
        v = atom()
        # implicit multiplication: "2sqrt(5)", "(1/3)α"
        while peek()[0] in ("num", "word") or peek() == ("op", "("):
            v = v * atom()
        return v

    def term():
        v = atom_chain()
        while peek() in (("op", "*"), ("op", "/")):
            _, op = take()
            rhs = atom_chain()
            v = v * rhs if op == "*" else v * rhs.reciprocal()
        return v

    def expr():
        v = term()
        while peek() in (("op", "+"), ("op", "-")):
            _, op = take()
            rhs = term()
            v = v + (rhs if op == "+" else -rhs)
        return v

    if not toks:
        raise InvalidArgument("empty literal")
    value = expr()
    if i != len(toks):
        raise InvalidArgument(f"trailing input in literal {text!r}")
    return value
