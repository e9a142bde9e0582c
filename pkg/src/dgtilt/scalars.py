"""Exact ground fields: the rationals and prime fields.

Rationals are plain :class:`fractions.Fraction` values.  Residues modulo a
prime are :class:`Mod` instances, which refuse to mix with residues of a
different characteristic or with fractions.

>>> QQ.parse("-3/6")
Fraction(-1, 2)
>>> F7 = GF(7)
>>> F7.parse("10")
Mod(3, 7)
>>> F7(2) * F7(4)
Mod(1, 7)
"""

import re
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZero, FieldMismatch, ParseError

_COEFF = re.compile(r"^([+-]?)(\d+)(?:/(\d+))?$")


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Mod:
    """A residue class modulo the prime ``p``, stored as ``0 <= v < p``."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _other(self, x):
        if isinstance(x, Mod):
            if x.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({x.p})")
            return x.v
        if isinstance(x, int):
            return x % self.p
        raise FieldMismatch(f"GF({self.p}) vs {type(x).__name__}")

    def __add__(self, x):
        return Mod(self.v + self._other(x), self.p)

    __radd__ = __add__

    def __sub__(self, x):
        return Mod(self.v - self._other(x), self.p)

    def __rsub__(self, x):
        return Mod(self._other(x) - self.v, self.p)

    def __mul__(self, x):
        return Mod(self.v * self._other(x), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self):
        if self.v == 0:
            raise DivisionByZero(f"0 has no inverse in GF({self.p})")
        return Mod(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, x):
        o = self._other(x)
        if o == 0:
            raise DivisionByZero(f"division by 0 in GF({self.p})")
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, x):
        return Mod(self._other(x), self.p) / self

    def __bool__(self):
        return self.v != 0

    def __eq__(self, x):
        if isinstance(x, Mod):
            return self.p == x.p and self.v == x.v
        if isinstance(x, int):
            return self.v == x % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class Field:
    """A ground field: ``Field("Q")`` or ``Field("Fp", p)``.

    Use the module-level :data:`QQ` and :func:`GF` rather than calling this
    directly; fields compare by value.
    """

    def __init__(self, kind, p=None):
        if kind == "Q":
            if p is not None:
                raise ValueError("the rationals take no modulus")
        elif kind == "Fp":
            if p is None or not _is_prime(p):
                raise ValueError(f"{p!r} is not a prime")
        else:
            raise ValueError(f"unknown field kind {kind!r}")
        self.kind = kind
        self.p = p
        self.zero = self(0)
        self.one = self(1)

    @property
    def is_prime_field(self):
        return self.kind == "Fp"

    @property
    def size(self):
        """Number of elements, or None for the rationals."""
        return self.p

    def __call__(self, x):
        if self.kind == "Q":
            if isinstance(x, Mod):
                raise FieldMismatch("GF(%d) element used over Q" % x.p)
            return Fraction(x)
        if isinstance(x, Mod):
            if x.p != self.p:
                raise FieldMismatch(f"GF({x.p}) element used over GF({self.p})")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"{x} has no image in GF({self.p})")
            return Mod(x.numerator, self.p) / x.denominator
        return Mod(int(x), self.p)

    def contains(self, x):
        if self.kind == "Q":
            return isinstance(x, Fraction)
        return isinstance(x, Mod) and x.p == self.p

    def parse(self, text):
        """Parse ``[-]digits[/digits]``; over GF(p) a slash multiplies by an inverse."""
        m = _COEFF.match(text.strip())
        if not m:
            raise ParseError(f"malformed coefficient {text!r}")
        sign, num, den = m.groups()
        n = int(num) * (-1 if sign == "-" else 1)
        d = int(den) if den is not None else 1
        if d == 0:
            raise DivisionByZero(f"zero denominator in {text!r}")
        if self.kind == "Q":
            return Fraction(n, d)
        if d % self.p == 0:
            raise DivisionByZero(f"denominator of {text!r} vanishes in GF({self.p})")
        return Mod(n, self.p) / d

    def format(self, x):
        x = self(x)
        if self.kind == "Q":
            if x.denominator == 1:
                return str(x.numerator)
            return f"{x.numerator}/{x.denominator}"
        return str(x.v)

    def text(self):
        return "Q" if self.kind == "Q" else f"Fp {self.p}"

    def elements(self):
        """All elements of a prime field, in residue order."""
        if self.kind != "Fp":
            raise ValueError("the rationals are infinite")
        return [Mod(i, self.p) for i in range(self.p)]

    def __eq__(self, other):
        return isinstance(other, Field) and (self.kind, self.p) == (other.kind, other.p)

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return "QQ" if self.kind == "Q" else f"GF({self.p})"


QQ = Field("Q")


@lru_cache(maxsize=None)
def GF(p):
    return Field("Fp", p)


def field_of(x):
    if isinstance(x, Mod):
        return GF(x.p)
    if isinstance(x, (Fraction, int)):
        return QQ
    raise FieldMismatch(f"{type(x).__name__} is not a field element")


def parse_scalar(text, field):
    return field.parse(text)


def scalar_arith(op, a, b=None):
    """Field arithmetic with explicit errors.

    ``op`` is one of add, sub, mul, div, neg, inv.
    """
    fa = field_of(a)
    if b is not None and field_of(b) != fa:
        raise FieldMismatch(f"{fa!r} vs {field_of(b)!r}")
    a = fa(a)
    if b is not None:
        b = fa(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op in ("div", "inv"):
        d = b if op == "div" else a
        if not d:
            raise DivisionByZero("division by zero")
        return a / b if op == "div" else fa.one / a
    raise ValueError(f"unknown operation {op!r}")
