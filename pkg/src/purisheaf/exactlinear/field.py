"""Exact base fields: the rationals and prime fields GF(p)."""

from __future__ import annotations

import random
from fractions import Fraction


class Mod:
    """Residue class modulo a prime."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise ValueError("mixing residues of different primes")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError("denominator divisible by p")
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Mod(o * pow(self.v, -1, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "%d mod %d" % (self.v, self.p)

    def __str__(self):
        return str(self.v)


class Field:
    """An exact field: ``Field()`` is Q, ``Field(p)`` is GF(p)."""

    def __init__(self, p: int | None = None):
        if p is not None:
            if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
                raise ValueError("%r is not a prime" % p)
        self.p = p
        self.zero = self(0)
        self.one = self(1)

    def __call__(self, x):
        if self.p is None:
            if isinstance(x, Mod):
                raise TypeError("residue used over Q")
            return Fraction(x)
        if isinstance(x, Mod):
            if x.p != self.p:
                raise ValueError("residue of a different prime")
            return x
        if isinstance(x, Fraction):
            return Mod(0, self.p) + x
        return Mod(int(x), self.p)

    @property
    def char(self) -> int:
        return 0 if self.p is None else self.p

    def random(self, rng: random.Random, bound: int = 3):
        if self.p is None:
            return Fraction(rng.randint(-bound, bound))
        return Mod(rng.randrange(self.p), self.p)

    def random_nonzero(self, rng: random.Random, bound: int = 3):
        while True:
            c = self.random(rng, bound)
            if c:
                return c

    def elements(self):
        """Enumerate the field (only for finite fields)."""
        if self.p is None:
            raise ValueError("Q is infinite")
        return [Mod(i, self.p) for i in range(self.p)]

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else "GF(%d)" % self.p

    def tag(self) -> str:
        return "q" if self.p is None else "fp:%d" % self.p


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


def parse_field(text: str) -> Field:
    """Parse ``q`` or ``fp:<prime>``."""
    t = text.strip().lower()
    if t in ("q", "qq"):
        return QQ
    if t.startswith("fp:"):
        return Field(int(t[3:]))
    raise ValueError("unknown field %r (expected 'q' or 'fp:<prime>')" % text)
