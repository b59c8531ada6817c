"""Univariate polynomials over an exact field, tagged by coordinate ring.

Three rings occur: ``PolyU = k[x]``, ``PolyV = k[y]`` and the Laurent ring
``k[x, 1/x]`` of the overlap chart.  Elements are stored densely from their
lowest exponent, so Laurent elements are just polynomials with a possibly
negative offset.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass

from .field import Field

POLY_U = "PolyU"
POLY_V = "PolyV"
LAURENT = "Laurent"
RINGS = (POLY_U, POLY_V, LAURENT)

VARNAME = {POLY_U: "x", POLY_V: "y", LAURENT: "x"}


class UnsupportedRing(ValueError):
    pass


class DegreeBudgetExceeded(ArithmeticError):
    pass


@dataclass
class Budget:
    max_degree: int = 512


BUDGET = Budget()


@contextlib.contextmanager
def degree_budget(n: int):
    old = BUDGET.max_degree
    BUDGET.max_degree = n
    try:
        yield
    finally:
        BUDGET.max_degree = old


class Poly:
    __slots__ = ("field", "ring", "low", "c", "_hash")

    def __init__(self, field: Field, ring: str, low: int, coeffs):
        if ring not in RINGS:
            raise UnsupportedRing("unsupported ring %r" % ring)
        coeffs = list(coeffs)
        zero = field.zero
        # trim both ends
        hi = len(coeffs)
        while hi and coeffs[hi - 1] == zero:
            hi -= 1
        lo = 0
        while lo < hi and coeffs[lo] == zero:
            lo += 1
        coeffs = coeffs[lo:hi]
        low = low + lo if coeffs else 0
        if coeffs and ring != LAURENT and low < 0:
            raise ValueError("negative exponent in %s" % ring)
        if coeffs and max(abs(low), abs(low + len(coeffs) - 1)) > BUDGET.max_degree:
            raise DegreeBudgetExceeded("degree budget exceeded (%d)" % BUDGET.max_degree)
        self.field = field
        self.ring = ring
        self.low = low
        self.c = tuple(coeffs)
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, field, ring):
        return cls(field, ring, 0, ())

    @classmethod
    def const(cls, field, ring, a):
        return cls(field, ring, 0, (field(a),))

    @classmethod
    def monomial(cls, field, ring, e, a=1):
        return cls(field, ring, e, (field(a),))

    @classmethod
    def from_dict(cls, field, ring, d):
        if not d:
            return cls.zero(field, ring)
        lo, hi = min(d), max(d)
        coeffs = [field.zero] * (hi - lo + 1)
        for e, a in d.items():
            coeffs[e - lo] = coeffs[e - lo] + field(a)
        return cls(field, ring, lo, coeffs)

    @classmethod
    def from_list(cls, field, ring, coeffs):
        """Coefficients listed from degree 0 upwards."""
        return cls(field, ring, 0, [field(a) for a in coeffs])

    def like(self, low, coeffs):
        return Poly(self.field, self.ring, low, coeffs)

    # queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    @property
    def degree(self) -> int:
        """Top exponent; -1 for the zero polynomial."""
        return self.low + len(self.c) - 1 if self.c else -1

    @property
    def lc(self):
        return self.c[-1]

    def coeff(self, e):
        i = e - self.low
        if 0 <= i < len(self.c):
            return self.c[i]
        return self.field.zero

    def terms(self):
        z = self.field.zero
        return [(self.low + i, a) for i, a in enumerate(self.c) if a != z]

    def to_dict(self):
        return dict(self.terms())

    def is_const(self) -> bool:
        return not self.c or (self.low == 0 and len(self.c) == 1)

    def is_unit(self) -> bool:
        if self.ring == LAURENT:
            return len(self.c) == 1
        return self.low == 0 and len(self.c) == 1

    def span(self) -> int:
        """Largest absolute exponent occurring."""
        if not self.c:
            return 0
        return max(abs(self.low), abs(self.degree))

    # arithmetic -------------------------------------------------------------
    def _check(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring or other.field != self.field:
                raise ValueError("ring mismatch: %s vs %s" % (self.ring, other.ring))
            return other
        return Poly.const(self.field, self.ring, other)

    def __add__(self, other):
        other = self._check(other)
        if not other.c:
            return self
        if not self.c:
            return other
        lo = min(self.low, other.low)
        hi = max(self.degree, other.degree)
        out = [self.field.zero] * (hi - lo + 1)
        for i, a in enumerate(self.c):
            out[self.low - lo + i] = a
        for i, a in enumerate(other.c):
            out[other.low - lo + i] = out[other.low - lo + i] + a
        return self.like(lo, out)

    __radd__ = __add__

    def __neg__(self):
        return self.like(self.low, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            a = self.field(other)
            return self.like(self.low, [a * b for b in self.c])
        other = self._check(other)
        if not self.c or not other.c:
            return Poly.zero(self.field, self.ring)
        out = [self.field.zero] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(other.c):
                out[i + j] = out[i + j] + a * b
        return self.like(self.low + other.low, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if self.ring == LAURENT and len(self.c) == 1:
                return self.like(self.low * n, [self.field.one / self.c[0] ** (-n)])
            raise ValueError("negative power of a non-unit")
        result = Poly.const(self.field, self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int):
        """Multiply by the k-th power of the variable."""
        if not self.c:
            return self
        return self.like(self.low + k, self.c)

    def scale(self, a):
        return self * a

    def monic(self):
        if not self.c:
            return self
        inv = self.field.one / self.lc
        return self.like(self.low, [a * inv for a in self.c])

    def _as_dense(self):
        """Coefficients from degree 0 (requires no negative exponents)."""
        if self.c and self.low < 0:
            raise ValueError("Laurent element with negative exponents")
        return [self.field.zero] * self.low + list(self.c) if self.c else []

    def divmod(self, other):
        """Euclidean division as polynomials in the chart variable."""
        other = self._check(other)
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        a = self._as_dense()
        b = other._as_dense()
        db = len(b) - 1
        inv = self.field.one / b[-1]
        q = [self.field.zero] * max(0, len(a) - db)
        r = list(a)
        for k in range(len(a) - 1 - db, -1, -1):
            coef = r[k + db] * inv
            q[k] = coef
            if coef != 0:
                for j in range(db + 1):
                    r[k + j] = r[k + j] - coef * b[j]
        return self.like(0, q), self.like(0, r[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def divides(self, other) -> bool:
        if not self.c:
            return not other.c
        return not (other % self).c

    # ring changes -----------------------------------------------------------
    def to_ring(self, ring):
        return Poly(self.field, ring, self.low, self.c)

    def invert_variable(self, ring=LAURENT):
        """Substitute the variable by its inverse (y -> 1/x)."""
        if not self.c:
            return Poly.zero(self.field, ring)
        return Poly(self.field, ring, -self.degree, self.c[::-1])

    def strip_x(self):
        """Remove the power of the variable and make monic (unit normalisation in
        the Laurent ring); result has nonzero constant term."""
        if not self.c:
            return self
        return self.like(0, self.c).monic()

    def x_valuation(self) -> int:
        return self.low if self.c else 0

    def __call__(self, a):
        """Evaluate at a scalar (must be nonzero if negative exponents occur)."""
        a = self.field(a)
        total = self.field.zero
        for e, b in self.terms():
            total = total + b * (a ** e if e >= 0 else (self.field.one / a) ** (-e))
        return total

    def derivative(self):
        return Poly.from_dict(self.field, self.ring, {e - 1: a * e for e, a in self.terms() if e != 0})

    # comparison / display -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return (self.ring == other.ring and self.field == other.field
                    and self.low == other.low and self.c == other.c)
        if not self.c:
            return other == 0
        return self.is_const() and self.c[0] == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.low, tuple(str(a) for a in self.c)))
        return self._hash

    def to_str(self, var=None) -> str:
        var = var or VARNAME[self.ring]
        if not self.c:
            return "0"
        parts = []
        for e, a in reversed(self.terms()):
            s = str(a)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            if "/" in s and e != 0:
                s = "(%s)" % s
            if e == 0:
                body = s
            else:
                mono = var if e == 1 else "%s^%d" % (var, e)
                body = mono if s == "1" else "%s*%s" % (s, mono)
            parts.append(("-" if neg else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += " %s %s" % (sign, body)
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return "Poly[%s](%s)" % (self.ring, self.to_str())


def gcd(a: Poly, b: Poly) -> Poly:
    while b.c:
        a, b = b, a % b
    return a.monic()


def xgcd(a: Poly, b: Poly):
    """Return (g, s, t) with s*a + t*b = g, g monic (or zero)."""
    one = Poly.const(a.field, a.ring, 1)
    zero = Poly.zero(a.field, a.ring)
    r0, r1, s0, s1, t0, t1 = a, b, one, zero, zero, one
    while r1.c:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.c:
        inv = a.field.one / r0.lc
        return r0 * inv, s0 * inv, t0 * inv
    return r0, s0, t0


def inverse_mod(a: Poly, m: Poly) -> Poly:
    g, s, _ = xgcd(a % m, m)
    if not (g.is_const() and g.c):
        raise ZeroDivisionError("not invertible modulo %s" % m)
    return s % m


def reduce_laurent(f: Poly, m: Poly) -> Poly:
    """Canonical representative of a Laurent element modulo m (m has nonzero
    constant term): a polynomial of degree < deg m."""
    if m.low != 0:
        raise ValueError("modulus must be coprime to the variable")
    if m.degree == 0:
        return Poly.zero(f.field, f.ring)
    if not f.c:
        return f
    if f.low >= 0:
        return f % m
    xinv = inverse_mod(Poly.monomial(f.field, f.ring, 1), m)
    k = -f.low
    g = f.like(0, f.c) % m
    return (g * _powmod(xinv, k, m)) % m


def _powmod(a, k, m):
    result = Poly.const(a.field, a.ring, 1)
    while k:
        if k & 1:
            result = (result * a) % m
        a = (a * a) % m
        k >>= 1
    return result


def reciprocal(p: Poly) -> Poly:
    """Monic reciprocal y^deg(p) p(1/y), as an element of the other chart."""
    if not p.c or p.low != 0:
        raise ValueError("reciprocal needs a polynomial with nonzero constant term")
    other = POLY_V if p.ring == POLY_U else POLY_U
    return Poly(p.field, other, 0, p.c[::-1]).monic()
