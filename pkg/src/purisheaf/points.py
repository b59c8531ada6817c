"""Closed points of P^1 and the labels of indecomposable objects.

The same label classes serve as decomposition labels for coherent sheaves and
as points of the Ziegler spectrum (which adds Prufer, adic and generic points).
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactlinear import POLY_U, Field, Poly
from .exactlinear.factor import is_irreducible


@dataclass(frozen=True)
class ClosedPoint:
    """A monic irreducible p in k[x], or the point at infinity (poly None)."""

    poly: Poly | None = None

    def __post_init__(self):
        p = self.poly
        if p is not None:
            if p.ring != POLY_U:
                raise ValueError("closed points are given by polynomials in x")
            if p.degree < 1 or p.lc != p.field.one:
                raise ValueError("closed point polynomial must be monic of positive degree")
            if not is_irreducible(p):
                raise ValueError("%s is not irreducible over %r" % (p, p.field))

    @classmethod
    def finite(cls, p: Poly) -> "ClosedPoint":
        return cls(p.monic())

    @classmethod
    def rational(cls, field: Field, a) -> "ClosedPoint":
        """The point x = a."""
        return cls(Poly.from_list(field, POLY_U, [-field(a), 1]))

    @classmethod
    def infinity(cls) -> "ClosedPoint":
        return cls(None)

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def sort_key(self):
        if self.poly is None:
            return (1, 0, "")
        return (0, self.poly.degree, str(self.poly))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return "inf" if self.poly is None else str(self.poly).replace(" ", "")

    def __repr__(self):
        return "ClosedPoint(%s)" % self


INFINITY = ClosedPoint(None)


@dataclass(frozen=True, order=False)
class LB:
    """The line bundle O(n)."""

    n: int

    def sort_key(self):
        return (0, self.n)

    def __str__(self):
        return "LB(%d)" % self.n


@dataclass(frozen=True)
class Tors:
    """Indecomposable torsion sheaf of length m at a closed point."""

    pt: ClosedPoint
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("torsion length must be positive")

    def sort_key(self):
        return (1,) + self.pt.sort_key() + (self.m,)

    def __str__(self):
        return "T(%s,%d)" % (self.pt, self.m)


@dataclass(frozen=True)
class Prufer:
    pt: ClosedPoint

    def sort_key(self):
        return (2,) + self.pt.sort_key()

    def __str__(self):
        return "Prufer(%s)" % self.pt


@dataclass(frozen=True)
class Adic:
    pt: ClosedPoint

    def sort_key(self):
        return (3,) + self.pt.sort_key()

    def __str__(self):
        return "Adic(%s)" % self.pt


@dataclass(frozen=True)
class Generic:
    def sort_key(self):
        return (4,)

    def __str__(self):
        return "Gen"


GENERIC = Generic()


def sorted_labels(labels):
    return sorted(labels, key=lambda l: l.sort_key())
