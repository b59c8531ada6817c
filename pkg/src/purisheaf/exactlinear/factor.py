"""Factorisation into monic irreducibles, delegated to sympy."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import sympy

from .poly import Poly

_t = sympy.Symbol("t")


def _to_sympy(p: Poly):
    if p.low < 0:
        raise ValueError("factor needs a polynomial")
    if p.field.p is None:
        coeffs = [sympy.Rational(a.numerator, a.denominator) for a in reversed(p._as_dense())]
        return sympy.Poly(coeffs, _t, domain="QQ")
    coeffs = [int(a.v) for a in reversed(p._as_dense())]
    return sympy.Poly(coeffs, _t, modulus=p.field.p)


def _from_sympy(sp, field, ring) -> Poly:
    coeffs = sp.all_coeffs()[::-1]
    if field.p is None:
        vals = [Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for c in coeffs]
    else:
        vals = [int(c) % field.p for c in coeffs]
    return Poly.from_list(field, ring, vals).monic()


@lru_cache(maxsize=4096)
def factor(p: Poly):
    """Monic irreducible factors with multiplicities, sorted by (degree, text)."""
    if not p.c:
        raise ValueError("cannot factor zero")
    if p.degree == 0:
        return ()
    _, facs = _to_sympy(p).factor_list()
    out = [(_from_sympy(f, p.field, p.ring), m) for f, m in facs]
    out.sort(key=lambda fm: (fm[0].degree, str(fm[0])))
    return tuple(out)


def is_irreducible(p: Poly) -> bool:
    f = factor(p)
    return len(f) == 1 and f[0][1] == 1
