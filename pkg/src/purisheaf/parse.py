"""Text formats for sheaves, short exact sequences and Ziegler point sets.

Sheaves:   O(n), T(poly, m), T(inf, m), F ++ G, F * G, twist(F, n), (F), 0
Sequences: [0 ->] A -> B -> C [-> 0]
Points:    LB(n), LB(>=n), LB(<=n), LB(*), T(pt, m), T(pt, *), T(*, *),
           Prufer(pt), Prufer(*), Adic(pt), Adic(*), Gen, separated by commas
           and optionally wrapped in braces.

Whitespace is ignored.  Polynomials are in x with integer or a/b
coefficients.  Errors carry the byte offset of the offending token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .exactlinear import POLY_U, Field, Poly
from .points import GENERIC, Adic, ClosedPoint, INFINITY, LB, Prufer, Tors
from .sheafp1 import direct_sum, line_bundle, tensor_sheaf, torsion_sheaf, twist, zero_sheaf


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__("%s at byte %d" % (message, offset))
        self.message = message
        self.offset = offset
        self.text = text

    def caret(self) -> str:
        """The input with a caret under the error position."""
        return "%s\n%s^" % (self.text, " " * len(self.text.encode()[:self.offset].decode(errors="ignore")))


_TOKEN = re.compile(r"\s*(?:(->|\+\+|>=|<=|[-+*/^(),{}])|(\d+)|([A-Za-z_][A-Za-z_0-9]*))")


@dataclass(frozen=True)
class Token:
    kind: str    # "op", "int", "name", "end"
    text: str
    offset: int  # byte offset


def tokenize(text: str) -> list:
    out = []
    pos = 0
    data = text
    while True:
        while pos < len(data) and data[pos].isspace():
            pos += 1
        if pos == len(data):
            break
        m = _TOKEN.match(data, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character %r" % data[pos], len(data[:pos].encode()), text)
        start = len(data[:m.start(m.lastindex)].encode())
        kind = {1: "op", 2: "int", 3: "name"}[m.lastindex]
        out.append(Token(kind, m.group(m.lastindex), start))
        pos = m.end()
    out.append(Token("end", "", len(data.encode())))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.cur
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError("%s, found %s" % (msg, found), tok.offset, self.text)

    def accept(self, text):
        if self.cur.text == text and self.cur.kind != "end":
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            self.error("expected %r" % text)

    def integer(self) -> int:
        sign = -1 if self.accept("-") else 1
        if not sign == -1:
            self.accept("+")
        if self.cur.kind != "int":
            self.error("expected an integer")
        v = int(self.cur.text)
        self.i += 1
        return sign * v

    def end(self):
        if self.cur.kind != "end":
            self.error("unexpected trailing input")

    # -- polynomials in x ---------------------------------------------------------------
    def poly(self) -> tuple:
        """Coefficients (low to high) as Fractions."""
        coeffs = {}
        first = True
        while True:
            sign = 1
            if self.accept("-"):
                sign = -1
            elif not self.accept("+") and not first:
                break
            first = False
            coef, has_coef = Fraction(1), False
            if self.cur.kind == "int":
                coef = Fraction(int(self.cur.text))
                self.i += 1
                has_coef = True
                if self.accept("/"):
                    if self.cur.kind != "int" or int(self.cur.text) == 0:
                        self.error("expected a nonzero denominator")
                    coef /= int(self.cur.text)
                    self.i += 1
                self.accept("*")
            e = 0
            if self.cur.kind == "name" and self.cur.text == "x":
                self.i += 1
                e = 1
                if self.accept("^"):
                    if self.cur.kind != "int":
                        self.error("expected an exponent")
                    e = int(self.cur.text)
                    self.i += 1
            elif not has_coef:
                self.error("expected a polynomial term")
            coeffs[e] = coeffs.get(e, Fraction(0)) + sign * coef
        top = max((e for e, c in coeffs.items() if c != 0), default=-1)
        return tuple(coeffs.get(e, Fraction(0)) for e in range(top + 1))

    def point(self):
        """A closed point: 'inf' or a polynomial (None for inf)."""
        if self.cur.kind == "name" and self.cur.text == "inf":
            self.i += 1
            return None
        tok = self.cur
        c = self.poly()
        if len(c) < 2:
            self.error("a closed point needs a polynomial of positive degree", tok)
        return c

    # -- sheaves ------------------------------------------------------------------------
    def sheaf(self):
        items = [self.tensor()]
        while self.accept("++"):
            items.append(self.tensor())
        return items[0] if len(items) == 1 else SumExpr(tuple(items))

    def tensor(self):
        items = [self.atom()]
        while self.accept("*"):
            items.append(self.atom())
        return items[0] if len(items) == 1 else TensorExpr(tuple(items))

    def atom(self):
        tok = self.cur
        if self.accept("("):
            e = self.sheaf()
            self.expect(")")
            return e
        if tok.kind == "int" and tok.text == "0":
            self.i += 1
            return ZeroExpr()
        if tok.kind != "name":
            self.error("expected a sheaf")
        self.i += 1
        if tok.text == "O":
            self.expect("(")
            n = self.integer()
            self.expect(")")
            return LineExpr(n)
        if tok.text == "T":
            self.expect("(")
            pt = self.point()
            self.expect(",")
            mtok = self.cur
            m = self.integer()
            if m < 1:
                self.error("torsion length must be positive", mtok)
            self.expect(")")
            return TorsExpr(pt, m, tok.offset)
        if tok.text == "twist":
            self.expect("(")
            e = self.sheaf()
            self.expect(",")
            n = self.integer()
            self.expect(")")
            return TwistExpr(e, n)
        self.error("unknown sheaf constructor", tok)

    # -- Ziegler points -----------------------------------------------------------------
    def zg_item(self):
        tok = self.cur
        if tok.kind != "name":
            self.error("expected a Ziegler point")
        self.i += 1
        if tok.text == "Gen":
            return ("gen",)
        if tok.text == "LB":
            self.expect("(")
            if self.accept("*"):
                out = ("lb_all",)
            elif self.accept(">="):
                out = ("lb_from", self.integer())
            elif self.accept("<="):
                out = ("lb_upto", self.integer())
            else:
                out = ("lb", self.integer())
            self.expect(")")
            return out
        if tok.text == "T":
            self.expect("(")
            if self.accept("*"):
                self.expect(",")
                self.expect("*")
                self.expect(")")
                return ("all_tors",)
            pt = self.point()
            self.expect(",")
            if self.accept("*"):
                self.expect(")")
                return ("tube", pt, tok.offset)
            mtok = self.cur
            m = self.integer()
            if m < 1:
                self.error("torsion length must be positive", mtok)
            self.expect(")")
            return ("tors", pt, m, tok.offset)
        if tok.text in ("Prufer", "Adic"):
            self.expect("(")
            if self.accept("*"):
                self.expect(")")
                return (tok.text.lower() + "_all",)
            pt = self.point()
            self.expect(")")
            return (tok.text.lower(), pt, tok.offset)
        self.error("unknown Ziegler point", tok)

    def zg_set(self):
        braces = self.accept("{")
        items = []
        if not (braces and self.cur.text == "}"):
            items.append(self.zg_item())
            while self.accept(","):
                items.append(self.zg_item())
        if braces:
            self.expect("}")
        return items


def _fmt_frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def format_poly(coeffs) -> str:
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "" if e == 0 else "x" if e == 1 else "x^%d" % e
        body = _fmt_frac(a) if (a != 1 or e == 0) else ""
        parts.append((sign, body + mono))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return s + "".join(sg + t for sg, t in parts[1:])


def build_point(coeffs, field: Field, offset: int = 0, text: str = "") -> ClosedPoint:
    if coeffs is None:
        return INFINITY
    try:
        p = Poly.from_list(field, POLY_U, [field(c) for c in coeffs])
        if p.degree < 1:
            raise ValueError("polynomial degenerates over %r" % field)
        return ClosedPoint.finite(p)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError("bad closed point: %s" % e, offset, text) from None


# -- sheaf expressions -------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroExpr:
    def build(self, field):
        return zero_sheaf(field)

    def __str__(self):
        return "0"


@dataclass(frozen=True)
class LineExpr:
    n: int

    def build(self, field):
        return line_bundle(self.n, field)

    def __str__(self):
        return "O(%d)" % self.n


@dataclass(frozen=True)
class TorsExpr:
    pt: tuple | None
    m: int
    offset: int = 0

    def build(self, field):
        return torsion_sheaf(build_point(self.pt, field, self.offset), self.m, field)

    def __str__(self):
        return "T(%s,%d)" % ("inf" if self.pt is None else format_poly(self.pt), self.m)

    def __eq__(self, other):
        return isinstance(other, TorsExpr) and (self.pt, self.m) == (other.pt, other.m)

    def __hash__(self):
        return hash((self.pt, self.m))


@dataclass(frozen=True)
class SumExpr:
    items: tuple

    def build(self, field):
        return direct_sum([i.build(field) for i in self.items], field)

    def __str__(self):
        return " ++ ".join(str(i) for i in self.items)


def _wrap(e) -> str:
    return "(%s)" % e if isinstance(e, SumExpr) else str(e)


@dataclass(frozen=True)
class TensorExpr:
    items: tuple

    def build(self, field):
        out = self.items[0].build(field)
        for i in self.items[1:]:
            out = tensor_sheaf(out, i.build(field))
        return out

    def __str__(self):
        return " * ".join(_wrap(i) for i in self.items)


@dataclass(frozen=True)
class TwistExpr:
    inner: object
    n: int

    def build(self, field):
        return twist(self.inner.build(field), self.n)

    def __str__(self):
        return "twist(%s,%d)" % (self.inner, self.n)


def parse_sheaf(text: str):
    p = _Parser(text)
    e = p.sheaf()
    p.end()
    return e


def build_sheaf(text: str, field: Field):
    expr = parse_sheaf(text)
    try:
        return expr.build(field)
    except ParseError as e:
        raise ParseError(e.message, e.offset, text) from None


@dataclass(frozen=True)
class SequenceExpr:
    A: object
    B: object
    C: object

    def __str__(self):
        return "0 -> %s -> %s -> %s -> 0" % (self.A, self.B, self.C)


def parse_sequence(text: str) -> SequenceExpr:
    """Arrow chain of three sheaves, with optional zero ends."""
    p = _Parser(text)
    terms = [p.sheaf()]
    while p.accept("->"):
        terms.append(p.sheaf())
    p.end()
    if len(terms) > 3 and terms[0] == ZeroExpr():
        terms = terms[1:]
    if len(terms) > 3 and terms[-1] == ZeroExpr():
        terms = terms[:-1]
    if len(terms) != 3:
        raise ParseError("expected a chain A -> B -> C, got %d terms" % len(terms), 0, text)
    return SequenceExpr(*terms)


# -- Ziegler point sets ------------------------------------------------------------------

def parse_point_set(text: str, field: Field):
    """A PointSet from a comma separated description."""
    from .ziegler import ALL, PointSet
    p = _Parser(text)
    items = p.zg_set()
    p.end()
    lb, tors, tubes, pr, ad = set(), set(), set(), set(), set()
    lo = hi = None
    all_tors = gen = False
    pr_all = ad_all = False
    for it in items:
        kind = it[0]
        try:
            if kind == "gen":
                gen = True
            elif kind == "lb":
                lb.add(it[1])
            elif kind == "lb_from":
                hi = it[1] if hi is None else min(hi, it[1])
            elif kind == "lb_upto":
                lo = it[1] if lo is None else max(lo, it[1])
            elif kind == "lb_all":
                lo, hi = 0, 0
            elif kind == "all_tors":
                all_tors = True
            elif kind == "tube":
                tubes.add(build_point(it[1], field, it[2], text))
            elif kind == "tors":
                tors.add(Tors(build_point(it[1], field, it[3], text), it[2]))
            elif kind == "prufer":
                pr.add(build_point(it[1], field, it[2], text))
            elif kind == "adic":
                ad.add(build_point(it[1], field, it[2], text))
            elif kind == "prufer_all":
                pr_all = True
            elif kind == "adic_all":
                ad_all = True
        except ParseError as e:
            raise ParseError(e.message, e.offset, text) from None
    return PointSet(frozenset(lb), lo, hi, frozenset(tors), frozenset(tubes), all_tors,
                    ALL if pr_all else frozenset(pr), ALL if ad_all else frozenset(ad), gen).canonical()


def parse_points(text: str, field: Field) -> list:
    """Individual Ziegler points (no families)."""
    p = _Parser(text)
    items = p.zg_set()
    p.end()
    out = []
    for it in items:
        kind = it[0]
        if kind == "gen":
            out.append(GENERIC)
        elif kind == "lb":
            out.append(LB(it[1]))
        elif kind == "tors":
            out.append(Tors(build_point(it[1], field, it[3], text), it[2]))
        elif kind == "prufer":
            out.append(Prufer(build_point(it[1], field, it[2], text)))
        elif kind == "adic":
            out.append(Adic(build_point(it[1], field, it[2], text)))
        else:
            raise ParseError("families are not single points", 0, text)
    return out
