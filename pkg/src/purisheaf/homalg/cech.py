"""Cech cohomology on the cover {U, V} of P^1.

The Cech differential is d(a, b) = glue(a) - b on the overlap, written in the
normal coordinates of the V-overlap module.  Free overlap coordinates are
Laurent polynomials; every monomial x^e with e <= 0 is the image of the
V-section y^(-e), so those coordinates are dropped together with the free
V-sources.  What remains is

  sources: x^e on U-summands (all e >= 0 for free ones), y^e on torsion V-summands
  targets: x^e, e >= 1, on free overlap coordinates and a finite basis of each
           torsion overlap coordinate.

H^0 is the kernel; H^1 is the cokernel.  With E the largest absolute exponent
in the normalised glue, every global section has U-degree <= E and every
overlap monomial x^e with e >= E is a coboundary modulo torsion coordinates, so
the cokernel is computed on the target window e < E.  The source window is
widened until the cokernel dimension matches h0 - chi, where chi comes from
the degree of the free part and the torsion length, and one further widening
confirms it.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..exactlinear import BUDGET, LAURENT, POLY_U, POLY_V, Echelon, Poly, RingMatrix, reduce_laurent
from ..exactlinear.matrix import smith_normal_form
from ..fpmod import FPModule, ModuleMorphism, base_change_matrix
from ..sheafp1 import CoherentSheaf

WIDEN_STEP = 4


class WindowNotStable(ArithmeticError):
    pass


def _overlap_terms(h: Poly, a: int, modulus):
    """Keys and scalars of an overlap element in coordinate a."""
    if modulus is None:
        return {("F", a, e): c for e, c in h.terms() if e >= 1}
    r = reduce_laurent(h, modulus)
    return {("T", a, e): c for e, c in r.terms()}


def free_degree(F: CoherentSheaf) -> int:
    """Degree of F modulo torsion, read off det of the free-free glue block."""
    nd = F.normal
    free_rows = [a for a, m in enumerate(nd.modV) if m is None]
    free_cols = [b for b, m in enumerate(nd.modU) if m is None]
    r = len(free_rows)
    if r != len(free_cols):
        raise ValueError("glue does not match free ranks")
    if r == 0:
        return 0
    block = [[nd.G[a][b] for b in free_cols] for a in free_rows]
    s = max([0] + [-h.low for row in block for h in row if h.c])
    polys = [[Poly(F.field, POLY_U, h.low + s, h.c) if h.c else Poly.zero(F.field, POLY_U) for h in row]
             for row in block]
    S, _, _ = smith_normal_form(RingMatrix(F.field, POLY_U, r, r, polys))
    total = sum(S.e[i][i].degree for i in range(r))
    return -(total - r * s)


def torsion_length(F: CoherentSheaf) -> int:
    nU, nV = F.mU.normal, F.mV.normal
    return (sum(d.degree for d in nU.moduli if d is not None)
            + sum(d.x_valuation() for d in nV.moduli if d is not None))


def euler_char(F: CoherentSheaf) -> int:
    """chi(F) = rank + degree of the free part + torsion length."""
    return F.rank + free_degree(F) + torsion_length(F)


def max_exponent(F: CoherentSheaf) -> int:
    nd = F.normal
    out = 0
    for row in nd.G + nd.Ginv:
        for h in row:
            if h.c:
                out = max(out, abs(h.low), abs(h.degree))
    return out


@dataclass
class CechDatum:
    sheaf: CoherentSheaf
    h0_basis: list          # global sections as (U vector, V vector) in chart generators
    h1_keys: list           # overlap monomials whose classes form a basis of H^1
    window: tuple           # (source degree window, target degree window)
    chi: int
    certificates: dict = dc_field(default_factory=dict)
    _ech: Echelon = None
    _kernel: Echelon = None
    _source_keys: list = None
    _M: int = 0
    _h1_index: dict = None

    @property
    def h0(self) -> int:
        return len(self.h0_basis)

    @property
    def h1(self) -> int:
        return len(self.h1_keys)

    @property
    def dims(self):
        return (self.h0, self.h1)

    def reduce_h1(self, cochain: dict):
        """Coordinates of an overlap cochain's class in the H^1 basis."""
        r = self._ech.reduce_full(cochain)
        bad = [k for k in r if k not in self._h1_index]
        if bad:
            raise WindowNotStable("cochain outside the certified window: %r" % (bad[:3],))
        out = [self.sheaf.field.zero] * self.h1
        for k, c in r.items():
            out[self._h1_index[k]] = c
        return out

    def section_vector(self, sU, sV) -> dict:
        """Source-key vector of a global section given in chart generator coordinates."""
        F = self.sheaf
        nd = F.normal
        aU = _apply(nd.nU.to_normal, sU)
        aV = _apply(nd.nV.to_normal, sV)
        vec = {}
        for i, d in enumerate(nd.nU.moduli):
            h = aU[i] if d is None else aU[i] % d
            for e, c in h.terms():
                vec[("U", i, e)] = c
        for j, d in enumerate(nd.nV.moduli):
            if d is None:
                continue
            for e, c in (aV[j] % d).terms():
                vec[("V", j, e)] = c
        return vec

    def section_coordinates(self, sU, sV):
        """Coordinates of a global section in h0_basis (None when not a section)."""
        vec = self.section_vector(sU, sV)
        c = self._kernel.express(vec)
        if c is None:
            return None
        return [c.get(k, self.sheaf.field.zero) for k in range(self.h0)]


def _apply(mat: RingMatrix, vec):
    return [sum((mat.e[i][j] * vec[j] for j in range(mat.cols)), Poly.zero(mat.field, mat.ring))
            for i in range(mat.rows)]


class _Complex:
    """The reduced Cech complex of a sheaf, with columns produced on demand."""

    def __init__(self, F: CoherentSheaf):
        self.F = F
        nd = self.nd = F.normal
        self.E = max_exponent(F)
        self.M = max(self.E - 1, 0)
        self.target_keys = []
        for a, m in enumerate(nd.modV):
            if m is None:
                self.target_keys += [("F", a, e) for e in range(1, self.M + 1)]
            else:
                self.target_keys += [("T", a, e) for e in range(m.degree)]
        self.inside = set(self.target_keys)
        self._cur = {}   # free U summand -> current column polys

    def priority(self, key):
        kind, a, e = key
        return (1 if key not in self.inside else 0, e, kind, a)

    def column_U(self, i, e):
        nd = self.nd
        if i not in nd.posU:
            return {}
        c = nd.posU[i]
        vec = {}
        x_e = Poly.monomial(self.F.field, LAURENT, e)
        for a, row in enumerate(nd.G):
            h = row[c]
            if h.c:
                vec.update(_overlap_terms(h * x_e, a, nd.modV[a]))
        return vec

    def column_V(self, j, e):
        nd = self.nd
        if j not in nd.posV:
            return {}
        a = nd.posV[j]
        h = Poly.monomial(self.F.field, LAURENT, -e, -self.F.field.one)
        return _overlap_terms(h, a, nd.modV[a])

    def finite_sources(self):
        nd = self.nd
        keys = []
        for i, d in enumerate(nd.nU.moduli):
            if d is not None:
                keys += [("U", i, e) for e in range(d.degree)]
        for j, d in enumerate(nd.nV.moduli):
            if d is not None:
                keys += [("V", j, e) for e in range(d.degree)]
        return keys

    def free_U(self):
        return [i for i, d in enumerate(self.nd.nU.moduli) if d is None]

    def column(self, key):
        kind, i, e = key
        return self.column_U(i, e) if kind == "U" else self.column_V(i, e)


def cech(F: CoherentSheaf) -> CechDatum:
    """H^0 and H^1 of a coherent sheaf with explicit bases."""
    cx = _Complex(F)
    field = F.field
    chi = euler_char(F)
    ech = Echelon(field, priority=cx.priority, track=True)
    keys = []

    def add(key):
        keys.append(key)
        ech.add(cx.column(key))

    for key in cx.finite_sources():
        add(key)
    free = cx.free_U()
    N = -1
    history = []
    target = cx.E + 2
    while True:
        for e in range(N + 1, target + 1):
            for i in free:
                add(("U", i, e))
        N = target
        h0 = len(ech.kernel)
        inside_rank = sum(1 for k in ech.rows if k in cx.inside)
        h1 = len(cx.target_keys) - inside_rank
        history.append((N, h0, h1))
        consistent = h0 - h1 == chi
        if consistent and len(history) >= 2 and history[-2][1:] == (h0, h1):
            break
        if N > BUDGET.max_degree:
            raise WindowNotStable("Cech window did not stabilise within the degree budget")
        target = N + WIDEN_STEP
    h0_basis = [_kernel_to_section(cx, keys, combo) for combo in ech.kernel]
    kernel_ech = Echelon(field, track=True)
    for combo in ech.kernel:
        kernel_ech.add({keys[k]: c for k, c in combo.items()})
    pivots = set(ech.rows)
    h1_keys = [k for k in cx.target_keys if k not in pivots]
    datum = CechDatum(F, h0_basis, h1_keys, ((0, N), (1, cx.M)), chi,
                      certificates={"history": history, "chi_match": True})
    datum._ech = ech
    datum._kernel = kernel_ech
    datum._source_keys = keys
    datum._M = cx.M
    datum._h1_index = {k: n for n, k in enumerate(h1_keys)}
    return datum


def _kernel_to_section(cx: _Complex, keys, combo):
    F, nd = cx.F, cx.nd
    field = F.field
    aU = [Poly.zero(field, POLY_U) for _ in nd.nU.moduli]
    bV = [Poly.zero(field, POLY_V) for _ in nd.nV.moduli]
    for k, c in combo.items():
        kind, i, e = keys[k]
        if kind == "U":
            aU[i] = aU[i] + Poly.monomial(field, POLY_U, e, c)
        else:
            bV[i] = bV[i] + Poly.monomial(field, POLY_V, e, c)
    # free V components: the nonpositive part of glue(a)
    for j, d in enumerate(nd.nV.moduli):
        if d is not None:
            continue
        a = nd.posV[j]
        h = Poly.zero(field, LAURENT)
        for b, i in enumerate(nd.keepU):
            if aU[i].c and nd.G[a][b].c:
                h = h + nd.G[a][b] * aU[i].to_ring(LAURENT)
        bV[j] = Poly.from_dict(field, POLY_V, {-e: c for e, c in h.terms() if e <= 0})
    sU = _apply(nd.nU.from_normal, aU)
    sV = _apply(nd.nV.from_normal, bV)
    return (sU, sV)


def h0(F: CoherentSheaf) -> int:
    return cech(F).h0


def h1(F: CoherentSheaf) -> int:
    return cech(F).h1


def verify_section(F: CoherentSheaf, sU, sV) -> bool:
    """The glue equation holds exactly for the pair (sU, sV)."""
    field = F.field
    colU = RingMatrix(field, POLY_U, len(sU), 1, [[h] for h in sU])
    colV = RingMatrix(field, POLY_V, len(sV), 1, [[h] for h in sV])
    diff = F.glue @ base_change_matrix(colU) - base_change_matrix(colV)
    one = FPModule.free(field, LAURENT, 1)
    return ModuleMorphism(one, F.laurentV, diff, check=False).is_zero()
