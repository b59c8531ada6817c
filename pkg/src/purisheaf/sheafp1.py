"""Coherent sheaves on P^1 as two chart modules glued over k[x, 1/x].

Chart U has coordinate ring k[x], chart V has k[y] with y = 1/x on the
overlap.  A sheaf stores its chart modules and the gluing isomorphism
``glue: M_U (x) L -> M_V (x) L`` (and its inverse) as Laurent matrices on
generators.  The U-generator of O(n) is sent to x^(-n) times the V-generator,
so global sections of O(n) are the polynomials of degree <= n.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .exactlinear import (LAURENT, POLY_U, POLY_V, Field, Poly, RingMatrix, inverse_mod, reciprocal,
                          solve_linear)
from .fpmod import (FPModule, ModuleMorphism, base_change_laurent, base_change_matrix, reduce_mod,
                    tensor_module)
from .points import INFINITY, LB, ClosedPoint, Tors


class SheafError(ValueError):
    pass


class NotExact(SheafError):
    pass


def _laurent_mono(field, e, a=1):
    return Poly.monomial(field, LAURENT, e, a)


class CoherentSheaf:
    def __init__(self, mU: FPModule, mV: FPModule, glue: RingMatrix, glue_inv: RingMatrix,
                 check: bool = False):
        if mU.ring != POLY_U or mV.ring != POLY_V:
            raise SheafError("chart modules must live over k[x] and k[y]")
        if glue.ring != LAURENT or glue_inv.ring != LAURENT:
            raise SheafError("glue must be a Laurent matrix")
        if (glue.rows, glue.cols) != (mV.ngens, mU.ngens) or (glue_inv.rows, glue_inv.cols) != (mU.ngens, mV.ngens):
            raise SheafError("glue shape does not match chart generators")
        self.field = mU.field
        self.mU, self.mV = mU, mV
        self.glue, self.glue_inv = glue, glue_inv
        if check and not self.verify_glue():
            raise SheafError("glue maps are not mutually inverse isomorphisms")

    # -- certificates ---------------------------------------------------------------
    @cached_property
    def laurentU(self) -> FPModule:
        return base_change_laurent(self.mU)[0]

    @cached_property
    def laurentV(self) -> FPModule:
        return base_change_laurent(self.mV)[0]

    def verify_glue(self) -> bool:
        """Both glue maps are well defined and compose to identities."""
        g = ModuleMorphism(self.laurentU, self.laurentV, self.glue, check=False)
        h = ModuleMorphism(self.laurentV, self.laurentU, self.glue_inv, check=False)
        if not (g.is_well_defined() and h.is_well_defined()):
            return False
        return (h @ g).equals(self.laurentU.identity()) and (g @ h).equals(self.laurentV.identity())

    # -- normal data ----------------------------------------------------------------
    @cached_property
    def normal(self) -> "GlueNormal":
        return GlueNormal(self)

    @property
    def D(self) -> int:
        return self.normal.D

    def is_zero(self) -> bool:
        return self.mU.is_zero() and self.mV.is_zero()

    @property
    def rank(self) -> int:
        return self.mU.normal.free_rank

    # -- constructions --------------------------------------------------------------
    def direct_sum(self, other: "CoherentSheaf") -> "CoherentSheaf":
        return CoherentSheaf(self.mU.direct_sum(other.mU), self.mV.direct_sum(other.mV),
                             self.glue.block_diag(other.glue), self.glue_inv.block_diag(other.glue_inv))

    __add__ = direct_sum

    def identity(self) -> "SheafMorphism":
        return SheafMorphism(self, self, RingMatrix.identity(self.field, POLY_U, self.mU.ngens),
                             RingMatrix.identity(self.field, POLY_V, self.mV.ngens), check=False)

    def __repr__(self):
        return "CoherentSheaf(U: %d gens/%d rels, V: %d gens/%d rels)" % (
            self.mU.ngens, self.mU.relations.cols, self.mV.ngens, self.mV.relations.cols)


class GlueNormal:
    """Chart normal forms plus the glue written in normal overlap coordinates.

    Overlap summands are the chart summands that survive base change to the
    Laurent ring; ``G`` maps U-overlap coordinates to V-overlap coordinates and
    ``Ginv`` goes back.  Torsion moduli over the overlap have nonzero constant
    term."""

    def __init__(self, F: CoherentSheaf):
        field = F.field
        self.nU, self.nV = F.mU.normal, F.mV.normal
        self.keepU, self.modU = [], []
        for i, d in enumerate(self.nU.moduli):
            if d is None:
                self.keepU.append(i); self.modU.append(None)
            else:
                dl = d.to_ring(LAURENT).strip_x()
                if not dl.is_unit():
                    self.keepU.append(i); self.modU.append(dl)
        self.keepV, self.modV = [], []
        for j, d in enumerate(self.nV.moduli):
            if d is None:
                self.keepV.append(j); self.modV.append(None)
            else:
                dl = d.invert_variable(LAURENT).strip_x()
                if not dl.is_unit():
                    self.keepV.append(j); self.modV.append(dl)
        PV = base_change_matrix(self.nV.to_normal)
        QU = base_change_matrix(self.nU.from_normal)
        PU = base_change_matrix(self.nU.to_normal)
        QV = base_change_matrix(self.nV.from_normal)
        G = PV @ F.glue @ QU
        Gi = PU @ F.glue_inv @ QV
        self.G = [[reduce_mod(G.e[r][c], self.modV[a]) for c in self.keepU]
                  for a, r in enumerate(self.keepV)]
        self.Ginv = [[reduce_mod(Gi.e[r][c], self.modU[a]) for c in self.keepV]
                     for a, r in enumerate(self.keepU)]
        self.posU = {i: a for a, i in enumerate(self.keepU)}
        self.posV = {j: a for a, j in enumerate(self.keepV)}
        spans = [h.span() for row in self.G + self.Ginv for h in row]
        self.D = max(spans, default=0)
        self.field = field


# -- morphisms ----------------------------------------------------------------------

class SheafMorphism:
    def __init__(self, source: CoherentSheaf, target: CoherentSheaf, fU: RingMatrix, fV: RingMatrix,
                 check: bool = True):
        self.source, self.target = source, target
        self.fU, self.fV = fU, fV
        if check:
            if not self.chart_U().is_well_defined() or not self.chart_V().is_well_defined():
                raise SheafError("chart maps are not module morphisms")
            if not self.is_compatible():
                raise SheafError("chart maps do not commute with the glue")

    def chart_U(self) -> ModuleMorphism:
        return ModuleMorphism(self.source.mU, self.target.mU, self.fU, check=False)

    def chart_V(self) -> ModuleMorphism:
        return ModuleMorphism(self.source.mV, self.target.mV, self.fV, check=False)

    def is_compatible(self) -> bool:
        lhs = self.target.glue @ base_change_matrix(self.fU)
        rhs = base_change_matrix(self.fV) @ self.source.glue
        diff = ModuleMorphism(self.source.laurentU, self.target.laurentV, lhs - rhs, check=False)
        return diff.is_zero()

    def __matmul__(self, other: "SheafMorphism") -> "SheafMorphism":
        return SheafMorphism(other.source, self.target, self.fU @ other.fU, self.fV @ other.fV, check=False)

    def __add__(self, other):
        return SheafMorphism(self.source, self.target, self.fU + other.fU, self.fV + other.fV, check=False)

    def __sub__(self, other):
        return SheafMorphism(self.source, self.target, self.fU - other.fU, self.fV - other.fV, check=False)

    def scale(self, c):
        return SheafMorphism(self.source, self.target, self.fU.scale(c), self.fV.scale(c), check=False)

    def is_zero(self) -> bool:
        return self.chart_U().is_zero() and self.chart_V().is_zero()

    def equals(self, other) -> bool:
        return (self - other).is_zero()

    def is_mono(self) -> bool:
        return self.chart_U().is_injective() and self.chart_V().is_injective()

    def is_epi(self) -> bool:
        return self.chart_U().is_surjective() and self.chart_V().is_surjective()

    @classmethod
    def zero(cls, source, target):
        f = source.field
        return cls(source, target, RingMatrix(f, POLY_U, target.mU.ngens, source.mU.ngens),
                   RingMatrix(f, POLY_V, target.mV.ngens, source.mV.ngens), check=False)

    def direct_sum(self, other):
        return SheafMorphism(self.source + other.source, self.target + other.target,
                             self.fU.block_diag(other.fU), self.fV.block_diag(other.fV), check=False)

    def __repr__(self):
        return "SheafMorphism(U=%r, V=%r)" % (self.fU, self.fV)


def hstack_morphisms(maps):
    """(f1, ..., fk): A1 + ... + Ak -> B."""
    src = maps[0].source
    fU, fV = maps[0].fU, maps[0].fV
    for f in maps[1:]:
        src = src + f.source
        fU, fV = fU.hstack(f.fU), fV.hstack(f.fV)
    return SheafMorphism(src, maps[0].target, fU, fV, check=False)


def vstack_morphisms(maps):
    """(f1; ...; fk): A -> B1 + ... + Bk."""
    tgt = maps[0].target
    fU, fV = maps[0].fU, maps[0].fV
    for f in maps[1:]:
        tgt = tgt + f.target
        fU, fV = fU.vstack(f.fU), fV.vstack(f.fV)
    return SheafMorphism(maps[0].source, tgt, fU, fV, check=False)


# -- constructors ------------------------------------------------------------------------

def line_bundle(n: int, field: Field) -> CoherentSheaf:
    mU = FPModule.free(field, POLY_U, 1)
    mV = FPModule.free(field, POLY_V, 1)
    return CoherentSheaf(mU, mV, RingMatrix(field, LAURENT, 1, 1, [[_laurent_mono(field, -n)]]),
                         RingMatrix(field, LAURENT, 1, 1, [[_laurent_mono(field, n)]]))


def zero_sheaf(field: Field) -> CoherentSheaf:
    return CoherentSheaf(FPModule.zero(field, POLY_U), FPModule.zero(field, POLY_V),
                         RingMatrix(field, LAURENT, 0, 0), RingMatrix(field, LAURENT, 0, 0))


def torsion_sheaf(pt: ClosedPoint, m: int, field: Field | None = None) -> CoherentSheaf:
    if m < 1:
        raise SheafError("torsion length must be at least 1")
    if pt.is_infinity:
        if field is None:
            raise SheafError("field required for the point at infinity")
        y = Poly.monomial(field, POLY_V, 1)
        return CoherentSheaf(FPModule.zero(field, POLY_U), FPModule.cyclic(y ** m),
                             RingMatrix(field, LAURENT, 1, 0), RingMatrix(field, LAURENT, 0, 1))
    p = pt.poly
    field = p.field
    if p.degree == 1 and p.low == 1:  # the point x = 0
        return CoherentSheaf(FPModule.cyclic(p ** m), FPModule.zero(field, POLY_V),
                             RingMatrix(field, LAURENT, 0, 1), RingMatrix(field, LAURENT, 1, 0))
    q = reciprocal(p)
    one = [[Poly.const(field, LAURENT, 1)]]
    return CoherentSheaf(FPModule.cyclic(p ** m), FPModule.cyclic(q ** m),
                         RingMatrix(field, LAURENT, 1, 1, one), RingMatrix(field, LAURENT, 1, 1, one))


def twist(F: CoherentSheaf, n: int) -> CoherentSheaf:
    return CoherentSheaf(F.mU, F.mV, F.glue.map(lambda a: a.shift(-n)), F.glue_inv.map(lambda a: a.shift(n)))


def tensor_sheaf(F: CoherentSheaf, G: CoherentSheaf) -> CoherentSheaf:
    return CoherentSheaf(tensor_module(F.mU, G.mU), tensor_module(F.mV, G.mV),
                         F.glue.kron(G.glue), F.glue_inv.kron(G.glue_inv))


def tensor_sheaf_morphism(f: SheafMorphism, g: SheafMorphism) -> SheafMorphism:
    return SheafMorphism(tensor_sheaf(f.source, g.source), tensor_sheaf(f.target, g.target),
                         f.fU.kron(g.fU), f.fV.kron(g.fV), check=False)


def direct_sum(sheaves, field: Field) -> CoherentSheaf:
    out = zero_sheaf(field)
    for s in sheaves:
        out = out + s
    return out


def sheaf_from_label(label, field: Field) -> CoherentSheaf:
    if isinstance(label, LB):
        return line_bundle(label.n, field)
    if isinstance(label, Tors):
        return torsion_sheaf(label.pt, label.m, field)
    raise SheafError("no coherent sheaf for label %s" % label)


def sheaf_from_labels(labels, field: Field) -> CoherentSheaf:
    return direct_sum([sheaf_from_label(l, field) for l in labels], field)


def laurent_to_chart_V(g: Poly, modulus: Poly | None = None) -> Poly:
    """Rewrite a Laurent element in x as an element of k[y] (y = 1/x).

    Positive powers of x need y to be invertible modulo ``modulus``."""
    field = g.field
    if all(e <= 0 for e, _ in g.terms()):
        out = Poly.from_dict(field, POLY_V, {-e: a for e, a in g.terms()})
        return out if modulus is None else out % modulus
    if modulus is None:
        raise SheafError("element is not a polynomial in y")
    yinv = inverse_mod(Poly.monomial(field, POLY_V, 1), modulus)
    out = Poly.zero(field, POLY_V)
    for e, a in g.terms():
        term = Poly.monomial(field, POLY_V, -e) if e <= 0 else _pow_mod(yinv, e, modulus)
        out = out + term.scale(a)
    return out % modulus


def _pow_mod(a, k, m):
    r = Poly.const(a.field, a.ring, 1)
    for _ in range(k):
        r = (r * a) % m
    return r


def line_bundle_map(f: Poly, a: int, b: int) -> SheafMorphism:
    """O(a) -> O(b) given by a polynomial f(x) of degree <= b - a."""
    field = f.field
    if f.c and f.degree > b - a:
        raise SheafError("section degree exceeds b - a")
    fU = f.to_ring(POLY_U)
    fV = laurent_to_chart_V(fU.to_ring(LAURENT).shift(a - b))
    return SheafMorphism(line_bundle(a, field), line_bundle(b, field),
                         RingMatrix(field, POLY_U, 1, 1, [[fU]]), RingMatrix(field, POLY_V, 1, 1, [[fV]]),
                         check=False)


def torsion_multiplication(pt: ClosedPoint, m_src: int, m_tgt: int, f: Poly, field: Field) -> SheafMorphism:
    """T(pt, m_src) -> T(pt, m_tgt) multiplying the chart generator by f.

    For finite points f is a polynomial in x, for infinity a polynomial in y.
    The map must be well defined (e.g. f divisible by p^(m_tgt - m_src) when
    m_tgt > m_src)."""
    S = torsion_sheaf(pt, m_src, field)
    T = torsion_sheaf(pt, m_tgt, field)
    if pt.is_infinity:
        return SheafMorphism(S, T, RingMatrix(field, POLY_U, 0, 0),
                             RingMatrix(field, POLY_V, 1, 1, [[f.to_ring(POLY_V)]]))
    fU = f.to_ring(POLY_U)
    if T.mV.ngens == 0:
        return SheafMorphism(S, T, RingMatrix(field, POLY_U, 1, 1, [[fU]]), RingMatrix(field, POLY_V, 0, 0))
    modV = T.mV.relations.e[0][0]
    fV = laurent_to_chart_V(fU.to_ring(LAURENT), modV)
    return SheafMorphism(S, T, RingMatrix(field, POLY_U, 1, 1, [[fU]]), RingMatrix(field, POLY_V, 1, 1, [[fV]]))


# -- kernels, images, cokernels ----------------------------------------------------------

@dataclass
class KernelCokernelImage:
    kernel: CoherentSheaf
    kernel_inclusion: SheafMorphism
    image: CoherentSheaf
    image_inclusion: SheafMorphism
    coimage_projection: SheafMorphism
    cokernel: CoherentSheaf
    cokernel_projection: SheafMorphism
    certificates: dict


def _express_glue(field, sub_src: RingMatrix, sub_tgt: RingMatrix, rel_tgt: RingMatrix, glue: RingMatrix):
    """Matrix X over L with sub_tgt X = glue sub_src modulo rel_tgt."""
    A = base_change_matrix(sub_tgt)
    R = base_change_matrix(rel_tgt)
    M = A.hstack(R) if R.cols else A
    rhs = glue @ base_change_matrix(sub_src)
    if A.cols == 0 or rhs.cols == 0:
        return RingMatrix(field, LAURENT, A.cols, rhs.cols)
    sol = solve_linear(M, rhs)
    if not sol.solvable:
        raise SheafError("glue does not restrict to the subsheaf")
    return sol.particular.submatrix(range(A.cols), range(rhs.cols))


def kernel_sheaf(f: SheafMorphism):
    S = f.source
    KU, iU = f.chart_U().kernel()
    KV, iV = f.chart_V().kernel()
    g = _express_glue(S.field, iU.matrix, iV.matrix, S.mV.relations, S.glue)
    gi = _express_glue(S.field, iV.matrix, iU.matrix, S.mU.relations, S.glue_inv)
    K = CoherentSheaf(KU, KV, g, gi)
    return K, SheafMorphism(K, S, iU.matrix, iV.matrix, check=False)


def cokernel_sheaf(f: SheafMorphism):
    T = f.target
    CU, pU = f.chart_U().cokernel()
    CV, pV = f.chart_V().cokernel()
    C = CoherentSheaf(CU, CV, T.glue, T.glue_inv)
    return C, SheafMorphism(T, C, pU.matrix, pV.matrix, check=False)


def image_sheaf(f: SheafMorphism):
    S = f.source
    IU, jU = f.chart_U().image()
    IV, jV = f.chart_V().image()
    I = CoherentSheaf(IU, IV, S.glue, S.glue_inv)
    inc = SheafMorphism(I, f.target, jU.matrix, jV.matrix, check=False)
    proj = SheafMorphism(S, I, RingMatrix.identity(S.field, POLY_U, S.mU.ngens),
                         RingMatrix.identity(S.field, POLY_V, S.mV.ngens), check=False)
    return I, inc, proj


def kernel_cokernel_image(f: SheafMorphism) -> KernelCokernelImage:
    K, k = kernel_sheaf(f)
    I, j, q = image_sheaf(f)
    C, c = cokernel_sheaf(f)
    certs = {
        "kernel_glue_inverse": K.verify_glue(),
        "composite_zero": (f @ k).is_zero(),
        "cokernel_kills_image": (c @ f).is_zero(),
        "image_factorisation": (j @ q).equals(f),
    }
    return KernelCokernelImage(K, k, I, j, q, C, c, certs)


# -- exact sequences --------------------------------------------------------------------

class ShortExactSeq:
    """0 -> A --f--> B --g--> C -> 0, certified chartwise on construction."""

    def __init__(self, f: SheafMorphism, g: SheafMorphism, check: bool = True):
        self.f, self.g = f, g
        self.A, self.B, self.C = f.source, f.target, g.target
        if check:
            problem = self.exactness_problem()
            if problem:
                raise NotExact("not exact: %s" % problem)

    def exactness_problem(self):
        if not self.f.is_mono():
            return "first map not injective"
        if not self.g.is_epi():
            return "second map not surjective"
        if not (self.g @ self.f).is_zero():
            return "composite not zero"
        for fm, gm, rel in ((self.f.chart_U(), self.g.chart_U(), self.B.mU.relations),
                            (self.f.chart_V(), self.g.chart_V(), self.B.mV.relations)):
            K0 = gm._kernel_generators()
            if K0.cols == 0:
                continue
            M = fm.matrix.hstack(rel) if rel.cols else fm.matrix
            if M.cols == 0:
                if not K0.is_zero():
                    return "kernel larger than image"
                continue
            if not solve_linear(M, K0).solvable:
                return "kernel larger than image"
        return None

    def __repr__(self):
        return "ShortExactSeq(%r -> %r -> %r)" % (self.A, self.B, self.C)


def split_sequence(A: CoherentSheaf, C: CoherentSheaf) -> ShortExactSeq:
    field = A.field
    B = A + C
    iU = RingMatrix.identity(field, POLY_U, A.mU.ngens).vstack(RingMatrix(field, POLY_U, C.mU.ngens, A.mU.ngens))
    iV = RingMatrix.identity(field, POLY_V, A.mV.ngens).vstack(RingMatrix(field, POLY_V, C.mV.ngens, A.mV.ngens))
    pU = RingMatrix(field, POLY_U, C.mU.ngens, A.mU.ngens).hstack(RingMatrix.identity(field, POLY_U, C.mU.ngens))
    pV = RingMatrix(field, POLY_V, C.mV.ngens, A.mV.ngens).hstack(RingMatrix.identity(field, POLY_V, C.mV.ngens))
    return ShortExactSeq(SheafMorphism(A, B, iU, iV, check=False), SheafMorphism(B, C, pU, pV, check=False))


def line_bundle_sequence(a: int, b: int, c: int, d: int, field: Field) -> ShortExactSeq:
    """0 -> O(a) -> O(b) + O(c) -> O(d) -> 0 for a < b <= c < d, a + d = b + c.

    First map (1, x^(c-a)), second map (x^(c-a), -1)."""
    if not (a < b <= c < d and a + d == b + c):
        raise SheafError("need a < b <= c < d and a + d = b + c")
    x = Poly.monomial(field, POLY_U, 1)
    one = Poly.const(field, POLY_U, 1)
    s1 = line_bundle_map(one, a, b)
    s2 = line_bundle_map(x ** (c - a), a, c)
    t1 = line_bundle_map(x ** (c - a), b, d)
    t2 = line_bundle_map(-one, c, d)
    return ShortExactSeq(vstack_morphisms([s1, s2]), hstack_morphisms([t1, t2]))


def torsion_sequence(pt: ClosedPoint, m1: int, m2: int, field: Field) -> ShortExactSeq:
    """0 -> T(pt, m1) -> T(pt, m1 + m2) -> T(pt, m2) -> 0 (multiplication by
    the uniformiser^m2, then reduction)."""
    if pt.is_infinity:
        u = Poly.monomial(field, POLY_V, 1)
    else:
        u = pt.poly
    one = Poly.const(field, u.ring, 1)
    f = torsion_multiplication(pt, m1, m1 + m2, u ** m2, field)
    g = torsion_multiplication(pt, m1 + m2, m2, one, field)
    return ShortExactSeq(f, g)


# -- random re-presentation -------------------------------------------------------------

def _random_unimodular(field, ring, n, rng, steps=3, max_deg=1):
    """Random product of elementary matrices and its inverse."""
    A = RingMatrix.identity(field, ring, n)
    Ai = RingMatrix.identity(field, ring, n)
    if n < 2:
        return A, Ai
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        q = Poly.from_list(field, ring, [field.random(rng, 2) for _ in range(rng.randint(0, max_deg) + 1)])
        E = RingMatrix.identity(field, ring, n).to_lists()
        E[i][j] = q
        Ei = RingMatrix.identity(field, ring, n).to_lists()
        Ei[i][j] = -q
        A = RingMatrix(field, ring, n, n, E) @ A
        Ai = Ai @ RingMatrix(field, ring, n, n, Ei)
    return A, Ai


def re_present(F: CoherentSheaf, rng: random.Random, steps: int = 3) -> tuple:
    """An isomorphic sheaf with randomly changed chart generators.

    Returns (sheaf, iso) where iso: F -> new sheaf."""
    field = F.field
    AU, AUi = _random_unimodular(field, POLY_U, F.mU.ngens, rng, steps)
    AV, AVi = _random_unimodular(field, POLY_V, F.mV.ngens, rng, steps)
    mU = FPModule(POLY_U, F.mU.ngens, AU @ F.mU.relations)
    mV = FPModule(POLY_V, F.mV.ngens, AV @ F.mV.relations)
    glue = base_change_matrix(AV) @ F.glue @ base_change_matrix(AUi)
    glue_inv = base_change_matrix(AU) @ F.glue_inv @ base_change_matrix(AVi)
    G = CoherentSheaf(mU, mV, glue, glue_inv)
    return G, SheafMorphism(F, G, AU, AV, check=False)


def default_points(field: Field):
    """A small pool of closed points used by random generators."""
    x = Poly.monomial(field, POLY_U, 1)
    pts = [ClosedPoint.finite(x), ClosedPoint.rational(field, 1), ClosedPoint.rational(field, -1), INFINITY]
    if field.p is None:
        pts.append(ClosedPoint.finite(x * x + 1))
    elif field.p == 5:
        pts.append(ClosedPoint.finite(x * x + 2))
    elif field.p > 2:
        for a in range(1, field.p):
            if pow(a, (field.p - 1) // 2, field.p) == field.p - 1:
                pts.append(ClosedPoint.finite(x * x - a))
                break
    return pts


def random_labels(field: Field, rng: random.Random, max_summands=5, deg_range=(-3, 3), max_length=3,
                  points=None, min_summands=1, p_torsion=0.4):
    points = points or default_points(field)
    out = []
    for _ in range(rng.randint(min_summands, max_summands)):
        if rng.random() < p_torsion:
            out.append(Tors(rng.choice(points), rng.randint(1, max_length)))
        else:
            out.append(LB(rng.randint(*deg_range)))
    return out
