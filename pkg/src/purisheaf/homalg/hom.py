"""The Hom sheaf and global homomorphisms between coherent sheaves.

The chart modules of Hom(F, G) are the chart Hom modules.  Over the overlap a
U-morphism phi is carried to glue_G . phi . glue_F^(-1); the glue matrix of the
Hom sheaf records the coordinates of that morphism against the V-chart Hom
generators.  Everything is done in normal overlap coordinates, where each Hom
generator is a single matrix entry.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..exactlinear import LAURENT, POLY_U, POLY_V, Poly, RingMatrix
from ..fpmod import HomModule, MorphismError, _divide_exact, reduce_mod
from ..sheafp1 import CoherentSheaf, SheafMorphism
from .cech import CechDatum, cech


def _overlap_modulus(mod, ring):
    """A chart modulus viewed over the overlap (None for free, False if it dies)."""
    if mod is None:
        return None
    m = mod.to_ring(LAURENT).strip_x() if ring == POLY_U else mod.invert_variable(LAURENT).strip_x()
    return False if m.is_unit() else m


def _base_change_entry(h: Poly):
    return h.to_ring(LAURENT) if h.ring == POLY_U else h.invert_variable(LAURENT)


def _transport(homA: HomModule, homB: HomModule, G_tgt, pos_tgt_A, pos_tgt_B, mod_tgt_B,
               Ginv_src, pos_src_A, pos_src_B, mod_tgt_A):
    """Glue matrix from the Hom generators of chart A to those of chart B.

    G_tgt maps target overlap coordinates from chart A to chart B; Ginv_src
    maps source overlap coordinates from chart B back to chart A."""
    field = homA.source.field
    rows, cols = len(homB), len(homA)
    M = [[Poly.zero(field, LAURENT)] * cols for _ in range(rows)]
    B_info = []
    for (i2, j2), fac, mod in zip(homB.pairs, homB.factors, homB.moduli):
        om = _overlap_modulus(mod, homB.source.ring)
        if om is False or i2 not in pos_tgt_B or j2 not in pos_src_B:
            B_info.append(None)
            continue
        B_info.append((pos_tgt_B[i2], pos_src_B[j2], _base_change_entry(fac), om))
    for c, ((i, j), fac, mod) in enumerate(zip(homA.pairs, homA.factors, homA.moduli)):
        om = _overlap_modulus(mod, homA.source.ring)
        if om is False or i not in pos_tgt_A or j not in pos_src_A:
            continue
        pi, pj = pos_tgt_A[i], pos_src_A[j]
        f = _base_change_entry(fac)
        for r, info in enumerate(B_info):
            if info is None:
                continue
            a, b, fac_b, om_b = info
            g1, g2 = G_tgt[a][pi], Ginv_src[pj][b]
            if not (g1.c and g2.c):
                continue
            h = reduce_mod(g1 * f * g2, mod_tgt_B[a])
            if not h.c:
                continue
            q, rem = _divide_exact(h, fac_b)
            if rem:
                raise MorphismError("transported morphism is not a multiple of the Hom generator")
            M[r][c] = reduce_mod(q, om_b)
    return RingMatrix(field, LAURENT, rows, cols, M)


class HomSheaf:
    """Hom(F, G) as a coherent sheaf together with the chart Hom modules."""

    def __init__(self, F: CoherentSheaf, G: CoherentSheaf):
        self.F, self.G = F, G
        self.homU = HomModule(F.mU, G.mU)
        self.homV = HomModule(F.mV, G.mV)
        nF, nG = F.normal, G.normal
        psi = _transport(self.homU, self.homV, nG.G, nG.posU, nG.posV, nG.modV,
                         nF.Ginv, nF.posU, nF.posV, nG.modU)
        psi_inv = _transport(self.homV, self.homU, nG.Ginv, nG.posV, nG.posU, nG.modU,
                             nF.G, nF.posV, nF.posU, nG.modV)
        self.sheaf = CoherentSheaf(self.homU.module, self.homV.module, psi, psi_inv)

    def to_morphism(self, sU, sV) -> SheafMorphism:
        """The sheaf morphism F -> G of a global section of the Hom sheaf."""
        fU = self.homU.morphism(sU).matrix if len(self.homU) else RingMatrix(
            self.F.field, POLY_U, self.G.mU.ngens, self.F.mU.ngens)
        fV = self.homV.morphism(sV).matrix if len(self.homV) else RingMatrix(
            self.F.field, POLY_V, self.G.mV.ngens, self.F.mV.ngens)
        return SheafMorphism(self.F, self.G, fU, fV, check=False)

    def to_section(self, f: SheafMorphism):
        return self.homU.coordinates(f.chart_U()), self.homV.coordinates(f.chart_V())


@dataclass
class HomSpace:
    """A k-basis of Hom(F, G) with a coordinate map."""

    hom_sheaf: HomSheaf
    datum: CechDatum
    basis: list

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, f: SheafMorphism):
        sU, sV = self.hom_sheaf.to_section(f)
        c = self.datum.section_coordinates(sU, sV)
        if c is None:
            raise MorphismError("not a morphism of sheaves")
        return c

    def combination(self, coeffs) -> SheafMorphism:
        F, G = self.hom_sheaf.F, self.hom_sheaf.G
        out = SheafMorphism.zero(F, G)
        for c, b in zip(coeffs, self.basis):
            if c != 0:
                out = out + b.scale(c)
        return out


def hom_sheaf(F: CoherentSheaf, G: CoherentSheaf) -> HomSheaf:
    return HomSheaf(F, G)


def global_hom(F: CoherentSheaf, G: CoherentSheaf) -> HomSpace:
    H = HomSheaf(F, G)
    d = cech(H.sheaf)
    basis = [H.to_morphism(sU, sV) for sU, sV in d.h0_basis]
    return HomSpace(H, d, basis)


def hom_dim(F: CoherentSheaf, G: CoherentSheaf) -> int:
    return cech(HomSheaf(F, G).sheaf).h0
