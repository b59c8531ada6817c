"""Ext^1 between coherent sheaves from a two-term resolution.

For N large, F(N) is globally generated and H^1(G(N)) = 0.  Choosing s
sections of F(N) gives an epimorphism eps: P = O(-N)^s -> F with kernel
iota: K -> P, and

    Ext^1(F, G) = coker( Hom(P, G) -> Hom(K, G) ),   phi |-> phi . iota.

The extension of a class xi: K -> G is the pushout
B = coker( K -> G + P, k |-> (-xi(k), iota(k)) ).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property

from ..exactlinear import BUDGET, POLY_U, POLY_V, Echelon, RingMatrix
from ..sheafp1 import (CoherentSheaf, SheafMorphism, ShortExactSeq, cokernel_sheaf, direct_sum, kernel_sheaf,
                       line_bundle, twist, vstack_morphisms)
from .cech import cech, max_exponent
from .hom import HomSpace, global_hom


class ResolutionError(ArithmeticError):
    pass


def _is_epi(f: SheafMorphism) -> bool:
    return f.chart_U().is_surjective() and f.chart_V().is_surjective()


@dataclass
class Resolution:
    """0 -> K --iota--> O(-N)^s --eps--> F -> 0."""

    N: int
    P: CoherentSheaf
    eps: SheafMorphism
    K: CoherentSheaf
    iota: SheafMorphism
    certificates: dict = dc_field(default_factory=dict)


def _torsion_count(F: CoherentSheaf) -> int:
    return max(sum(1 for d in F.mU.normal.moduli if d is not None),
               sum(1 for d in F.mV.normal.moduli if d is not None))


def _combine(sections, coeffs, field):
    nU, nV = len(sections[0][0]), len(sections[0][1])
    sU = [sum((c * v[0][i] for c, v in zip(coeffs, sections) if c != 0), sections[0][0][i] * 0) for i in range(nU)]
    sV = [sum((c * v[1][i] for c, v in zip(coeffs, sections) if c != 0), sections[0][1][i] * 0) for i in range(nV)]
    return sU, sV


def _candidate_choices(sections, s, field, rng, attempts=12):
    """Sparse choices first (subsets of basis sections), then random combinations."""
    n = len(sections)
    idx = list(range(n))
    for _ in range(attempts):
        yield [sections[i] for i in sorted(rng.sample(idx, s))]
    for _ in range(attempts):
        choice = []
        for _ in range(s):
            coeffs = [field.zero] * n
            for i in rng.sample(idx, min(2, n)):
                coeffs[i] = field(rng.choice([1, -1, 2]))
            choice.append(_combine(sections, coeffs, field))
        yield choice
    for _ in range(attempts):
        yield [_combine(sections, [field.random(rng, 3) for _ in idx], field) for _ in range(s)]


def _evaluation(P, F, chosen):
    field = F.field
    k = len(chosen)
    fU = RingMatrix(field, POLY_U, F.mU.ngens, k, [[c[0][i] for c in chosen] for i in range(F.mU.ngens)])
    fV = RingMatrix(field, POLY_V, F.mV.ngens, k, [[c[1][i] for c in chosen] for i in range(F.mV.ngens)])
    return SheafMorphism(P, F, fU, fV, check=False)


def resolve(F: CoherentSheaf, N: int, seed: int = 0) -> Resolution:
    """Resolution by s copies of O(-N); F(N) must be globally generated.

    Sections of F(N) are chosen sparsely where possible (subsets of the Cech
    basis), which keeps the kernel's coefficients small over the rationals."""
    field = F.field
    rng = random.Random(seed)
    sections = [] if F.is_zero() else cech(twist(F, N)).h0_basis
    s = min(F.rank + _torsion_count(F) + (1 if F.rank else 0), len(sections))
    eps = None
    while eps is None:
        P = direct_sum([line_bundle(-N, field) for _ in range(s)], field)
        choices = [sections] if s >= len(sections) else _candidate_choices(sections, s, field, rng)
        for chosen in choices:
            cand = _evaluation(P, F, chosen)
            if _is_epi(cand):
                eps = cand
                break
        if eps is None:
            if s >= len(sections):
                raise ResolutionError("sections of F(%d) do not generate F" % N)
            s += 1
    K, iota = kernel_sheaf(eps)
    certs = {"epi": True, "compatible": eps.is_compatible(), "kernel_glue": K.verify_glue()}
    return Resolution(N, P, eps, K, iota, certs)


@dataclass
class Ext1:
    """Ext^1(F, G) with a basis of classes given as morphisms K -> G."""

    F: CoherentSheaf
    G: CoherentSheaf
    resolution: Resolution
    hom_KG: HomSpace
    image: Echelon
    class_keys: list
    certificates: dict = dc_field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.class_keys)

    def class_morphism(self, coeffs) -> SheafMorphism:
        """The morphism K -> G representing sum coeffs[i] * (basis class i)."""
        full = [self.F.field.zero] * self.hom_KG.dim
        for c, k in zip(coeffs, self.class_keys):
            full[k] = c
        return self.hom_KG.combination(full)

    def coordinates(self, xi: SheafMorphism):
        """Coordinates of the class of xi: K -> G in the class basis."""
        v = self.hom_KG.coordinates(xi)
        r = self.image.reduce_full({k: c for k, c in enumerate(v) if c != 0})
        return [r.get(k, self.F.field.zero) for k in self.class_keys]

    def extension(self, coeffs) -> ShortExactSeq:
        """0 -> G -> B -> F -> 0 for the class with the given coordinates."""
        return pushout_extension(self.resolution, self.class_morphism(coeffs))

    @cached_property
    def basis_sequences(self):
        z = self.F.field.zero
        one = self.F.field.one
        return [self.extension([one if j == i else z for j in range(self.dim)]) for i in range(self.dim)]


def pushout_extension(res: Resolution, xi: SheafMorphism) -> ShortExactSeq:
    G = xi.target
    field = G.field
    m = vstack_morphisms([xi.scale(-field.one), res.iota])
    B, proj = cokernel_sheaf(m)
    nG_U, nG_V = G.mU.ngens, G.mV.ngens
    nP_U, nP_V = res.P.mU.ngens, res.P.mV.ngens
    inU = RingMatrix.identity(field, POLY_U, nG_U).vstack(RingMatrix(field, POLY_U, nP_U, nG_U))
    inV = RingMatrix.identity(field, POLY_V, nG_V).vstack(RingMatrix(field, POLY_V, nP_V, nG_V))
    g_in = SheafMorphism(G, B, inU, inV, check=False)
    F = res.eps.target
    outU = RingMatrix(field, POLY_U, F.mU.ngens, nG_U).hstack(res.eps.fU)
    outV = RingMatrix(field, POLY_V, F.mV.ngens, nG_V).hstack(res.eps.fV)
    b_out = SheafMorphism(B, F, outU, outV, check=False)
    return ShortExactSeq(g_in, b_out)


def _first_vanishing_h1(G: CoherentSheaf, start: int) -> int:
    n = start
    while n <= BUDGET.max_degree:
        if cech(twist(G, n)).h1 == 0:
            return n
        n += 1
    raise ResolutionError("no resolution twist within the degree budget")


def ext_twist(F: CoherentSheaf, G: CoherentSheaf) -> int:
    """Smallest N with H^1(G(N)) = 0 and H^1(F(N - 1)) = 0.

    H^1 of successive twists vanishes from some point on, so the search runs
    upward from below the range where the glue exponents allow nonvanishing."""
    lo = -(max(max_exponent(F), max_exponent(G)) + 2)
    return max(_first_vanishing_h1(G, lo), _first_vanishing_h1(F, lo) + 1)


def ext1(F: CoherentSheaf, G: CoherentSheaf, seed: int = 0, resolution: Resolution | None = None) -> Ext1:
    if resolution is None:
        resolution = resolve(F, ext_twist(F, G), seed)
    elif cech(twist(G, resolution.N)).h1 != 0:
        raise ResolutionError("resolution twist too small for the second argument")
    hom_KG = global_hom(resolution.K, G)
    hom_PG = global_hom(resolution.P, G)
    ech = Echelon(F.field)
    for phi in hom_PG.basis:
        v = hom_KG.coordinates(phi @ resolution.iota)
        ech.add({k: c for k, c in enumerate(v) if c != 0})
    keys = [k for k in range(hom_KG.dim) if k not in ech.rows]
    certs = {"N": resolution.N, "h1_G_twisted": 0, "resolution": resolution.certificates}
    return Ext1(F, G, resolution, hom_KG, ech, keys, certs)


def ext1_dim(F: CoherentSheaf, G: CoherentSheaf) -> int:
    return ext1(F, G).dim
