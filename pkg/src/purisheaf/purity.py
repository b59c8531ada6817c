"""Purity of short exact sequences of coherent sheaves.

c-purity is global splitting; g-purity is splitting on both charts.  Two
further g-purity testers run over a finite set of torsion sheaves: tensoring
must keep the first map injective, and Hom from each test sheaf must stay
right exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .exactlinear import Echelon, factor, reciprocal
from .fpmod import is_split_mono
from .homalg import Ext1, ext1, global_hom
from .points import INFINITY, ClosedPoint, Tors, sorted_labels
from .sheafp1 import ShortExactSeq, tensor_sheaf_morphism, torsion_sheaf


@dataclass
class PurityReport:
    c_pure: bool
    g_pure: bool
    via_tensor: bool
    via_torsion_hom: bool
    witnesses: dict = dc_field(default_factory=dict)

    @property
    def criteria_agreement(self) -> bool:
        return (self.g_pure == self.via_tensor == self.via_torsion_hom) and (not self.c_pure or self.g_pure)


def is_c_pure(s: ShortExactSeq):
    """(verdict, section C -> B or None): a global splitting of the epimorphism."""
    C, B = s.C, s.B
    hom_CB = global_hom(C, B)
    end_C = global_hom(C, C)
    target = end_C.coordinates(C.identity())
    field = C.field
    ech = Echelon(field, track=True)
    for b in hom_CB.basis:
        v = end_C.coordinates(s.g @ b)
        ech.add({k: c for k, c in enumerate(v) if c != 0})
    coeffs = ech.express({k: c for k, c in enumerate(target) if c != 0})
    if coeffs is None:
        return False, None
    sec = hom_CB.combination([coeffs.get(k, field.zero) for k in range(hom_CB.dim)])
    if not (s.g @ sec).equals(C.identity()):
        raise ArithmeticError("computed section does not split the sequence")
    return True, sec


def is_g_pure(s: ShortExactSeq):
    """(verdict, per-chart retractions or None)."""
    rU = is_split_mono(s.f.chart_U())
    rV = is_split_mono(s.f.chart_V())
    return bool(rU) and bool(rV), {"U": rU.retraction, "V": rV.retraction}


def support_points(s: ShortExactSeq):
    """Closed points in the invariant factors of the six chart modules, with the
    largest multiplicity seen."""
    points = set()
    top = 0
    for M in (s.A.mU, s.B.mU, s.C.mU):
        for d in M.normal.moduli:
            if d is not None and d.degree > 0:
                for p, m in factor(d):
                    points.add(ClosedPoint(p))
                    top = max(top, m)
    for M in (s.A.mV, s.B.mV, s.C.mV):
        for d in M.normal.moduli:
            if d is not None and d.degree > 0:
                for q, m in factor(d):
                    top = max(top, m)
                    if q.degree == 1 and q.low == 1:
                        points.add(INFINITY)
                    else:
                        points.add(ClosedPoint(reciprocal(q)))
    return sorted(points), top


def test_set(s: ShortExactSeq):
    points, top = support_points(s)
    return sorted_labels([Tors(p, m) for p in points for m in range(1, top + 2)])


def g_pure_via_tensor(s: ShortExactSeq, tests=None):
    """(verdict, first test sheaf breaking injectivity or None)."""
    field = s.A.field
    for lab in tests if tests is not None else test_set(s):
        T = torsion_sheaf(lab.pt, lab.m, field)
        tf = tensor_sheaf_morphism(T.identity(), s.f)
        if not tf.is_mono():
            return False, lab
    return True, None


def g_pure_via_torsion_hom(s: ShortExactSeq, tests=None):
    """(verdict, first test sheaf where Hom(T, B) -> Hom(T, C) is not onto, or None)."""
    field = s.A.field
    for lab in tests if tests is not None else test_set(s):
        T = torsion_sheaf(lab.pt, lab.m, field)
        hA, hB, hC = global_hom(T, s.A), global_hom(T, s.B), global_hom(T, s.C)
        if hB.dim != hA.dim + hC.dim:
            return False, lab
        ech = Echelon(field)
        for b in hB.basis:
            v = hC.coordinates(s.g @ b)
            ech.add({k: c for k, c in enumerate(v) if c != 0})
        if ech.rank != hC.dim:
            return False, lab
    return True, None


def purity_report(s: ShortExactSeq) -> PurityReport:
    tests = test_set(s)
    c, sec = is_c_pure(s)
    g, retr = is_g_pure(s)
    t, t_w = g_pure_via_tensor(s, tests)
    h, h_w = g_pure_via_torsion_hom(s, tests)
    w = {"section": sec, "chart_retractions": retr, "tensor_failure": t_w, "hom_failure": h_w,
         "test_set": [str(l) for l in tests]}
    return PurityReport(c, g, t, h, w)


def random_extension(a, c, seed: int, ext: Ext1 | None = None, zero_probability: float = 0.0):
    """(sequence 0 -> a -> B -> c -> 0, class coordinates) for a seeded class in Ext^1(c, a)."""
    ext = ext if ext is not None else ext1(c, a, seed=seed)
    rng = random.Random(seed)
    field = a.field
    if ext.dim == 0 or rng.random() < zero_probability:
        coeffs = [field.zero] * ext.dim
    else:
        coeffs = [field.random(rng, 3) for _ in range(ext.dim)]
    return ext.extension(coeffs), coeffs
