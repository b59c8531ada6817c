"""Krull-Schmidt decomposition of coherent sheaves into labelled indecomposables.

Two independent routes are offered:

``charts``: torsion summands are read from the elementary divisors of the
chart modules (finite points from the U-chart, the point at infinity from the
y-primary part of the V-chart); the torsion-free quotient splits as a sum of
line bundles O(a_i), and with l the torsion length,
h0(F(k)) - l = sum_i max(0, a_i + k + 1), so the second differences in k count
the a_i.

``tilt``: the two Kronecker representations of the tilt are decomposed and the
labels translated back.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .exactlinear import factor
from .homalg.cech import cech, max_exponent, torsion_length
from .kronecker import tilt_labels
from .points import INFINITY, LB, ClosedPoint, Tors, sorted_labels
from .sheafp1 import CoherentSheaf, twist


@dataclass
class Decomposition:
    labels: list
    method: str
    certificates: dict = dc_field(default_factory=dict)

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def as_strings(self):
        return [str(l) for l in self.labels]


def torsion_labels(F: CoherentSheaf) -> list:
    out = []
    for d in F.mU.normal.moduli:
        if d is not None:
            for p, m in factor(d):
                out.append(Tors(ClosedPoint(p), m))
    for d in F.mV.normal.moduli:
        if d is not None and d.x_valuation() > 0:
            out.append(Tors(INFINITY, d.x_valuation()))
    return out


def line_bundle_degrees(F: CoherentSheaf) -> list:
    """The a_i with F / torsion = sum O(a_i), from twisted section counts."""
    r = F.rank
    if r == 0:
        return []
    ell = torsion_length(F)
    E = max_exponent(F)
    k = -E - 2
    prev_g = cech(twist(F, k - 1)).h0 - ell
    if prev_g != 0:
        raise ArithmeticError("section count did not vanish below the glue exponent range")
    prev_count = 0
    degrees = []
    while len(degrees) < r:
        g = cech(twist(F, k)).h0 - ell
        count = g - prev_g          # #{a_i >= -k}
        degrees += [-k] * (count - prev_count)
        prev_g, prev_count = g, count
        k += 1
        if k > E + 2:
            raise ArithmeticError("line bundle degrees not found within the glue exponent range")
    return degrees


def decompose_sheaf(F: CoherentSheaf, method: str = "charts") -> Decomposition:
    if method == "charts":
        labels = torsion_labels(F) + [LB(a) for a in line_bundle_degrees(F)]
    elif method == "tilt":
        labels = tilt_labels(F)
    else:
        raise ValueError("unknown decomposition method %r" % method)
    labels = sorted_labels(labels)
    return Decomposition(labels, method, _certify(F, labels))


def _certify(F: CoherentSheaf, labels) -> dict:
    """Invariants that determine the isomorphism class, compared with the labels."""
    rank = sum(1 for l in labels if isinstance(l, LB))
    deg = sum(l.n for l in labels if isinstance(l, LB))
    length = sum(l.m * l.pt.degree for l in labels if isinstance(l, Tors))
    from .homalg.cech import free_degree
    return {"rank": rank == F.rank, "degree": deg == free_degree(F),
            "torsion_length": length == torsion_length(F)}


def agree(F: CoherentSheaf) -> bool:
    """Both decomposition routes give the same multiset."""
    return decompose_sheaf(F, "charts").labels == decompose_sheaf(F, "tilt").labels
