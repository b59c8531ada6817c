"""Membership in the torsion class: coherent sheaves without line bundle summands."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..points import LB
from ..sheafp1 import CoherentSheaf, line_bundle, twist
from .cech import cech, max_exponent
from .hom import HomSheaf


@dataclass
class DMembership:
    member: bool
    window: tuple
    structural: bool
    window_check: bool
    certificates: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.member


def window_check(F: CoherentSheaf, window: int | None = None):
    """Hom(F, O(n)) = 0 and Ext^1(O(n), F) = H^1(F(-n)) = 0 for |n| <= window."""
    if window is None:
        window = max_exponent(F) + 2
    dual = HomSheaf(F, line_bundle(0, F.field)).sheaf
    failures = []
    for n in range(-window, window + 1):
        if cech(twist(dual, n)).h0:
            failures.append(("hom", n))
        if cech(twist(F, -n)).h1:
            failures.append(("ext", n))
    return not failures, window, failures


def is_in_d(F: CoherentSheaf) -> DMembership:
    from ..decompose import decompose_sheaf
    labels = decompose_sheaf(F).labels
    structural = not any(isinstance(l, LB) for l in labels)
    ok, window, failures = window_check(F)
    if ok != structural:
        raise ArithmeticError("structural and windowed membership tests disagree")
    return DMembership(structural, (-window, window), structural, ok,
                       {"labels": [str(l) for l in labels], "failures": failures})
