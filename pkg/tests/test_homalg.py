import random

import pytest
from hypothesis import given, strategies as st

from oracles import monomial_h0, monomial_h1
from purisheaf.decompose import decompose_sheaf
from purisheaf.exactlinear import GF, QQ
from purisheaf.homalg import (cech, euler_char, ext1, ext1_dim, global_hom, hom_dim, is_in_d, verify_section,
                              window_check)
from purisheaf.points import INFINITY, LB, ClosedPoint, Tors
from purisheaf.sheafp1 import (default_points, line_bundle, random_labels, re_present, sheaf_from_labels,
                               torsion_sheaf, twist)


def hom_oracle(X, Y) -> int:
    """dim Hom between indecomposables, from the classification."""
    if isinstance(X, LB) and isinstance(Y, LB):
        return max(0, Y.n - X.n + 1)
    if isinstance(X, LB):
        return Y.m * Y.pt.degree
    if isinstance(Y, LB):
        return 0
    return min(X.m, Y.m) * X.pt.degree if X.pt == Y.pt else 0


def twist_label(X, n):
    return LB(X.n + n) if isinstance(X, LB) else X


def hom_sum_oracle(xs, ys):
    return sum(hom_oracle(a, b) for a in xs for b in ys)


def ext_sum_oracle(xs, ys):
    # Serre duality: Ext^1(X, Y) is dual to Hom(Y, X(-2))
    return sum(hom_oracle(b, twist_label(a, -2)) for a in xs for b in ys)


@pytest.mark.parametrize("field", [QQ, GF(5)], ids=str)
@pytest.mark.parametrize("n", range(-5, 6))
def test_line_bundle_cohomology_against_monomials(field, n):
    c = cech(line_bundle(n, field))
    assert (c.h0, c.h1) == (monomial_h0(n), monomial_h1(n))
    assert c.chi == n + 1 == euler_char(line_bundle(n, field))


@pytest.mark.parametrize("field", [QQ, GF(5)], ids=str)
def test_torsion_cohomology(field):
    for pt in default_points(field):
        for m in (1, 3):
            c = cech(torsion_sheaf(pt, m, field))
            assert (c.h0, c.h1) == (m * pt.degree, 0)


def test_global_sections_verify():
    F = line_bundle(2, QQ)
    c = cech(F)
    assert all(verify_section(F, sU, sV) for sU, sV in c.h0_basis)


@given(st.integers(0, 10 ** 6))
def test_cohomology_invariant_under_re_presentation(seed):
    rng = random.Random(seed)
    labels = random_labels(QQ, rng, max_summands=3)
    F = sheaf_from_labels(labels, QQ)
    G, _ = re_present(F, rng)
    h0 = sum(hom_oracle(LB(0), l) for l in labels)
    assert cech(G).dims == cech(F).dims
    assert cech(G).h0 == h0
    assert cech(G).h0 - cech(G).h1 == euler_char(G)


@pytest.mark.parametrize("m", range(-3, 4))
@pytest.mark.parametrize("n", range(-3, 4))
def test_line_bundle_hom_ext(m, n):
    Om, On = line_bundle(m, QQ), line_bundle(n, QQ)
    assert hom_dim(Om, On) == max(0, n - m + 1)
    assert ext1_dim(Om, On) == max(0, m - n - 1)


@pytest.mark.parametrize("field", [QQ, GF(5)], ids=str)
@given(st.integers(0, 10 ** 6))
def test_hom_ext_of_sums_against_classification(field, seed):
    rng = random.Random(seed)
    xs = random_labels(field, rng, max_summands=2, deg_range=(-2, 2), max_length=2)
    ys = random_labels(field, rng, max_summands=2, deg_range=(-2, 2), max_length=2)
    F, _ = re_present(sheaf_from_labels(xs, field), rng)
    G = sheaf_from_labels(ys, field)
    assert hom_dim(F, G) == hom_sum_oracle(xs, ys)
    assert ext1_dim(F, G) == ext_sum_oracle(xs, ys)
    assert ext1_dim(F, G) == hom_dim(G, twist(F, -2))


def test_hom_basis_morphisms_are_compatible_and_independent():
    F, G = line_bundle(0, QQ), line_bundle(2, QQ)
    H = global_hom(F, G)
    assert H.dim == 3
    for i, b in enumerate(H.basis):
        assert b.is_compatible()
        assert H.coordinates(b) == [1 if j == i else 0 for j in range(3)]


def test_nonsplit_extension_of_o2_by_o():
    E = ext1(line_bundle(2, QQ), line_bundle(0, QQ))
    assert E.dim == 1
    s = E.extension([QQ.one])
    assert s.exactness_problem() is None
    assert decompose_sheaf(s.B).labels == [LB(1), LB(1)]
    split = E.extension([QQ.zero])
    assert decompose_sheaf(split.B).labels == [LB(0), LB(2)]


def test_extension_classes_round_trip():
    E = ext1(line_bundle(3, GF(5)), line_bundle(0, GF(5)))
    assert E.dim == 2
    F5 = GF(5)
    for coeffs in ([F5(1), F5(0)], [F5(2), F5(3)]):
        assert E.coordinates(E.class_morphism(coeffs)) == coeffs


def test_torsion_extensions():
    pt = ClosedPoint.rational(QQ, 1)
    T1 = torsion_sheaf(pt, 1, QQ)
    E = ext1(T1, T1)
    assert E.dim == 1
    assert decompose_sheaf(E.extension([QQ.one]).B).labels == [Tors(pt, 2)]
    assert ext1_dim(torsion_sheaf(INFINITY, 1, QQ), T1) == 0


@pytest.mark.parametrize("labels,member", [
    ([Tors(INFINITY, 2)], True),
    ([LB(0)], False),
    ([Tors(INFINITY, 1), LB(-3)], False),
    ([], True),
])
def test_d_membership(labels, member):
    F = sheaf_from_labels(labels, QQ)
    d = is_in_d(F)
    assert d.member == d.structural == d.window_check == member
    ok, _, failures = window_check(F)
    assert ok == member and bool(failures) != member
