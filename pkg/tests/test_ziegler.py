import random

import pytest
from hypothesis import given, strategies as st

from purisheaf.exactlinear import GF, QQ
from purisheaf.homalg import is_in_d
from purisheaf.points import GENERIC, INFINITY, LB, Adic, ClosedPoint, Prufer, Tors
from purisheaf.sheafp1 import default_points, random_labels, re_present, sheaf_from_labels
from purisheaf.ziegler import (ALL, GEOMETRIC_PART_REPORT, PointSet, attributes, closure, coherent_zg_trace,
                               geometric_part, point_set, random_point_set)

PTS = default_points(QQ)
X0 = ClosedPoint.rational(QQ, 0)


def test_closure_of_lb_upper_family_adds_adics_and_generic():
    c = closure(PointSet(lb_from=0))
    assert c == PointSet(lb_from=0, adic=ALL, generic=True).canonical()
    assert Adic(INFINITY) in c and Prufer(INFINITY) not in c
    assert str(c) == "{LB(>=0), Adic(*), Gen}"


@pytest.mark.parametrize("s", [PointSet(lb_upto=3), point_set([LB(-2), LB(7)]),
                               PointSet(lb_upto=-1, lb=frozenset({4}))], ids=str)
def test_bounded_above_lb_families_are_closed(s):
    assert closure(s) == s.canonical()


def test_tube_closure_adds_prufer_adic_generic():
    c = closure(PointSet(tubes=frozenset({X0})))
    assert Prufer(X0) in c and Adic(X0) in c and GENERIC in c
    assert Adic(INFINITY) not in c


@pytest.mark.parametrize("p", [LB(0), LB(-4), Tors(X0, 3), Tors(INFINITY, 1), GENERIC], ids=str)
def test_singletons_closed(p):
    assert point_set([p]).is_closed()


@pytest.mark.parametrize("p", [Prufer(X0), Adic(INFINITY)], ids=str)
def test_prufer_and_adic_closures_add_generic(p):
    assert closure(point_set([p])) == point_set([p, GENERIC])


@given(st.integers(0, 10 ** 6))
def test_closure_is_a_closure_operator(seed):
    rng = random.Random(seed)
    s, t = random_point_set(rng, PTS), random_point_set(rng, PTS)
    c = closure(s)
    assert s.issubset(c)
    assert closure(c) == c
    assert closure(s.union(t)).issubset(closure(s).union(closure(t)))
    assert closure(s).issubset(closure(s.union(t)))


def test_attributes_catalogue():
    assert attributes(LB(2)).as_dict()["isLineBundle"]
    assert not attributes(LB(2)).g_pure_injective
    assert attributes(Tors(X0, 1)).isolated
    assert not attributes(Prufer(X0)).closed_singleton
    assert attributes(GENERIC).closed_singleton and not attributes(GENERIC).isolated


def test_geometric_part_is_closed_and_lb_free():
    g = geometric_part()
    assert g.is_closed() and GEOMETRIC_PART_REPORT["closed"]
    assert LB(0) not in g and GENERIC in g and Tors(INFINITY, 5) in g


@pytest.mark.parametrize("seed", range(10))
def test_d_membership_matches_geometric_trace(seed):
    rng = random.Random(seed)
    field = GF(5) if seed % 2 else QQ
    labels = random_labels(field, rng, max_summands=3, p_torsion=0.7)
    F, _ = re_present(sheaf_from_labels(labels, field), rng)
    assert bool(is_in_d(F)) == coherent_zg_trace(F).issubset(geometric_part())
