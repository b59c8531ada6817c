import random

import pytest
from hypothesis import given, strategies as st

from purisheaf.decompose import agree, decompose_sheaf
from purisheaf.exactlinear import GF, POLY_U, QQ, Poly, matrix_rank
from purisheaf.kronecker import (KroneckerRep, NotCoherentImage, Preinj, Preproj, Regular, canonical_rep,
                                 decompose_rep, rep_certificate, sheaf_label_from_rep, tilt, tilt_labels)
from purisheaf.points import INFINITY, LB, ClosedPoint, Tors
from purisheaf.sheafp1 import default_points, line_bundle, random_labels, re_present, sheaf_from_labels

FIELDS = [QQ, GF(5)]


def random_invertible(field, n, rng):
    while True:
        M = [[field(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        if n == 0 or matrix_rank(field, M) == n:
            return M


def matmul(A, B, field):
    if not A or not B:
        cols = len(B[0]) if B else 0
        return [[field.zero] * cols for _ in range(len(A))]
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), field.zero) for j in range(len(B[0]))]
            for i in range(len(A))]


def conjugate(rep: KroneckerRep, rng) -> KroneckerRep:
    f = rep.field
    P = random_invertible(f, rep.d0, rng)
    Q = random_invertible(f, rep.d1, rng)
    return KroneckerRep(f, rep.d1, rep.d0, matmul(matmul(P, rep.mapA, f), Q, f) if rep.d1 else rep.mapA,
                        matmul(matmul(P, rep.mapB, f), Q, f) if rep.d1 else rep.mapB)


def random_rep_labels(field, rng, k=3):
    pts = default_points(field)
    out = []
    for _ in range(rng.randint(1, k)):
        kind = rng.randrange(3)
        if kind == 0:
            out.append(Preproj(rng.randint(0, 3)))
        elif kind == 1:
            out.append(Preinj(rng.randint(0, 3)))
        else:
            out.append(Regular(rng.choice(pts), rng.randint(1, 2)))
    return sorted(out, key=lambda l: l.sort_key())


@pytest.mark.parametrize("label,dims", [(Preproj(2), (2, 3)), (Preinj(1), (2, 1)),
                                        (Regular(INFINITY, 2), (2, 2))])
def test_canonical_dims(label, dims):
    assert canonical_rep(label, QQ).dims == dims
    assert decompose_rep(canonical_rep(label, QQ)) == [label]


@pytest.mark.parametrize("field", FIELDS, ids=str)
@given(st.integers(0, 10 ** 6))
def test_decomposition_of_conjugated_sums(field, seed):
    rng = random.Random(seed)
    labels = random_rep_labels(field, rng)
    rep = None
    for l in labels:
        c = canonical_rep(l, field)
        rep = c if rep is None else rep.direct_sum(c)
    rep = conjugate(rep, rng)
    got = decompose_rep(rep)
    assert got == labels
    assert all(rep_certificate(rep, got).values())


def test_regular_at_quadratic_point():
    pt = ClosedPoint.finite(Poly.from_list(QQ, POLY_U, [QQ(1), QQ(0), QQ(1)]))
    rep = canonical_rep(Regular(pt, 2), QQ)
    assert rep.dims == (4, 4)
    assert decompose_rep(rep) == [Regular(pt, 2)]


def test_sheaf_label_dictionary():
    assert sheaf_label_from_rep(Preproj(3), 0) == LB(3)
    assert sheaf_label_from_rep(Preinj(0), 1) == LB(-1)
    assert sheaf_label_from_rep(Regular(INFINITY, 1), 0) == Tors(INFINITY, 1)
    with pytest.raises(NotCoherentImage):
        sheaf_label_from_rep(Preinj(2), 0)


@pytest.mark.parametrize("field", FIELDS, ids=str)
@pytest.mark.parametrize("n", range(-3, 4))
def test_tilt_of_line_bundles(field, n):
    img = tilt(line_bundle(n, field))
    if n >= 0:
        assert decompose_rep(img.deg0) == [Preproj(n)] and img.deg1.is_zero()
    else:
        assert decompose_rep(img.deg1) == [Preinj(-n - 1)] and img.deg0.is_zero()


@pytest.mark.parametrize("field", FIELDS, ids=str)
@given(st.integers(0, 10 ** 6))
def test_two_decomposition_routes_agree(field, seed):
    rng = random.Random(seed)
    labels = random_labels(field, rng, max_summands=4)
    F, _ = re_present(sheaf_from_labels(labels, field), rng)
    d = decompose_sheaf(F)
    assert d.labels == sorted(labels, key=lambda l: l.sort_key())
    assert all(d.certificates.values())
    assert tilt_labels(F) == d.labels
    assert agree(F)
