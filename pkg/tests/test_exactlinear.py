from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, strategies as st

from conftest import FIELDS, poly_matrices, polys
from oracles import brute_force_kernel_dim
from purisheaf.exactlinear import (GF, LAURENT, POLY_U, POLY_V, QQ, Echelon, Poly, RingMatrix, UnsupportedRing,
                                   det, factor, gcd, inverse_mod, is_irreducible, matrix_nullspace, matrix_rank,
                                   matrix_solve, parse_field, reciprocal, reduce_laurent, smith_normal_form,
                                   smith_normal_form_full, solve_linear, xgcd)


def x(field=QQ, ring=POLY_U):
    return Poly.monomial(field, ring, 1)


def monic_gcd_of_minors(m: RingMatrix, k: int):
    g = Poly.zero(m.field, m.ring)
    for rows in combinations(range(m.rows), k):
        for cols in combinations(range(m.cols), k):
            g = gcd(g, det(m.submatrix(rows, cols)))
    return g.monic() if g.c else g


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_field_axioms_small(field):
    a, b = field(3), field(-2)
    assert a * b == field(-6)
    assert (a / b) * b == a
    assert field.one + field.zero == field.one


def test_gf_division_and_fraction_coercion():
    F = GF(7)
    assert F(Fraction(1, 2)) * F(2) == F.one
    with pytest.raises(ValueError):
        GF(9)


@pytest.mark.parametrize("text,p", [("q", None), ("fp:5", 5), ("FP:13", 13)])
def test_parse_field(text, p):
    assert parse_field(text).p == p


@given(polys(QQ), polys(QQ, max_degree=2))
def test_divmod_identity(a, b):
    if not b.c:
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert not r.c or r.degree < b.degree


@given(polys(GF(5)), polys(GF(5)))
def test_xgcd_bezout(a, b):
    g, s, t = xgcd(a, b)
    assert s * a + t * b == g
    if g.c:
        assert g.divides(a) and g.divides(b)


def test_inverse_mod_and_reciprocal():
    X = x()
    m = X ** 2 + Poly.const(QQ, POLY_U, 1)
    inv = inverse_mod(X + Poly.const(QQ, POLY_U, 1), m)
    assert ((X + Poly.const(QQ, POLY_U, 1)) * inv).divmod(m)[1] == Poly.const(QQ, POLY_U, 1)
    assert reciprocal(X - Poly.const(QQ, POLY_U, 2)).to_str() is not None


def test_reduce_laurent_inverts_x():
    m = x(QQ, LAURENT) - Poly.const(QQ, LAURENT, 2)
    xinv = Poly.monomial(QQ, LAURENT, -1)
    r = reduce_laurent(xinv, m)
    assert r.to_dict() == {0: Fraction(1, 2)}


@pytest.mark.parametrize("field", FIELDS, ids=str)
@given(data=st.data())
def test_snf_matches_gcd_of_minors(field, data):
    m = data.draw(poly_matrices(field))
    S, U, V = smith_normal_form(m)
    assert U @ m @ V == S
    assert det(U).is_unit() and det(V).is_unit()
    diag = [S.e[i][i] for i in range(min(S.rows, S.cols))]
    prod_ = Poly.const(field, POLY_U, 1)
    for k, d in enumerate(diag, start=1):
        prod_ = prod_ * d
        expected = monic_gcd_of_minors(m, k)
        got = prod_.monic() if prod_.c else prod_
        assert got == expected
    for a, b in zip(diag, diag[1:]):
        assert not b.c or a.divides(b)


@given(poly_matrices(QQ, POLY_V))
def test_snf_over_y_with_inverse(m):
    S, U, V, Ui = smith_normal_form_full(m)
    assert U @ m @ V == S
    assert U @ Ui == RingMatrix.identity(QQ, POLY_V, m.rows)


def test_snf_laurent_clears_denominators():
    xi = Poly.monomial(QQ, LAURENT, -1)
    one = Poly.const(QQ, LAURENT, 1)
    m = RingMatrix(QQ, LAURENT, 2, 2, [[xi, one], [one, xi]])
    S, U, V = smith_normal_form(m)
    assert U @ m @ V == S
    assert all(S.e[i][i].low == 0 for i in range(2))


def test_unsupported_ring():
    with pytest.raises(UnsupportedRing):
        smith_normal_form(RingMatrix(QQ, "Z[t]", 0, 0))


def test_snf_example_diagonal():
    X = x()
    one = Poly.const(QQ, POLY_U, 1)
    m = RingMatrix(QQ, POLY_U, 2, 2, [[X, one - one], [one - one, X ** 2]])
    S, _, _ = smith_normal_form(m)
    assert [S.e[0][0], S.e[1][1]] == [X, X ** 2]


@given(poly_matrices(QQ, max_rows=2, max_cols=3), poly_matrices(QQ, max_rows=3, max_cols=1))
def test_solve_linear_particular_solution(a, v):
    if v.rows != a.cols:
        return
    b = a @ v
    sol = solve_linear(a, b)
    assert sol.solvable
    assert a @ sol.particular == b


@pytest.mark.parametrize("p", [2, 3])
@given(st.lists(st.lists(st.integers(0, 2), min_size=3, max_size=3), min_size=1, max_size=3))
def test_nullspace_against_enumeration(p, rows):
    F = GF(p)
    m = [[F(a) for a in r] for r in rows]
    assert len(matrix_nullspace(F, m, 3)) == brute_force_kernel_dim(p, rows)
    assert matrix_rank(F, m) == 3 - brute_force_kernel_dim(p, rows)


def test_matrix_solve_and_echelon_express():
    m = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
    sol = matrix_solve(QQ, m, [Fraction(5), Fraction(6)])
    assert [sum(a * b for a, b in zip(r, sol)) for r in m] == [5, 6]
    e = Echelon(QQ, track=True)
    e.add({0: Fraction(1), 1: Fraction(1)})
    e.add({1: Fraction(1)})
    c = e.express({0: Fraction(2), 1: Fraction(5)})
    assert c == {0: Fraction(2), 1: Fraction(3)}


@pytest.mark.parametrize("field", FIELDS, ids=str)
@given(data=st.data())
def test_factor_product(field, data):
    p = data.draw(polys(field, max_degree=4))
    if not p.c or p.degree == 0:
        return
    prod_ = Poly.const(field, POLY_U, 1)
    for f, m in factor(p):
        assert is_irreducible(f) and f.lc == field.one
        prod_ = prod_ * f ** m
    assert prod_ == p.monic()


@pytest.mark.parametrize("p,coeffs,irr", [(None, [1, 0, 1], True), (5, [1, 0, 1], False),
                                          (5, [2, 0, 1], True), (None, [-1, 0, 1], False)])
def test_irreducibility_depends_on_field(p, coeffs, irr):
    F = QQ if p is None else GF(p)
    assert is_irreducible(Poly.from_list(F, POLY_U, [F(c) for c in coeffs])) == irr


def test_gf_exhaustive_inverse():
    F = GF(5)
    for a, b in product(range(1, 5), repeat=2):
        assert F(a) / F(b) * F(b) == F(a)
