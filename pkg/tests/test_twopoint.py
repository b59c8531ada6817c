from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given, strategies as st

from purisheaf.twopoint import (IDENTITY, INCLUSION, LOCALIZATION, PRUFER_Z, Q_HAT, RAT_Q, TO_ZERO, ZERO, Z_HAT,
                                IllegalRestriction, Triple, TripleError, TripleMorphism, TwoPointSheaf, cyc,
                                format_table, free, is_c_pure_mono_triple, is_flasque,
                                is_g_pure_injective_candidate, is_mono_triple, is_quasicoherent,
                                multiplication_by_p, restriction_splits, solve_zp, tensor_with_q, valuation,
                                witness_family, zp_table)


def test_table_recomputation():
    rows = zp_table()
    assert [r.g_pure_injective for r in rows] == [True, True, True, True, True, False, False]
    assert [r.quasicoherent for r in rows] == [True, False, True, True, False, True, False]
    assert [r.cb_rank for r in rows] == [1, 2, 1, 0, 1, 0, 1]
    for r in rows:
        if r.g_pure_injective:
            assert is_flasque(r.sheaf)
    assert not is_flasque(rows[5].sheaf) and not is_flasque(rows[6].sheaf)
    text = format_table(rows)
    assert len(text.splitlines()) == 11 and "Z_(p)/(p^k)" in text


@pytest.mark.parametrize("k", [1, 2, 5])
def test_table_row_for_every_cyclic(k):
    assert zp_table(k)[3].sheaf.sec_x == cyc(k)


def test_tensor_with_q():
    assert tensor_with_q(cyc(3) + PRUFER_Z) == ZERO
    assert tensor_with_q(Z_HAT + free(2)) == Q_HAT + RAT_Q + RAT_Q
    assert str(free(2) + cyc(1)) == "Z_(p)^2 + Z_(p)/(p^1)"


def test_restriction_legality():
    with pytest.raises(IllegalRestriction):
        TwoPointSheaf(RAT_Q, Q_HAT, IDENTITY)
    with pytest.raises(IllegalRestriction):
        TwoPointSheaf(Z_HAT, ZERO + Z_HAT, TO_ZERO)
    m = TwoPointSheaf(free(1), RAT_Q, INCLUSION)
    assert is_quasicoherent(m) and not is_flasque(m) and not is_g_pure_injective_candidate(m)
    n = TwoPointSheaf(RAT_Q + cyc(2), RAT_Q, LOCALIZATION)
    assert is_quasicoherent(n) and is_flasque(n) and restriction_splits(n)


@pytest.mark.parametrize("a,v", [(Fraction(12), 2), (Fraction(3, 8), -3), (Fraction(5), 0)])
def test_valuation(a, v):
    assert valuation(a, 2) == v


def test_solve_zp_respects_integrality():
    # 2 w = 1 has the rational solution 1/2, which is not 2-integral
    assert solve_zp([[2]], [1], 2) is None
    assert solve_zp([[3]], [1], 2) == [Fraction(1, 3)]
    w = solve_zp([[2, 1], [0, 2]], [3, 2], 2)
    assert w is not None and 2 * w[0] + w[1] == 3 and 2 * w[1] == 2


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("a", [1, 2, 4])
def test_witness_family(p, a):
    r = is_c_pure_mono_triple(witness_family(a, p))
    assert r.g_pure and not r.c_pure


def test_multiplication_by_p_is_not_pure():
    r = is_c_pure_mono_triple(multiplication_by_p(3))
    assert not r.g_pure and not r.c_pure


def test_mismatched_components_are_not_a_morphism():
    # identity on X from (Z_(p), 0) into (Z_(p), Q, inclusion)
    with pytest.raises(TripleError):
        TripleMorphism(Triple(3, 1, (), 0, []), Triple(3, 1, (), 1, [[1]]), [[1]], [[]])


def test_summand_inclusion_of_triples_splits():
    A = Triple(3, 1, (2,), 1, [[1, 0]])
    B = Triple(3, 2, (2,), 1, [[1, 0, 0]])
    f = TripleMorphism(A, B, [[1, 0], [0, 0], [0, 1]], [[1]])
    r = is_c_pure_mono_triple(f)
    assert r.c_pure and r.g_pure
    rx = r.retraction_x
    assert [[sum(rx[i][k] * f.fx[k][j] for k in range(3)) for j in range(2)] for i in range(2)] == [[1, 0], [0, 1]]


def brute_force_split(p, a_exps, b_exps, fx):
    """Search all retractions of a map between finite p-groups."""
    choices = []
    for i, a in enumerate(a_exps):
        for j, b in enumerate(b_exps):
            step = p ** max(0, a - b)
            choices.append([step * t for t in range(p ** a // step)])
    for vals in product(*choices):
        r = [list(vals[i * len(b_exps):(i + 1) * len(b_exps)]) for i in range(len(a_exps))]
        ok = True
        for i, a in enumerate(a_exps):
            for m in range(len(a_exps)):
                s = sum(r[i][k] * fx[k][m] for k in range(len(b_exps)))
                if (s - (1 if i == m else 0)) % p ** a:
                    ok = False
        if ok:
            return True
    return False


@st.composite
def torsion_maps(draw, p=2):
    a_exps = draw(st.lists(st.integers(1, 2), min_size=1, max_size=2))
    b_exps = draw(st.lists(st.integers(1, 3), min_size=1, max_size=2))
    fx = []
    for b in b_exps:
        row = []
        for a in a_exps:
            shift = max(0, b - a)
            row.append(p ** shift * draw(st.integers(0, p ** b - 1)))
        fx.append(row)
    return a_exps, b_exps, fx


@given(torsion_maps())
def test_torsion_retractions_against_enumeration(data):
    p = 2
    a_exps, b_exps, fx = data
    A = Triple(p, 0, tuple(a_exps), 0, [])
    B = Triple(p, 0, tuple(b_exps), 0, [])
    f = TripleMorphism(A, B, fx, [])
    assume(is_mono_triple(f))
    r = is_c_pure_mono_triple(f)
    assert r.g_pure == r.c_pure == brute_force_split(p, a_exps, b_exps, fx)


@given(torsion_maps())
def test_injectivity_against_enumeration(data):
    p = 2
    a_exps, b_exps, fx = data
    f = TripleMorphism(Triple(p, 0, tuple(a_exps), 0, []), Triple(p, 0, tuple(b_exps), 0, []), fx, [])
    nonzero = [v for v in product(*[range(p ** a) for a in a_exps]) if any(v)]
    injective = all(any(sum(fx[j][i] * v[i] for i in range(len(a_exps))) % p ** b for j, b in enumerate(b_exps))
                    for v in nonzero)
    assert is_mono_triple(f) == injective
