"""The ten acceptance criteria, each at its stated time budget.

Every test prints one PASS/FAIL line to the terminal (also under capture).
"""

import random
import time

import pytest

from oracles import monomial_h0, monomial_h1
from purisheaf.cli import main
from purisheaf.config import AcceptanceLimits, ExampleSweepConfig, PurityFuzzConfig, RandomSheafConfig
from purisheaf.decompose import decompose_sheaf
from purisheaf.exactlinear import GF, QQ
from purisheaf.homalg import cech, ext1, ext1_dim, hom_dim, is_in_d
from purisheaf.kronecker import decompose_rep, tilt, tilt_labels
from purisheaf.points import GENERIC, LB, Tors, sorted_labels
from purisheaf.purity import is_c_pure, is_g_pure, purity_report, random_extension
from purisheaf.sheafp1 import (default_points, direct_sum, line_bundle, line_bundle_sequence, random_labels,
                               re_present, sheaf_from_labels, torsion_sequence, torsion_sheaf, twist)
from purisheaf.twopoint import (Triple, TripleError, TripleMorphism, is_c_pure_mono_triple, witness_family,
                                zp_table)
from purisheaf.ziegler import ALL, PointSet, closure, point_set, random_point_set

LIMITS = AcceptanceLimits().limits


@pytest.fixture
def report(capsys):
    def emit(n, title, ok, elapsed, detail=""):
        ok = ok and elapsed < LIMITS[n]
        line = "[%s] criterion %d: %s (%s; %.2f s of %.0f s)" % (
            "PASS" if ok else "FAIL", n, title, detail, elapsed, LIMITS[n])
        with capsys.disabled():
            print("\n" + line)
        return ok
    return emit


def random_sheaves(cfg: RandomSheafConfig, count=None):
    rng = cfg.rng()
    field = cfg.base_field
    out = []
    for _ in range(count or cfg.count):
        labels = random_labels(field, rng, cfg.max_summands, cfg.deg_range, cfg.max_length,
                               p_torsion=cfg.p_torsion)
        F, _ = re_present(sheaf_from_labels(labels, field), rng, cfg.re_present_steps)
        out.append((sorted_labels(labels), F))
    return out


def test_criterion_1_zp_table(report):
    t0 = time.perf_counter()
    rows = zp_table()
    ok = len(rows) == 7 and all(r.matches for r in rows)
    assert report(1, "Zp table reproduction", ok, time.perf_counter() - t0,
                  "%d/7 rows" % sum(r.matches for r in rows))


def test_criterion_2_example_sequence(report):
    t0 = time.perf_counter()
    quads = ExampleSweepConfig(bound=3).quadruples()
    good = 0
    for a, b, c, d in quads:
        s = line_bundle_sequence(a, b, c, d, QQ)
        good += (is_g_pure(s)[0] is True) and (is_c_pure(s)[0] is False)
    assert main(["purity", "0 -> O(0) -> O(1)++O(1) -> O(2)"]) == 0
    assert report(2, "Example sequences g-pure, not c-pure", good == len(quads), time.perf_counter() - t0,
                  "%d/%d quadruples" % (good, len(quads)))


def test_criterion_3_hom_ext_closed_forms(report):
    t0 = time.perf_counter()
    bad = []
    for field in (QQ,):
        for m in range(-4, 5):
            for n in range(-4, 5):
                Om, On = line_bundle(m, field), line_bundle(n, field)
                h = hom_dim(Om, On)
                e = ext1_dim(Om, On)
                if not (h == max(0, n - m + 1) == monomial_h0(n - m)):
                    bad.append(("hom", m, n, h))
                if not (e == max(0, m - n - 1) == monomial_h1(n - m)):
                    bad.append(("ext", m, n, e))
    rng = random.Random(3)
    serre = 0
    for i in range(50):
        field = QQ if i % 2 else GF(5)
        mk = lambda: sheaf_from_labels(random_labels(field, rng, 2, (-2, 2), 2), field)
        F, G = mk(), mk()
        if ext1_dim(F, G) == hom_dim(G, twist(F, -2)):
            serre += 1
        else:
            bad.append(("serre", i))
    assert report(3, "Hom/Ext closed forms and Serre duality", not bad, time.perf_counter() - t0,
                  "81 line bundle pairs, %d/50 Serre pairs" % serre), bad


def test_criterion_4_tilting_images(report):
    t0 = time.perf_counter()
    bad = []
    for field in (QQ, GF(5)):
        for n in range(0, 5):
            img = tilt(line_bundle(n, field))
            if (img.deg0.d1, img.deg0.d0) != (n, n + 1) or (img.deg1.d1, img.deg1.d0) != (0, 0):
                bad.append((field, n))
        for n in range(-4, 0):
            img = tilt(line_bundle(n, field))
            if (img.deg1.d1, img.deg1.d0) != (-n, -n - 1) or (img.deg0.d1, img.deg0.d0) != (0, 0):
                bad.append((field, n))
        tilting = direct_sum([line_bundle(0, field), line_bundle(1, field)], field)
        for pt in default_points(field):
            for m in (1, 2):
                T = torsion_sheaf(pt, m, field)
                img = tilt(T)
                k = m * pt.degree
                labs = decompose_rep(img.deg0)
                regular = all(type(l).__name__ == "Regular" for l in labs)
                if (img.deg0.d1, img.deg0.d0) != (k, k) or img.deg1.d0 or img.deg1.d1 or not regular:
                    bad.append((field, str(pt), m))
                if ext1_dim(tilting, T) != 0:
                    bad.append(("ext", field, str(pt), m))
    assert report(4, "Tilting images", not bad, time.perf_counter() - t0, "Q and F5"), bad


def test_criterion_5_krull_schmidt(report):
    t0 = time.perf_counter()
    ok = 0
    failures = []
    for field in ("q", "fp:5"):
        cfg = RandomSheafConfig(field=field, seed=5, count=50)
        for labels, F in random_sheaves(cfg):
            a = decompose_sheaf(F, "charts").labels
            b = tilt_labels(F)
            if a == b == labels:
                ok += 1
            else:
                failures.append((field, [str(l) for l in labels]))
    assert report(5, "Krull-Schmidt round trip", ok == 100, time.perf_counter() - t0,
                  "%d/100 sheaves" % ok), failures


def test_criterion_6_purity_agreement(report):
    t0 = time.perf_counter()
    cfg = PurityFuzzConfig()
    ok = total = c_count = g_count = 0
    failures = []
    for fname in cfg.fields:
        field = GF(5) if fname == "fp:5" else QQ
        rng = random.Random(cfg.seed)
        for i in range(cfg.pairs):
            A = sheaf_from_labels(random_labels(field, rng, cfg.max_summands, cfg.deg_range, cfg.max_length,
                                                p_torsion=cfg.p_torsion), field)
            C = sheaf_from_labels(random_labels(field, rng, cfg.max_summands, cfg.deg_range, cfg.max_length,
                                                p_torsion=cfg.p_torsion), field)
            E = ext1(C, A, seed=i)
            for j in range(cfg.classes_per_pair):
                s, _ = random_extension(A, C, seed=1000 * i + j, ext=E)
                r = purity_report(s)
                total += 1
                c_count += r.c_pure
                g_count += r.g_pure
                if r.criteria_agreement:
                    ok += 1
                else:
                    failures.append((fname, i, j))
    assert report(6, "Purity criteria agreement", ok == total == cfg.total, time.perf_counter() - t0,
                  "%d/%d extensions, %d c-pure, %d g-pure" % (ok, cfg.total, c_count, g_count)), failures


def test_criterion_7_cohomology(report):
    t0 = time.perf_counter()
    bad = []
    for n in range(-4, 5):
        c = cech(line_bundle(n, QQ))
        if (c.h0, c.h1) != (max(0, n + 1), max(0, -n - 1)):
            bad.append(("O", n))
    for field in (QQ, GF(5)):
        for pt in default_points(field):
            for m in (1, 2, 3):
                if cech(torsion_sheaf(pt, m, field)).h1:
                    bad.append(("torsion", str(pt), m))
    cfg = RandomSheafConfig(seed=7, count=20, p_torsion=1.0)
    for labels, F in random_sheaves(cfg):
        if cech(F).h1:
            bad.append(("D member", [str(l) for l in labels]))
    seqs = []
    for a, b, c, d in ExampleSweepConfig(bound=2).quadruples():
        seqs.append(line_bundle_sequence(a, b, c, d, QQ))
    for pt in default_points(QQ):
        seqs.append(torsion_sequence(pt, 1, 2, QQ))
    for i in range(10):
        rng = random.Random(i)
        A = sheaf_from_labels(random_labels(QQ, rng, 2, (-2, 2), 2), QQ)
        C = sheaf_from_labels(random_labels(QQ, rng, 2, (-2, 2), 2), QQ)
        seqs.append(random_extension(A, C, seed=i)[0])
    for s in seqs:
        ca, cb, cc = (cech(X) for X in (s.A, s.B, s.C))
        if ca.h0 - ca.h1 + cc.h0 - cc.h1 != cb.h0 - cb.h1:
            bad.append(("chi", str(s)))
    assert report(7, "Cohomology", not bad, time.perf_counter() - t0,
                  "%d exact sequences" % len(seqs)), bad


def test_criterion_8_d_characterisation(report):
    t0 = time.perf_counter()
    ok = 0
    bad = []
    sheaves = random_sheaves(RandomSheafConfig(seed=8, count=25, max_summands=3)) + \
        random_sheaves(RandomSheafConfig(seed=9, count=25, max_summands=3, p_torsion=0.9))
    members = 0
    for labels, F in sheaves:
        d = is_in_d(F)
        no_lb = not any(isinstance(l, LB) for l in decompose_sheaf(F).labels)
        if d.member == d.structural == d.window_check == no_lb:
            ok += 1
            members += d.member
        else:
            bad.append([str(l) for l in labels])
    assert report(8, "D characterisation", ok == 50, time.perf_counter() - t0,
                  "%d/50 sheaves, %d members" % (ok, members)), bad


def test_criterion_9_topology(report):
    t0 = time.perf_counter()
    bad = []
    field = QQ
    pts = default_points(field)
    ge0 = PointSet(lb_from=0)
    if closure(ge0) != PointSet(lb_from=0, adic=ALL, generic=True).canonical():
        bad.append("LB(>=0)")
    for s in (PointSet(lb_upto=2), PointSet(lb_upto=-3, lb=frozenset({0, 5})), point_set([LB(1), LB(4)])):
        if closure(s) != s.canonical():
            bad.append(str(s))
    singles = [LB(n) for n in range(-3, 4)] + [Tors(p, m) for p in pts for m in (1, 2)] + [GENERIC]
    for p in singles:
        if not point_set([p]).is_closed():
            bad.append("singleton %s" % p)
    rng = random.Random(9)
    for _ in range(100):
        s = random_point_set(rng, pts)
        c = closure(s)
        if closure(c) != c or not s.issubset(c):
            bad.append("idempotence %s" % s)
    assert report(9, "Ziegler topology", not bad, time.perf_counter() - t0,
                  "%d singletons, 100 random descriptions" % len(singles)), bad


def test_criterion_10_two_purities_differ(report):
    t0 = time.perf_counter()
    good = total = 0
    for p in (2, 3, 5):
        for a in range(1, 5):
            r = is_c_pure_mono_triple(witness_family(a, p))
            total += 1
            good += r.g_pure and not r.c_pure
    with pytest.raises(TripleError):
        TripleMorphism(Triple(3, 1, (), 0, []), Triple(3, 1, (), 1, [[1]]), [[1]], [[]])
    assert report(10, "g-pure but not c-pure triple monomorphisms", good == total, time.perf_counter() - t0,
                  "%d/%d witnesses" % (good, total))
