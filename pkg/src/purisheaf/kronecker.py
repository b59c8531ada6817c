"""Kronecker quiver representations: the tilt of a coherent sheaf and the
decomposition of finite-dimensional representations.

A representation is a pair of d0 x d1 matrices (A, B) from V1 to V0.  The tilt
of F has V1 = Hom(O(1), F), V0 = Hom(O, F), and A, B given by precomposition
with the sections 1 and x of O(1); in degree 1 the same construction is
applied to Ext^1.

Decomposition uses the pencil xA - B:
  * column minimal indices (polynomial right kernel) give preinjectives,
  * row minimal indices (left kernel) give preprojectives,
  * the torsion of coker(xA - B) over k[x] gives the regular summands at
    finite points, and the y-primary torsion of coker(A - yB) over k[y] gives
    those at infinity.
Minimal indices are read from kernel dimensions of block Toeplitz matrices.
These invariants determine a pencil up to strict equivalence, so they certify
the isomorphism with the direct sum of the returned labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .exactlinear import POLY_U, POLY_V, Field, Poly, RingMatrix, factor, matrix_rank, rank_of
from .exactlinear.matrix import smith_normal_form
from .points import INFINITY, LB, ClosedPoint, Tors, sorted_labels
from .sheafp1 import CoherentSheaf, twist


class NotCoherentImage(ValueError):
    pass


@dataclass(frozen=True)
class Preproj:
    n: int

    @property
    def dims(self):
        return (self.n, self.n + 1)

    def sort_key(self):
        return (0, self.n)

    def __str__(self):
        return "Preproj(%d)" % self.n


@dataclass(frozen=True)
class Preinj:
    n: int

    @property
    def dims(self):
        return (self.n + 1, self.n)

    def sort_key(self):
        return (1, self.n)

    def __str__(self):
        return "Preinj(%d)" % self.n


@dataclass(frozen=True)
class Regular:
    pt: ClosedPoint
    m: int

    @property
    def dims(self):
        d = self.m * self.pt.degree
        return (d, d)

    def sort_key(self):
        return (2,) + self.pt.sort_key() + (self.m,)

    def __str__(self):
        return "Regular(%s,%d)" % (self.pt, self.m)


@dataclass
class KroneckerRep:
    field: Field
    d1: int
    d0: int
    mapA: list   # d0 rows, d1 columns
    mapB: list

    def __post_init__(self):
        for M in (self.mapA, self.mapB):
            if len(M) != self.d0 or any(len(r) != self.d1 for r in M):
                raise ValueError("map shape does not match the dimension vector")

    @property
    def dims(self):
        return (self.d1, self.d0)

    def is_zero(self) -> bool:
        return self.d0 == 0 and self.d1 == 0

    def direct_sum(self, other: "KroneckerRep") -> "KroneckerRep":
        z = self.field.zero

        def block(P, Q):
            rows = [list(r) + [z] * other.d1 for r in P]
            rows += [[z] * self.d1 + list(r) for r in Q]
            return rows
        return KroneckerRep(self.field, self.d1 + other.d1, self.d0 + other.d0,
                            block(self.mapA, other.mapA), block(self.mapB, other.mapB))

    def __str__(self):
        return "KroneckerRep(dims=(%d,%d))" % (self.d1, self.d0)


def canonical_rep(label, field: Field) -> KroneckerRep:
    """The standard representation of a label."""
    z, o = field.zero, field.one
    if isinstance(label, Preproj):
        n = label.n
        A = [[o if i == j else z for j in range(n)] for i in range(n + 1)]
        B = [[o if i == j + 1 else z for j in range(n)] for i in range(n + 1)]
        return KroneckerRep(field, n, n + 1, A, B)
    if isinstance(label, Preinj):
        n = label.n
        A = [[o if j == i else z for j in range(n + 1)] for i in range(n)]
        B = [[o if j == i + 1 else z for j in range(n + 1)] for i in range(n)]
        return KroneckerRep(field, n + 1, n, A, B)
    if isinstance(label, Regular):
        if label.pt.is_infinity:
            m = label.m
            A = [[o if i == j + 1 else z for j in range(m)] for i in range(m)]
            B = [[o if i == j else z for j in range(m)] for i in range(m)]
            return KroneckerRep(field, m, m, A, B)
        # companion matrix of p^m: x acts on k[x]/(p^m)
        q = label.pt.poly ** label.m
        d = q.degree
        A = [[o if i == j else z for j in range(d)] for i in range(d)]
        B = [[z] * d for _ in range(d)]
        for j in range(d - 1):
            B[j + 1][j] = o
        for i in range(d):
            B[i][d - 1] = -q.coeff(i)
        return KroneckerRep(field, d, d, A, B)
    raise ValueError("unknown representation label %r" % (label,))


# -- decomposition -------------------------------------------------------------------

def _toeplitz_kernel_dim(field, A, B, rows, cols, k):
    """dim of {v_0..v_k : (xA - B) sum v_i x^i = 0} for d0 = rows, d1 = cols."""
    vecs = []
    for i in range(k + 1):
        for c in range(cols):
            v = {}
            for r in range(rows):
                a, b = A[r][c], B[r][c]
                if a != 0:
                    v[(i + 1, r)] = a
                if b != 0:
                    v[(i, r)] = -b
            vecs.append(v)
    return (k + 1) * cols - rank_of(field, vecs)


def _minimal_indices(field, A, B, rows, cols, count):
    """The ``count`` column minimal indices of the pencil xA - B."""
    out = []
    prev2 = prev1 = 0
    k = 0
    while len(out) < count:
        if k > rows + 1:
            raise ArithmeticError("minimal index search did not terminate")
        K = _toeplitz_kernel_dim(field, A, B, rows, cols, k)
        c = K - 2 * prev1 + prev2
        out += [k] * c
        prev2, prev1 = prev1, K
        k += 1
    if len(out) != count:
        raise ArithmeticError("inconsistent minimal index count")
    return out


def _transpose(M, rows, cols):
    return [[M[r][c] for r in range(rows)] for c in range(cols)]


def _pencil_snf(field, A, B, rows, cols, ring):
    """Invariant factors of xA - B (ring PolyU) or A - yB (ring PolyV)."""
    if rows == 0 or cols == 0:
        return 0, []
    ent = []
    for r in range(rows):
        row = []
        for c in range(cols):
            if ring == POLY_U:
                row.append(Poly.from_list(field, POLY_U, [-B[r][c], A[r][c]]))
            else:
                row.append(Poly.from_list(field, POLY_V, [A[r][c], -B[r][c]]))
        ent.append(row)
    S, _, _ = smith_normal_form(RingMatrix(field, ring, rows, cols, ent))
    diag = [S.e[i][i] for i in range(min(rows, cols)) if S.e[i][i].c]
    return len(diag), diag


def decompose_rep(rep: KroneckerRep) -> list:
    """Labels of the indecomposable summands (sorted)."""
    field, A, B, d0, d1 = rep.field, rep.mapA, rep.mapB, rep.d0, rep.d1
    rank, diag = _pencil_snf(field, A, B, d0, d1, POLY_U)
    labels = []
    for e in _minimal_indices(field, A, B, d0, d1, d1 - rank):
        labels.append(Preinj(e))
    At, Bt = _transpose(A, d0, d1), _transpose(B, d0, d1)
    for e in _minimal_indices(field, At, Bt, d1, d0, d0 - rank):
        labels.append(Preproj(e))
    for d in diag:
        if d.degree > 0:
            for p, m in factor(d):
                labels.append(Regular(ClosedPoint(p), m))
    _, diag_inf = _pencil_snf(field, A, B, d0, d1, POLY_V)
    for d in diag_inf:
        v = d.x_valuation()
        if v > 0:
            labels.append(Regular(INFINITY, v))
    labels = sorted(labels, key=lambda l: l.sort_key())
    total = [sum(l.dims[0] for l in labels), sum(l.dims[1] for l in labels)]
    if tuple(total) != (d1, d0):
        raise ArithmeticError("decomposition does not account for the dimension vector")
    return labels


def rep_certificate(rep: KroneckerRep, labels) -> dict:
    """Invariant checks for a claimed decomposition: dimension vector, defect,
    ranks of the pencil at sample points."""
    field = rep.field
    canon = None
    for l in labels:
        c = canonical_rep(l, field)
        canon = c if canon is None else canon.direct_sum(c)
    if canon is None:
        canon = KroneckerRep(field, 0, 0, [], [])
    ok_dims = canon.dims == rep.dims
    samples = [(field.one, field.zero), (field.zero, field.one), (field.one, field(1)), (field.one, field(2))]

    def pencil_rank(r, s, t):
        if r.d0 == 0 or r.d1 == 0:
            return 0
        M = [[s * a + t * b for a, b in zip(ra, rb)] for ra, rb in zip(r.mapA, r.mapB)]
        return matrix_rank(field, M)
    ok_ranks = ok_dims and all(pencil_rank(rep, s, t) == pencil_rank(canon, s, t) for s, t in samples)
    defect = sum(1 if isinstance(l, Preproj) else -1 if isinstance(l, Preinj) else 0 for l in labels)
    return {"dims": ok_dims, "ranks": ok_ranks, "defect": defect == rep.d0 - rep.d1}


def sheaf_label_from_rep(label, degree: int):
    if degree == 0 and isinstance(label, Preproj):
        return LB(label.n)
    if degree == 0 and isinstance(label, Regular):
        return Tors(label.pt, label.m)
    if degree == 1 and isinstance(label, Preinj):
        return LB(-label.n - 1)
    raise NotCoherentImage("not in the image of coherent sheaves: degree %d, %s" % (degree, label))


# -- tilting -------------------------------------------------------------------------

@dataclass
class TiltImage:
    deg0: KroneckerRep
    deg1: KroneckerRep
    certificates: dict = dc_field(default_factory=dict)


def _mul_y(field, vec):
    y = Poly.monomial(field, POLY_V, 1)
    return [h * y for h in vec]


def _mul_x(field, vec):
    x = Poly.monomial(field, POLY_U, 1)
    return [h * x for h in vec]


def _shift_cochain(cx_nd, cochain, field):
    """Multiply an overlap cochain by x^(-1), dropping free monomials x^0."""
    from .exactlinear import LAURENT, reduce_laurent
    out = {}
    for (kind, a, e), c in cochain.items():
        if kind == "F":
            if e - 1 >= 1:
                out[("F", a, e - 1)] = out.get(("F", a, e - 1), field.zero) + c
        else:
            h = reduce_laurent(Poly.monomial(field, LAURENT, e - 1, c), cx_nd.modV[a])
            for k, b in h.terms():
                key = ("T", a, k)
                out[key] = out.get(key, field.zero) + b
    return {k: v for k, v in out.items() if v != 0}


def tilt(F: CoherentSheaf) -> TiltImage:
    from .homalg import cech
    field = F.field
    F1 = twist(F, -1)
    c0, c1 = cech(F), cech(F1)
    # degree 0: V1 = H0(F(-1)), V0 = H0(F)
    colsA, colsB = [], []
    for sU, sV in c1.h0_basis:
        colsA.append(c0.section_coordinates(sU, _mul_y(field, sV)))
        colsB.append(c0.section_coordinates(_mul_x(field, sU), sV))
    if any(c is None for c in colsA + colsB):
        raise ArithmeticError("multiplication by a section left the space of global sections")
    d1, d0 = c1.h0, c0.h0
    deg0 = KroneckerRep(field, d1, d0, _transpose(colsA, d1, d0) if d1 else [[] for _ in range(d0)],
                        _transpose(colsB, d1, d0) if d1 else [[] for _ in range(d0)])
    # degree 1: V1 = H1(F(-1)), V0 = H1(F), maps induced on overlap cochains
    nd = F.normal
    colsA, colsB = [], []
    for key in c1.h1_keys:
        unit = {key: field.one}
        colsA.append(c0.reduce_h1(_shift_cochain(nd, unit, field)))
        colsB.append(c0.reduce_h1(unit))
    e1, e0 = c1.h1, c0.h1
    deg1 = KroneckerRep(field, e1, e0, _transpose(colsA, e1, e0) if e1 else [[] for _ in range(e0)],
                        _transpose(colsB, e1, e0) if e1 else [[] for _ in range(e0)])
    certs = {"chi": (c0.chi, c0.h0 - c0.h1), "chi_twist": (c1.chi, c1.h0 - c1.h1)}
    return TiltImage(deg0, deg1, certs)


def tilt_labels(F: CoherentSheaf) -> list:
    """Sheaf labels of F obtained through tilt and representation decomposition."""
    img = tilt(F)
    out = [sheaf_label_from_rep(l, 0) for l in decompose_rep(img.deg0)]
    out += [sheaf_label_from_rep(l, 1) for l in decompose_rep(img.deg1)]
    return sorted_labels(out)
