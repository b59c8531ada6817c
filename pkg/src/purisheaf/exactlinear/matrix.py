"""Matrices over the coordinate rings, Smith normal form and linear solving."""

from __future__ import annotations

from .field import Field
from .poly import LAURENT, POLY_U, POLY_V, Poly, UnsupportedRing


class RingMatrix:
    __slots__ = ("field", "ring", "rows", "cols", "e")

    def __init__(self, field: Field, ring: str, rows: int, cols: int, entries=None):
        self.field = field
        self.ring = ring
        self.rows = rows
        self.cols = cols
        if entries is None:
            z = Poly.zero(field, ring)
            entries = [[z] * cols for _ in range(rows)]
        e = []
        for row in entries:
            r = []
            for a in row:
                if not isinstance(a, Poly):
                    a = Poly.const(field, ring, a)
                elif a.ring != ring:
                    raise ValueError("entry ring %s does not match matrix ring %s" % (a.ring, ring))
                r.append(a)
            if len(r) != cols:
                raise ValueError("ragged matrix")
            e.append(tuple(r))
        if len(e) != rows:
            raise ValueError("row count mismatch")
        self.e = tuple(e)

    # constructors --------------------------------------------------------------
    @classmethod
    def zeros(cls, field, ring, rows, cols):
        return cls(field, ring, rows, cols)

    @classmethod
    def identity(cls, field, ring, n):
        one = Poly.const(field, ring, 1)
        z = Poly.zero(field, ring)
        return cls(field, ring, n, n, [[one if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, field, ring, entries, rows=None, cols=None):
        n = len(entries)
        rows = n if rows is None else rows
        cols = n if cols is None else cols
        m = [[Poly.zero(field, ring)] * cols for _ in range(rows)]
        for i, a in enumerate(entries):
            m[i][i] = a if isinstance(a, Poly) else Poly.const(field, ring, a)
        return cls(field, ring, rows, cols, m)

    @classmethod
    def from_rows(cls, field, ring, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(field, ring, len(rows), cols, rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.e[i][j]

    def column(self, j):
        return [self.e[i][j] for i in range(self.rows)]

    def row(self, i):
        return list(self.e[i])

    def to_lists(self):
        return [list(r) for r in self.e]

    # algebra -----------------------------------------------------------------
    def _same(self, other):
        if other.ring != self.ring or other.field != self.field:
            raise ValueError("ring mismatch: %s vs %s" % (self.ring, other.ring))

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        self._same(other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch %dx%d @ %dx%d" % (self.rows, self.cols, other.rows, other.cols))
        z = Poly.zero(self.field, self.ring)
        out = []
        ocols = [other.column(j) for j in range(other.cols)]
        for i in range(self.rows):
            ri = self.e[i]
            row = []
            for col in ocols:
                s = z
                for a, b in zip(ri, col):
                    if a.c and b.c:
                        s = s + a * b
                row.append(s)
            out.append(row)
        return RingMatrix(self.field, self.ring, self.rows, other.cols, out)

    def __add__(self, other):
        self._same(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RingMatrix(self.field, self.ring, self.rows, self.cols,
                          [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.e, other.e)])

    def __neg__(self):
        return self.map(lambda a: -a)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return self.map(lambda a: a * c)

    def map(self, fn, ring=None):
        ring = ring or self.ring
        return RingMatrix(self.field, ring, self.rows, self.cols, [[fn(a) for a in r] for r in self.e])

    def transpose(self):
        return RingMatrix(self.field, self.ring, self.cols, self.rows,
                          [[self.e[i][j] for i in range(self.rows)] for j in range(self.cols)])

    T = property(transpose)

    def is_zero(self):
        return all(not a.c for r in self.e for a in r)

    def to_ring(self, ring):
        return self.map(lambda a: a.to_ring(ring), ring)

    def invert_variable(self):
        """y -> 1/x on every entry (PolyV matrix to Laurent)."""
        return self.map(lambda a: a.invert_variable(LAURENT), LAURENT)

    def submatrix(self, rows, cols):
        return RingMatrix(self.field, self.ring, len(rows), len(cols),
                          [[self.e[i][j] for j in cols] for i in rows])

    def hstack(self, other):
        self._same(other)
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        return RingMatrix(self.field, self.ring, self.rows, self.cols + other.cols,
                          [list(a) + list(b) for a, b in zip(self.e, other.e)])

    def vstack(self, other):
        self._same(other)
        if self.cols != other.cols:
            raise ValueError("column count mismatch in vstack")
        return RingMatrix(self.field, self.ring, self.rows + other.rows, self.cols,
                          list(self.e) + list(other.e))

    def block_diag(self, other):
        self._same(other)
        z = Poly.zero(self.field, self.ring)
        rows = [list(r) + [z] * other.cols for r in self.e]
        rows += [[z] * self.cols + list(r) for r in other.e]
        return RingMatrix(self.field, self.ring, self.rows + other.rows, self.cols + other.cols, rows)

    def kron(self, other):
        self._same(other)
        rows = []
        for i in range(self.rows):
            for k in range(other.rows):
                rows.append([self.e[i][j] * other.e[k][l]
                             for j in range(self.cols) for l in range(other.cols)])
        return RingMatrix(self.field, self.ring, self.rows * other.rows, self.cols * other.cols, rows)

    def max_span(self) -> int:
        return max((a.span() for r in self.e for a in r), default=0)

    def __eq__(self, other):
        return (isinstance(other, RingMatrix) and self.ring == other.ring
                and (self.rows, self.cols) == (other.rows, other.cols) and self.e == other.e)

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, self.e))

    def __repr__(self):
        body = "; ".join(", ".join(str(a) for a in r) for r in self.e)
        return "RingMatrix[%s %dx%d]([%s])" % (self.ring, self.rows, self.cols, body)


def det(m: RingMatrix) -> Poly:
    """Determinant by fraction-free cofactor expansion (small matrices)."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Poly.const(m.field, m.ring, 1)
    if n == 1:
        return m.e[0][0]
    total = Poly.zero(m.field, m.ring)
    for j in range(n):
        a = m.e[0][j]
        if not a.c:
            continue
        minor = m.submatrix(range(1, n), [c for c in range(n) if c != j])
        term = a * det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


# -- Smith normal form -------------------------------------------------------------

def _snf_poly(m: RingMatrix):
    """Smith normal form over k[x] or k[y]: returns (S, U, V) with U m V = S."""
    field, ring = m.field, m.ring
    n, c = m.rows, m.cols
    A = [list(r) for r in m.e]
    one = Poly.const(field, ring, 1)
    zero = Poly.zero(field, ring)
    U = [[one if i == j else zero for j in range(n)] for i in range(n)]
    V = [[one if i == j else zero for j in range(c)] for i in range(c)]
    Ui = [[one if i == j else zero for j in range(n)] for i in range(n)]  # inverse of U

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def row_axpy(dst, src, q):  # row dst -= q * row src
        A[dst] = [a - q * b if b.c else a for a, b in zip(A[dst], A[src])]
        U[dst] = [a - q * b if b.c else a for a, b in zip(U[dst], U[src])]
        for r in Ui:
            if r[dst].c:
                r[src] = r[src] + q * r[dst]

    def col_axpy(dst, src, q):  # col dst -= q * col src
        for r in A:
            if r[src].c:
                r[dst] = r[dst] - q * r[src]
        for r in V:
            if r[src].c:
                r[dst] = r[dst] - q * r[src]

    t = 0
    while t < min(n, c):
        best = None
        for i in range(t, n):
            for j in range(t, c):
                a = A[i][j]
                if a.c and (best is None or a.degree < best[0]):
                    best = (a.degree, i, j)
                    if best[0] == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            piv = A[t][t]
            clean = True
            for i in range(t + 1, n):
                if A[i][t].c:
                    q, r = A[i][t].divmod(piv)
                    row_axpy(i, t, q)
                    if r.c:
                        clean = False
            for j in range(t + 1, c):
                if A[t][j].c:
                    q, r = A[t][j].divmod(piv)
                    col_axpy(j, t, q)
                    if r.c:
                        clean = False
            if not clean:
                # bring a smaller-degree remainder into the pivot position
                best = None
                for i in range(t, n):
                    if A[i][t].c and (best is None or A[i][t].degree < best[0]):
                        best = (A[i][t].degree, "r", i)
                for j in range(t, c):
                    if A[t][j].c and (best is None or A[t][j].degree < best[0]):
                        best = (A[t][j].degree, "c", j)
                if best[1] == "r":
                    swap_rows(t, best[2])
                else:
                    swap_cols(t, best[2])
                continue
            bad = None
            for i in range(t + 1, n):
                for j in range(t + 1, c):
                    if A[i][j].c and not piv.divides(A[i][j]):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # row t += row bad, then re-reduce
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
            U[t] = [a + b for a, b in zip(U[t], U[bad])]
            for r in Ui:
                if r[t].c:
                    r[bad] = r[bad] - r[t]
        piv = A[t][t]
        inv = field.one / piv.lc
        if inv != field.one:
            A[t] = [a * inv for a in A[t]]
            U[t] = [a * inv for a in U[t]]
            for r in Ui:
                r[t] = r[t] * piv.lc
        t += 1
    S = RingMatrix(field, ring, n, c, A)
    return (S, RingMatrix(field, ring, n, n, U), RingMatrix(field, ring, c, c, V),
            RingMatrix(field, ring, n, n, Ui))


def smith_normal_form(m: RingMatrix):
    """Return (S, U, V) with U*m*V = S; see :func:`smith_normal_form_full`."""
    return smith_normal_form_full(m)[:3]


def smith_normal_form_full(m: RingMatrix):
    """Return (S, U, V, U^-1) with (S, U, V) with U*m*V = S, S diagonal with monic d1 | d2 | ... then zeros.

    Over the Laurent ring the matrix is first cleared of negative exponents and
    the diagonal is normalised to have nonzero constant terms (powers of x are
    units there).
    """
    if m.ring in (POLY_U, POLY_V):
        return _snf_poly(m)
    if m.ring != LAURENT:
        raise UnsupportedRing("unsupported ring %r" % m.ring)
    k = max((-a.low for r in m.e for a in r if a.c and a.low < 0), default=0)
    cleared = RingMatrix(m.field, POLY_U, m.rows, m.cols,
                         [[a.shift(k).to_ring(POLY_U) for a in r] for r in m.e])
    S, U, V, Ui = _snf_poly(cleared)
    S, U, V, Ui = S.to_ring(LAURENT), U.to_ring(LAURENT), V.to_ring(LAURENT), Ui.to_ring(LAURENT)
    # U m V = x^{-k} S; rescale rows of U so the diagonal becomes x-free and monic
    rows = U.to_lists()
    irows = Ui.to_lists()
    diag = []
    for i in range(min(m.rows, m.cols)):
        d = S.e[i][i]
        if not d.c:
            break
        unit = Poly.monomial(m.field, LAURENT, k - d.low, m.field.one)
        rows[i] = [a * unit for a in rows[i]]
        inv_unit = Poly.monomial(m.field, LAURENT, d.low - k, m.field.one)
        for r in irows:
            r[i] = r[i] * inv_unit
        diag.append(d.strip_x())
    U2 = RingMatrix(m.field, LAURENT, m.rows, m.rows, rows)
    S2 = RingMatrix.diag(m.field, LAURENT, diag, m.rows, m.cols)
    return S2, U2, V, RingMatrix(m.field, LAURENT, m.rows, m.rows, irows)


def invariant_factors(m: RingMatrix):
    """Nonzero diagonal entries of the Smith form (units included)."""
    S, _, _ = smith_normal_form(m)
    out = []
    for i in range(min(S.rows, S.cols)):
        if not S.e[i][i].c:
            break
        out.append(S.e[i][i])
    return out


def ring_divide(h: Poly, s: Poly):
    """Exact quotient h / s in the ring of h, or None when s does not divide h."""
    if not s.c:
        return Poly.zero(h.field, h.ring) if not h.c else None
    if not h.c:
        return h
    if h.ring != LAURENT:
        q, r = h.divmod(s)
        return None if r.c else q
    # Laurent: s = c x^a e with e(0) != 0
    e = s.like(0, s.c)
    g = h.like(0, h.c)
    q, r = g.divmod(e)
    if r.c:
        return None
    return q.shift(h.low - s.low)


def nullspace(a: RingMatrix):
    """Basis (as columns) of {v : a v = 0} over the ring."""
    S, U, V = smith_normal_form(a)
    rank = sum(1 for i in range(min(S.rows, S.cols)) if S.e[i][i].c)
    return V.submatrix(range(V.rows), range(rank, V.cols))


class SolutionSet:
    """Solutions of a*x = b: a particular solution (or None) plus the
    homogeneous basis as columns."""

    def __init__(self, particular, homogeneous):
        self.particular = particular
        self.homogeneous = homogeneous

    @property
    def solvable(self):
        return self.particular is not None

    def __repr__(self):
        if self.particular is None:
            return "SolutionSet(none)"
        return "SolutionSet(%r, +%d homogeneous)" % (self.particular, self.homogeneous.cols)


def solve_linear(a: RingMatrix, b: RingMatrix) -> SolutionSet:
    """Solve a*x = b exactly over the ring (all columns of b at once)."""
    if a.ring != b.ring or a.field != b.field:
        raise ValueError("ring mismatch")
    if a.rows != b.rows:
        raise ValueError("shape mismatch: a has %d rows, b has %d" % (a.rows, b.rows))
    S, U, V = smith_normal_form(a)
    rank = sum(1 for i in range(min(S.rows, S.cols)) if S.e[i][i].c)
    Ub = U @ b
    z = Poly.zero(a.field, a.ring)
    y = [[z] * b.cols for _ in range(a.cols)]
    for i in range(a.rows):
        for j in range(b.cols):
            h = Ub.e[i][j]
            if i < rank:
                q = ring_divide(h, S.e[i][i])
                if q is None:
                    return SolutionSet(None, V.submatrix(range(V.rows), range(rank, V.cols)))
                y[i][j] = q
            elif h.c:
                return SolutionSet(None, V.submatrix(range(V.rows), range(rank, V.cols)))
    x = V @ RingMatrix(a.field, a.ring, a.cols, b.cols, y)
    return SolutionSet(x, V.submatrix(range(V.rows), range(rank, V.cols)))
