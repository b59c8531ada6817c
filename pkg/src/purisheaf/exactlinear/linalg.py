"""Sparse exact linear algebra over a field.

Vectors are dicts mapping hashable coordinate keys to nonzero scalars.  The
echelon structure picks as pivot the highest-priority key of each vector, which
lets callers eliminate a chosen set of coordinates first (used for intersecting
an image with a coordinate window).
"""

from __future__ import annotations

from .field import Field


def axpy(y: dict, a, x: dict):
    """y += a*x in place, dropping zeros."""
    for k, v in x.items():
        w = y.get(k)
        if w is None:
            nv = a * v
            if nv != 0:
                y[k] = nv
        else:
            nv = w + a * v
            if nv == 0:
                del y[k]
            else:
                y[k] = nv
    return y


def clean(v: dict) -> dict:
    return {k: a for k, a in v.items() if a != 0}


class Echelon:
    """Incremental row echelon form over sparse vectors.

    ``priority`` maps a key to a sortable value; the pivot of a vector is its
    key of maximal priority.  With ``track=True`` each stored row remembers the
    combination of inserted vectors it came from, so dependencies can be read
    off as kernel vectors.
    """

    def __init__(self, field: Field, priority=None, track: bool = False):
        self.field = field
        self.priority = priority or (lambda k: k)
        self.rows: dict = {}      # pivot key -> (vector, combination)
        self.track = track
        self.count = 0
        self.kernel: list = []

    def _pivot(self, v):
        return max(v, key=self.priority)

    def reduce_leading(self, v: dict, combo=None):
        v = dict(v)
        while v:
            pk = self._pivot(v)
            row = self.rows.get(pk)
            if row is None:
                break
            f = -v[pk] / row[0][pk]
            axpy(v, f, row[0])
            if combo is not None:
                axpy(combo, f, row[1])
        return v, combo

    def add(self, v: dict) -> bool:
        """Insert a vector; return True when it was independent."""
        idx = self.count
        self.count += 1
        combo = {idx: self.field.one} if self.track else None
        r, combo = self.reduce_leading(v, combo)
        if not r:
            if self.track:
                self.kernel.append(combo)
            return False
        self.rows[self._pivot(r)] = (r, combo)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains(self, v: dict) -> bool:
        r, _ = self.reduce_leading(v)
        return not r

    def reduce_full(self, v: dict, combo=False):
        """Eliminate every pivot key from v (not only the leading one).

        Returns the residual, supported on non-pivot keys; with ``combo`` also
        the combination of inserted vectors that was subtracted."""
        v = dict(v)
        used = {} if combo else None
        while True:
            keys = [k for k in v if k in self.rows]
            if not keys:
                break
            pk = max(keys, key=self.priority)
            row = self.rows[pk]
            f = -v[pk] / row[0][pk]
            axpy(v, f, row[0])
            if combo:
                axpy(used, -f, row[1])
        return (v, used) if combo else v

    def express(self, v: dict):
        """Coefficients c (by insertion index) with sum c_i v_i = v, or None."""
        if not self.track:
            raise ValueError("express needs track=True")
        r, used = self.reduce_full(v, combo=True)
        if r:
            return None
        return used


def kernel_of_columns(field: Field, columns, priority=None):
    """Basis of {c : sum c_j columns[j] = 0} as dicts index -> scalar."""
    ech = Echelon(field, priority=priority, track=True)
    for col in columns:
        ech.add(col)
    return ech.kernel


def rank_of(field: Field, vectors) -> int:
    ech = Echelon(field)
    for v in vectors:
        ech.add(v)
    return ech.rank


# dense convenience wrappers --------------------------------------------------

def _rows_to_sparse(m):
    return [{j: a for j, a in enumerate(r) if a != 0} for r in m]


def _cols_to_sparse(m, ncols):
    return [{i: r[j] for i, r in enumerate(m) if r[j] != 0} for j in range(ncols)]


def matrix_rank(field: Field, m) -> int:
    return rank_of(field, _rows_to_sparse(m))


def matrix_nullspace(field: Field, m, ncols=None):
    """Right kernel of a dense matrix (list of rows), as dense column vectors."""
    ncols = ncols if ncols is not None else (len(m[0]) if m else 0)
    ker = kernel_of_columns(field, _cols_to_sparse(m, ncols))
    return [[c.get(j, field.zero) for j in range(ncols)] for c in ker]


def matrix_solve(field: Field, m, rhs, ncols=None):
    """One solution x of m x = rhs (dense), or None."""
    ncols = ncols if ncols is not None else (len(m[0]) if m else 0)
    ech = Echelon(field, track=True)
    for col in _cols_to_sparse(m, ncols):
        ech.add(col)
    c = ech.express({i: a for i, a in enumerate(rhs) if a != 0})
    if c is None:
        return None
    return [c.get(j, field.zero) for j in range(ncols)]


def matmul(field: Field, a, b):
    if not a:
        return []
    n = len(b[0]) if b else 0
    out = []
    for row in a:
        r = [field.zero] * n
        for k, x in enumerate(row):
            if x != 0:
                bk = b[k]
                for j in range(n):
                    if bk[j] != 0:
                        r[j] = r[j] + x * bk[j]
        out.append(r)
    return out
