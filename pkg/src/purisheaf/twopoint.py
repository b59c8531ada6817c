"""Sheaves on the two-point space Spec Z_(p).

A sheaf is a triple (M(X), M(Y), res) with M(X) a Z_(p)-module, M(Y) a
Q-vector space and res the canonical map.  Modules are described by species
(symbolic isomorphism types); finitely presented triples are also realised
concretely over Z_(p) for the splitting computations.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .exactlinear import GF, QQ, matrix_nullspace, matrix_rank

# -- species -------------------------------------------------------------------------

CYC, PRUFER, RATQ, ZHAT, QHAT, FREE = "Cyc", "PruferZ", "RatQ", "Zhat", "Qhat", "FreeFin"
_ORDER = {FREE: 0, CYC: 1, PRUFER: 2, RATQ: 3, ZHAT: 4, QHAT: 5}
# pure-injective Z_(p)-modules among the species (Dedekind domain classification)
_PURE_INJECTIVE = {CYC: True, PRUFER: True, RATQ: True, ZHAT: True, QHAT: True, FREE: False}
_Q_SPACE = {RATQ, QHAT}


@dataclass(frozen=True)
class Species:
    """A finite direct sum of indecomposable species, as sorted (kind, param) atoms.

    FreeFin(r) is stored as r copies of ("FreeFin", 1)."""

    atoms: tuple = ()

    @classmethod
    def of(cls, *atoms):
        flat = []
        for a in atoms:
            if isinstance(a, Species):
                flat += list(a.atoms)
            else:
                kind, param = a
                if kind == FREE:
                    flat += [(FREE, 1)] * param
                else:
                    flat.append((kind, param))
        return cls(tuple(sorted(flat, key=lambda a: (_ORDER[a[0]], a[1]))))

    def __add__(self, other):
        return Species.of(self, other)

    def is_zero(self):
        return not self.atoms

    def is_q_space(self):
        return all(k in _Q_SPACE for k, _ in self.atoms)

    def is_pure_injective(self):
        return all(_PURE_INJECTIVE[k] for k, _ in self.atoms)

    def __str__(self):
        if not self.atoms:
            return "0"
        parts = []
        counts = Counter(self.atoms)
        for (kind, param), mult in sorted(counts.items(), key=lambda kv: (_ORDER[kv[0][0]], kv[0][1])):
            if kind == FREE:
                parts.append("Z_(p)^%d" % mult if mult > 1 else "Z_(p)")
                continue
            name = {CYC: "Z_(p)/(p^%d)" % param, PRUFER: "Z_p^inf", RATQ: "Q", ZHAT: "Zhat", QHAT: "Qhat"}[kind]
            parts.append(name + ("^%d" % mult if mult > 1 else ""))
        return " + ".join(parts)


ZERO = Species()


def cyc(k: int) -> Species:
    if k < 1:
        raise ValueError("cyclic species needs k >= 1")
    return Species.of((CYC, k))


PRUFER_Z = Species.of((PRUFER, 0))
RAT_Q = Species.of((RATQ, 0))
Z_HAT = Species.of((ZHAT, 0))
Q_HAT = Species.of((QHAT, 0))


def free(r: int) -> Species:
    if r < 1:
        raise ValueError("free species needs r >= 1")
    return Species.of((FREE, r))


_TENSOR_Q = {CYC: None, PRUFER: None, RATQ: (RATQ, 0), ZHAT: (QHAT, 0), QHAT: (QHAT, 0), FREE: (RATQ, 0)}


def tensor_with_q(s: Species) -> Species:
    return Species.of(*[_TENSOR_Q[k] for k, _ in s.atoms if _TENSOR_Q[k] is not None])


# -- two-point sheaves ---------------------------------------------------------------

TO_ZERO, IDENTITY, INCLUSION, LOCALIZATION = "toZero", "identity", "inclusion", "localizationUnit"


class IllegalRestriction(ValueError):
    pass


def _legal(sx: Species, sy: Species, res: str) -> bool:
    if res == TO_ZERO:
        return sx.is_zero() or sy.is_zero()
    if res == IDENTITY:
        return sx == sy and sx.is_q_space()
    if res == INCLUSION:
        # a lattice inside its localisation: Zhat in Qhat, Z_(p)^r in Q^r
        return (not sx.is_zero() and all(k in (ZHAT, FREE) for k, _ in sx.atoms)
                and tensor_with_q(sx) == sy)
    if res == LOCALIZATION:
        return tensor_with_q(sx) == sy
    return False


@dataclass(frozen=True)
class TwoPointSheaf:
    sec_x: Species
    sec_y: Species
    res: str

    def __post_init__(self):
        if not self.sec_y.is_q_space():
            raise IllegalRestriction("sections over the generic point must form a Q-space")
        if not _legal(self.sec_x, self.sec_y, self.res):
            raise IllegalRestriction("restriction %r is not the canonical map %s -> %s"
                                     % (self.res, self.sec_x, self.sec_y))

    def __str__(self):
        return "(%s, %s; %s)" % (self.sec_x, self.sec_y, self.res)


def is_quasicoherent(m: TwoPointSheaf) -> bool:
    """M(Y) = M(X) (x) Q with res the localisation map."""
    if tensor_with_q(m.sec_x) != m.sec_y:
        return False
    return m.res in (LOCALIZATION, INCLUSION, IDENTITY) or (m.res == TO_ZERO and m.sec_y.is_zero())


def _res_surjective(m: TwoPointSheaf) -> bool:
    if m.sec_y.is_zero():
        return True
    if m.res == IDENTITY:
        return True
    if m.res == INCLUSION or m.res == TO_ZERO:
        return False
    # localisation onto M (x) Q: onto exactly when no lattice summands occur
    return all(k not in (ZHAT, FREE) for k, _ in m.sec_x.atoms)


def is_flasque(m: TwoPointSheaf) -> bool:
    return _res_surjective(m)


def restriction_splits(m: TwoPointSheaf) -> bool:
    """res has a Z_(p)-linear section.  For these species a surjective res is
    the projection onto the divisible torsion-free part, which splits."""
    return _res_surjective(m)


def is_skyscraper(m: TwoPointSheaf) -> bool:
    """Supported at the closed point (M(Y) = 0) or pushed forward from the
    generic point (res the identity of a Q-space)."""
    return m.sec_y.is_zero() or (m.res == IDENTITY and m.sec_x.is_q_space())


def is_g_pure_injective_candidate(m: TwoPointSheaf) -> bool:
    return is_skyscraper(m) and m.sec_x.is_pure_injective()


# -- the table ------------------------------------------------------------------------

@dataclass
class TableRow:
    sheaf: TwoPointSheaf
    cb_rank: int
    injective: bool
    g_pure_injective: bool
    quasicoherent: bool
    stored_g_pure_injective: bool
    stored_quasicoherent: bool

    @property
    def matches(self) -> bool:
        return (self.g_pure_injective == self.stored_g_pure_injective
                and self.quasicoherent == self.stored_quasicoherent)

    def as_dict(self):
        return {"X": str(self.sheaf.sec_x), "Y": str(self.sheaf.sec_y), "res": self.sheaf.res,
                "cbRank": self.cb_rank, "injective": self.injective,
                "gPureInjective": self.g_pure_injective, "quasicoherent": self.quasicoherent,
                "flasque": is_flasque(self.sheaf)}


class TableMismatch(AssertionError):
    pass


# (X, Y, res, CB rank, injective, g-pure-injective, quasicoherent); the last
# two columns are recomputed and compared.
TABLE_DATA = [
    (PRUFER_Z, ZERO, TO_ZERO, 1, True, True, True),
    (RAT_Q, ZERO, TO_ZERO, 2, True, True, False),
    (RAT_Q, RAT_Q, IDENTITY, 1, True, True, True),
    (None, ZERO, TO_ZERO, 0, False, True, True),   # Z_(p)/(p^k), symbolic k
    (Z_HAT, ZERO, TO_ZERO, 1, False, True, False),
    (Z_HAT, Q_HAT, INCLUSION, 0, False, False, True),
    (ZERO, RAT_Q, TO_ZERO, 1, False, False, False),
]


def zp_table(k: int = 1, check: bool = True) -> list:
    """The seven points with recomputed g-pure-injectivity and quasicoherence.

    Row 4 stands for every Z_(p)/(p^k); ``k`` picks the representative."""
    rows = []
    for sx, sy, res, cb, inj, gpi, qc in TABLE_DATA:
        sheaf = TwoPointSheaf(cyc(k) if sx is None else sx, sy, res)
        row = TableRow(sheaf, cb, inj, is_g_pure_injective_candidate(sheaf), is_quasicoherent(sheaf), gpi, qc)
        if check and not row.matches:
            raise TableMismatch("recomputed columns differ from the table for %s" % sheaf)
        if row.g_pure_injective and not is_flasque(sheaf):
            raise TableMismatch("g-pure-injective row %s is not flasque" % sheaf)
        rows.append(row)
    return rows


def format_table(rows) -> str:
    head = ["N(X)", "N(Y)", "CB rank", "injective", "g-pure-inj.", "quasicoh."]
    body = []
    for i, r in enumerate(rows):
        x = "Z_(p)/(p^k)" if i == 3 else str(r.sheaf.sec_x)
        body.append([x, str(r.sheaf.sec_y), str(r.cb_rank), "x" if r.injective else "",
                     "x" if r.g_pure_injective else "", "x" if r.quasicoherent else ""])
    widths = [max(len(row[c]) for row in [head] + body) for c in range(len(head))]
    line = lambda row: "| " + " | ".join(cell.ljust(w) for cell, w in zip(row, widths)) + " |"
    sep = "+" + "+".join("-" * (w + 2) for w in widths) + "+"
    return "\n".join([sep, line(head), sep] + [line(r) for r in body] + [sep])


# -- concrete finitely presented triples ---------------------------------------------

class TripleError(ValueError):
    pass


def valuation(a: Fraction, p: int) -> int | None:
    """p-adic valuation of a rational (None for zero)."""
    a = Fraction(a)
    if a == 0:
        return None
    v = 0
    n, d = a.numerator, a.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def in_zp(a, p: int) -> bool:
    return Fraction(a).denominator % p != 0


@dataclass
class Triple:
    """M(X) = Z_(p)^free + sum Z_(p)/(p^k) (torsion exponents), M(Y) = Q^ydim,
    and res given by a ydim x (free + len(torsion)) rational matrix vanishing on
    torsion columns."""

    p: int
    free: int
    torsion: tuple
    ydim: int
    res: list

    def __post_init__(self):
        self.torsion = tuple(self.torsion)
        n = self.free + len(self.torsion)
        if len(self.res) != self.ydim or any(len(r) != n for r in self.res):
            raise TripleError("restriction matrix has the wrong shape")
        for r in self.res:
            for j in range(self.free, n):
                if r[j] != 0:
                    raise TripleError("restriction must vanish on torsion")
        self.res = [[Fraction(a) for a in r] for r in self.res]

    @property
    def nx(self):
        return self.free + len(self.torsion)

    def modulus(self, i):
        """Exponent k of summand i (None for free)."""
        return None if i < self.free else self.torsion[i - self.free]

    def species(self):
        return (Species.of(*([(FREE, self.free)] if self.free else []), *[(CYC, k) for k in self.torsion]),
                Species.of(*[(RATQ, 0)] * self.ydim))


def _hom_scale(p, src_k, tgt_k):
    """Entry constraint for a map Z/(p^src_k) or Z_(p) -> Z/(p^tgt_k) or Z_(p):
    the factor every entry must be a multiple of (None: entry must vanish)."""
    if src_k is None:
        return 1
    if tgt_k is None:
        return None
    return p ** max(0, tgt_k - src_k)


def _check_x_map(src: Triple, tgt: Triple, M):
    p = src.p
    if len(M) != tgt.nx or any(len(r) != src.nx for r in M):
        raise TripleError("X-component has the wrong shape")
    for i in range(tgt.nx):
        for j in range(src.nx):
            a = Fraction(M[i][j])
            if not in_zp(a, p):
                raise TripleError("X-component entries must lie in Z_(p)")
            s = _hom_scale(p, src.modulus(j), tgt.modulus(i))
            k = tgt.modulus(i)
            if s is None:
                if a != 0:
                    raise TripleError("torsion cannot map to a free summand")
            elif k is not None and a != 0 and valuation(a, p) < min(k, valuation(Fraction(s), p)):
                raise TripleError("X-component is not well defined on torsion")


def _matmul(A, B):
    if not A:
        return []
    m = len(B[0]) if B else 0
    return [[sum((Fraction(A[i][k]) * Fraction(B[k][j]) for k in range(len(B))), Fraction(0)) for j in range(m)]
            for i in range(len(A))]


@dataclass
class TripleMorphism:
    source: Triple
    target: Triple
    fx: list
    fy: list

    def __post_init__(self):
        S, T = self.source, self.target
        _check_x_map(S, T, self.fx)
        if len(self.fy) != T.ydim or any(len(r) != S.ydim for r in self.fy):
            raise TripleError("Y-component has the wrong shape")
        left = _matmul(T.res, self.fx) if T.ydim and S.nx else [[Fraction(0)] * S.nx for _ in range(T.ydim)]
        right = _matmul(self.fy, S.res) if T.ydim and S.ydim else [[Fraction(0)] * S.nx for _ in range(T.ydim)]
        if left != right:
            raise TripleError("the two components do not commute with the restriction maps")


def _x_injective(f: TripleMorphism) -> bool:
    """Injective on M(X) (x) Q and on the socle of M(X)."""
    S, T, p = f.source, f.target, f.source.p
    free_rows = [i for i in range(T.nx) if T.modulus(i) is None]
    if S.free:
        if len(free_rows) < S.free:
            return False
        M = [[Fraction(f.fx[i][j]) for j in range(S.free)] for i in free_rows]
        if matrix_rank(QQ, M) != S.free:
            return False
    if S.torsion:
        F = GF(p)
        cols = []
        for j in range(S.free, S.nx):
            l = S.modulus(j)
            col = []
            for i in range(T.nx):
                k = T.modulus(i)
                if k is None:
                    col.append(0)
                    continue
                v = Fraction(f.fx[i][j]) * p ** (l - 1)
                # socle element of Z/(p^k): c * p^(k-1); read off c mod p
                val = valuation(v, p)
                if val is None or val >= k:
                    col.append(0)
                elif val == k - 1:
                    unit = v / Fraction(p) ** (k - 1)
                    col.append(unit.numerator * pow(unit.denominator, -1, p) % p)
                else:
                    raise TripleError("image of a socle element is not in the socle")
            cols.append(col)
        rows = [[F(cols[j][i]) for j in range(len(cols))] for i in range(T.nx)]
        if matrix_rank(F, rows) != len(cols):
            return False
    return True


def _y_injective(f: TripleMorphism) -> bool:
    if f.source.ydim == 0:
        return True
    return matrix_rank(QQ, [[Fraction(a) for a in r] for r in f.fy]) == f.source.ydim


def is_mono_triple(f: TripleMorphism) -> bool:
    return _x_injective(f) and _y_injective(f)


def solve_zp(C, d, p):
    """A solution w in Z_(p)^n of C w = d, or None (valuation-pivot elimination)."""
    m = len(C)
    n = len(C[0]) if m else 0
    A = [[Fraction(a) for a in r] for r in C]
    b = [Fraction(a) for a in d]
    V = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    piv = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = valuation(A[i][j], p)
                if v is not None and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        b[t], b[i] = b[i], b[t]
        for r in A:
            r[t], r[j] = r[j], r[t]
        for r in V:
            r[t], r[j] = r[j], r[t]
        pv = A[t][t]
        for i in range(m):
            if i != t and A[i][t] != 0:
                q = A[i][t] / pv
                A[i] = [a - q * c for a, c in zip(A[i], A[t])]
                b[i] -= q * b[t]
        for j in range(t + 1, n):
            if A[t][j] != 0:
                q = A[t][j] / pv
                for r in A:
                    r[j] -= q * r[t]
                for r in V:
                    r[j] -= q * r[t]
        piv.append(pv)
        t += 1
    y = [Fraction(0)] * n
    for i in range(m):
        if i < len(piv):
            q = b[i] / piv[i]
            if not in_zp(q, p):
                return None
            y[i] = q
        elif b[i] != 0:
            return None
    return [sum((V[i][j] * y[j] for j in range(n)), Fraction(0)) for i in range(n)]


def _retraction_system(f: TripleMorphism, with_y: bool):
    """Unknowns: scaled entries z of r_X (Z_(p)), slacks for congruences (Z_(p)),
    and, with_y, entries of r_Y (Q).  Returns integral equations C w = d over
    Z_(p) after eliminating the rational unknowns, plus the variable layout."""
    S, T, p = f.source, f.target, f.source.p   # retraction r: T -> S
    zvars = []   # (i, j, scale) entry r_X[i][j] = scale * z
    for i in range(S.nx):
        for j in range(T.nx):
            s = _hom_scale(p, T.modulus(j), S.modulus(i))
            if s is not None:
                zvars.append((i, j, s))
    nz = len(zvars)
    zint_rows, zint_rhs = [], []       # exact equations over Z_(p) in z (plus slacks)
    slack_scales = []
    # r_X f_X = id on M_S(X): entry (i, m), modulo p^k for torsion row i
    for i in range(S.nx):
        for mcol in range(S.nx):
            row = [Fraction(0)] * nz
            for v, (ii, j, s) in enumerate(zvars):
                if ii == i:
                    row[v] += s * Fraction(f.fx[j][mcol])
            zint_rows.append(row)
            zint_rhs.append(Fraction(int(i == mcol)))
            k = S.modulus(i)
            slack_scales.append(None if k is None else Fraction(p) ** k)
    q_rows, q_rhs = [], []
    ny = S.ydim * T.ydim if with_y else 0
    if with_y:
        # res_S r_X - r_Y res_T = 0   (S.ydim x T.nx)
        for a in range(S.ydim):
            for j in range(T.nx):
                row = [Fraction(0)] * (nz + ny)
                for v, (i, jj, s) in enumerate(zvars):
                    if jj == j:
                        row[v] += S.res[a][i] * s
                for b in range(T.ydim):
                    row[nz + a * T.ydim + b] -= T.res[b][j]
                q_rows.append(row)
                q_rhs.append(Fraction(0))
        # r_Y f_Y = id   (S.ydim x S.ydim)
        for a in range(S.ydim):
            for c in range(S.ydim):
                row = [Fraction(0)] * (nz + ny)
                for b in range(T.ydim):
                    row[nz + a * T.ydim + b] += Fraction(f.fy[b][c])
                q_rows.append(row)
                q_rhs.append(Fraction(int(a == c)))
    # eliminate the rational unknowns: left kernel of their coefficient block
    extra_rows, extra_rhs = [], []
    if q_rows:
        if ny:
            Ey_T = [[q_rows[r][nz + c] for r in range(len(q_rows))] for c in range(ny)]
            lams = matrix_nullspace(QQ, Ey_T, len(q_rows))
        else:
            lams = [[Fraction(int(r == c)) for r in range(len(q_rows))] for c in range(len(q_rows))]
        for lam in lams:
            row = [sum((lam[r] * q_rows[r][v] for r in range(len(q_rows))), Fraction(0)) for v in range(nz)]
            rhs = sum((lam[r] * q_rhs[r] for r in range(len(q_rows))), Fraction(0))
            # scale to Z_(p)-integral coefficients; exact equations stay equivalent
            vals = [valuation(a, p) for a in row + [rhs] if a != 0]
            if vals:
                sc = Fraction(p) ** (-min(vals)) if min(vals) < 0 else Fraction(1)
                row = [a * sc for a in row]
                rhs = rhs * sc
            extra_rows.append(row)
            extra_rhs.append(rhs)
    nslack = sum(1 for s in slack_scales if s is not None)
    C, d = [], []
    si = 0
    for row, rhs, sc in zip(zint_rows, zint_rhs, slack_scales):
        sl = [Fraction(0)] * nslack
        if sc is not None:
            sl[si] = sc
            si += 1
        C.append(row + sl)
        d.append(rhs)
    for row, rhs in zip(extra_rows, extra_rhs):
        C.append(row + [Fraction(0)] * nslack)
        d.append(rhs)
    return C, d, zvars


def _retraction_exists(f: TripleMorphism, with_y: bool):
    S, T, p = f.source, f.target, f.source.p
    if S.nx == 0 and not with_y:
        return True, []
    C, d, zvars = _retraction_system(f, with_y)
    if not C:
        return True, []
    if not C[0]:
        ok = all(x == 0 for x in d)
        return ok, [] if ok else None
    w = solve_zp(C, d, p)
    if w is None:
        return False, None
    rx = [[Fraction(0)] * T.nx for _ in range(S.nx)]
    for v, (i, j, s) in enumerate(zvars):
        rx[i][j] = s * w[v]
    return True, rx


@dataclass
class TriplePurity:
    c_pure: bool
    g_pure: bool
    retraction_x: list | None = None
    certificates: dict = dc_field(default_factory=dict)


def is_c_pure_mono_triple(f: TripleMorphism) -> TriplePurity:
    """c-purity (a retraction of triples) and g-purity (a retraction of the
    X-component) of a monomorphism of finitely presented triples."""
    if not is_mono_triple(f):
        raise TripleError("not a monomorphism of triples")
    c, rx = _retraction_exists(f, with_y=True)
    g, rxg = _retraction_exists(f, with_y=False)
    return TriplePurity(c, g, rx if c else rxg, {"c_implies_g": (not c) or g})


def witness_family(a: int, p: int = 2) -> TripleMorphism:
    """(0, Q^a) -> (Z_(p)^a, Q^a, inclusion) with the identity on Q^a.

    The X-component 0 -> Z_(p)^a splits, but a triple retraction would need
    r_Y = id and r_Y = 0 at once."""
    I = [[Fraction(int(i == j)) for j in range(a)] for i in range(a)]
    A = Triple(p, 0, (), a, [[] for _ in range(a)])
    B = Triple(p, a, (), a, I)
    return TripleMorphism(A, B, [[] for _ in range(a)], I)


def multiplication_by_p(p: int = 2) -> TripleMorphism:
    """p: (Z_(p), Q, inclusion) -> (Z_(p), Q, inclusion)."""
    A = Triple(p, 1, (), 1, [[1]])
    return TripleMorphism(A, A, [[p]], [[p]])
