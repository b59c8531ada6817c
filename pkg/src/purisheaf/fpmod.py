"""Finitely presented modules over the chart rings k[x], k[y], k[x, 1/x].

A module is the cokernel of its relation matrix: ``ngens`` generators and one
column per relation.  Most computations go through a *normal form*, an
isomorphic direct sum of cyclic modules R/(d) (d = 0 for free summands) with
explicit coordinate changes in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .exactlinear import (LAURENT, POLY_U, POLY_V, Poly, RingMatrix, gcd, nullspace, reduce_laurent,
                          smith_normal_form_full, solve_linear)


class NotAMonomorphism(ValueError):
    pass


class MorphismError(ValueError):
    pass


def reduce_mod(h: Poly, modulus):
    """Canonical representative of h in R/(modulus); modulus None means free."""
    if modulus is None:
        return h
    if h.ring == LAURENT:
        return reduce_laurent(h, modulus)
    return h % modulus


def _normalise_modulus(d: Poly):
    return d.strip_x() if d.ring == LAURENT else d.monic()


class FPModule:
    def __init__(self, ring: str, ngens: int, relations: RingMatrix):
        if relations.ring != ring:
            raise ValueError("relation matrix ring %s does not match module ring %s" % (relations.ring, ring))
        if relations.rows != ngens:
            raise ValueError("relation matrix must have one row per generator")
        self.ring = ring
        self.field = relations.field
        self.ngens = ngens
        self.relations = relations

    @classmethod
    def free(cls, field, ring, rank):
        return cls(ring, rank, RingMatrix(field, ring, rank, 0))

    @classmethod
    def cyclic(cls, d: Poly):
        return cls(d.ring, 1, RingMatrix(d.field, d.ring, 1, 1, [[d]]))

    @classmethod
    def diagonal(cls, field, ring, moduli):
        """Direct sum of R/(d) for d in moduli (None = free summand)."""
        cols = []
        n = len(moduli)
        z = Poly.zero(field, ring)
        for i, d in enumerate(moduli):
            if d is not None:
                col = [z] * n
                col[i] = d
                cols.append(col)
        rel = RingMatrix(field, ring, n, len(cols), [[c[i] for c in cols] for i in range(n)])
        return cls(ring, n, rel)

    @classmethod
    def zero(cls, field, ring):
        return cls(ring, 0, RingMatrix(field, ring, 0, 0))

    def direct_sum(self, other):
        return FPModule(self.ring, self.ngens + other.ngens, self.relations.block_diag(other.relations))

    @cached_property
    def normal(self) -> "NormalForm":
        return normal_form(self)

    def is_zero(self) -> bool:
        return not self.normal.moduli

    def identity(self) -> "ModuleMorphism":
        return ModuleMorphism(self, self, RingMatrix.identity(self.field, self.ring, self.ngens), check=False)

    def __repr__(self):
        return "FPModule[%s](%d gens, %d relations)" % (self.ring, self.ngens, self.relations.cols)


@dataclass
class NormalForm:
    """Isomorphism of a module with a direct sum of cyclic modules.

    ``to_normal`` (k x g) maps generator coordinates to normal coordinates and
    ``from_normal`` (g x k) goes back; moduli[i] is None for a free summand."""

    ring: str
    moduli: list
    to_normal: RingMatrix
    from_normal: RingMatrix

    def reduce_vector(self, vec):
        return [reduce_mod(h, d) for h, d in zip(vec, self.moduli)]

    @property
    def free_rank(self):
        return sum(1 for d in self.moduli if d is None)


def _is_column_monomial(rel: RingMatrix) -> bool:
    return all(sum(1 for i in range(rel.rows) if rel.e[i][j].c) <= 1 for j in range(rel.cols))


def normal_form(m: FPModule) -> NormalForm:
    field, ring, g = m.field, m.ring, m.ngens
    rel = m.relations
    if _is_column_monomial(rel):
        ideal = [None] * g
        for j in range(rel.cols):
            for i in range(g):
                a = rel.e[i][j]
                if a.c:
                    ideal[i] = a if ideal[i] is None else _gcd_ring(ideal[i], a)
        keep, moduli = [], []
        for i, d in enumerate(ideal):
            if d is None:
                keep.append(i)
                moduli.append(None)
            else:
                d = _normalise_modulus(d)
                if not d.is_unit():
                    keep.append(i)
                    moduli.append(d)
        ident = RingMatrix.identity(field, ring, g)
        return NormalForm(ring, moduli, ident.submatrix(keep, range(g)), ident.submatrix(range(g), keep))
    S, U, V, Ui = smith_normal_form_full(rel)
    keep, moduli = [], []
    for i in range(g):
        d = S.e[i][i] if i < min(S.rows, S.cols) else Poly.zero(field, ring)
        if not d.c:
            keep.append(i)
            moduli.append(None)
        elif not d.is_unit():
            keep.append(i)
            moduli.append(d)
    return NormalForm(ring, moduli, U.submatrix(keep, range(g)), Ui.submatrix(range(g), keep))


def _gcd_ring(a: Poly, b: Poly) -> Poly:
    if a.ring == LAURENT:
        return gcd(a.strip_x(), b.strip_x())
    return gcd(a, b)


# -- decomposition --------------------------------------------------------------

@dataclass(frozen=True)
class CyclicDecomposition:
    free_rank: int
    invariant_factors: tuple = ()

    def __post_init__(self):
        facs = self.invariant_factors
        for a, b in zip(facs, facs[1:]):
            if not a.divides(b):
                raise ValueError("invariant factors must form a divisibility chain")
        if any(d.is_unit() for d in facs):
            raise ValueError("unit invariant factor")

    def __str__(self):
        parts = ["R^%d" % self.free_rank] if self.free_rank else []
        parts += ["R/(%s)" % d for d in self.invariant_factors]
        return " + ".join(parts) or "0"


def decompose_module(m: FPModule) -> CyclicDecomposition:
    """R^r + R/(d1) + ... + R/(ds) with d1 | d2 | ... monic nonunits."""
    rel = m.relations
    if m.ngens == 0:
        return CyclicDecomposition(0, ())
    S, _, _, _ = smith_normal_form_full(rel)
    facs, rank = [], 0
    for i in range(min(S.rows, S.cols)):
        d = S.e[i][i]
        if not d.c:
            break
        rank += 1
        if not d.is_unit():
            facs.append(_normalise_modulus(d))
    return CyclicDecomposition(m.ngens - rank, tuple(facs))


# -- morphisms -------------------------------------------------------------------

class ModuleMorphism:
    def __init__(self, source: FPModule, target: FPModule, matrix: RingMatrix, check: bool = True):
        if matrix.rows != target.ngens or matrix.cols != source.ngens:
            raise MorphismError("morphism matrix has shape %dx%d, expected %dx%d"
                                % (matrix.rows, matrix.cols, target.ngens, source.ngens))
        self.source = source
        self.target = target
        self.matrix = matrix
        if check and not self.is_well_defined():
            raise MorphismError("matrix does not map relations into relations")

    def is_well_defined(self) -> bool:
        img = self.matrix @ self.source.relations
        if img.cols == 0 or img.is_zero():
            return True
        if self.target.relations.cols == 0:
            return False
        return solve_linear(self.target.relations, img).solvable

    def __matmul__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        return ModuleMorphism(other.source, self.target, self.matrix @ other.matrix, check=False)

    def __add__(self, other):
        return ModuleMorphism(self.source, self.target, self.matrix + other.matrix, check=False)

    def __sub__(self, other):
        return ModuleMorphism(self.source, self.target, self.matrix - other.matrix, check=False)

    def scale(self, c):
        return ModuleMorphism(self.source, self.target, self.matrix.scale(c), check=False)

    def normal_matrix(self):
        """Matrix in normal coordinates, entries reduced modulo target moduli."""
        ns, nt = self.source.normal, self.target.normal
        M = nt.to_normal @ self.matrix @ ns.from_normal
        return [[reduce_mod(M.e[i][j], nt.moduli[i]) for j in range(M.cols)] for i in range(M.rows)]

    def is_zero(self) -> bool:
        return all(not h.c for row in self.normal_matrix() for h in row)

    def equals(self, other) -> bool:
        return (self - other).is_zero()

    # kernel, image, cokernel ---------------------------------------------------
    def _kernel_generators(self) -> RingMatrix:
        F, RN = self.matrix, self.target.relations
        A = F.hstack(RN) if RN.cols else F
        Z = nullspace(A)
        return Z.submatrix(range(self.source.ngens), range(Z.cols))

    def kernel(self):
        """(kernel module, inclusion morphism into the source)."""
        K0 = self._kernel_generators()
        RM = self.source.relations
        k = K0.cols
        if k == 0:
            ker = FPModule(self.source.ring, 0, RingMatrix(self.source.field, self.source.ring, 0, 0))
            return ker, ModuleMorphism(ker, self.source, RingMatrix(self.source.field, self.source.ring,
                                                                    self.source.ngens, 0), check=False)
        A = K0.hstack(RM) if RM.cols else K0
        Z = nullspace(A)
        rel = Z.submatrix(range(k), range(Z.cols))
        ker = FPModule(self.source.ring, k, rel)
        return ker, ModuleMorphism(ker, self.source, K0, check=False)

    def image(self):
        """(image module presented on the source generators, inclusion into target)."""
        K0 = self._kernel_generators()
        im = FPModule(self.source.ring, self.source.ngens, K0)
        return im, ModuleMorphism(im, self.target, self.matrix, check=False)

    def cokernel(self):
        """(cokernel module on the target generators, projection from target)."""
        RN = self.target.relations
        rel = RN.hstack(self.matrix) if RN.cols else self.matrix
        co = FPModule(self.target.ring, self.target.ngens, rel)
        proj = ModuleMorphism(self.target, co, RingMatrix.identity(self.target.field, self.target.ring,
                                                                   self.target.ngens), check=False)
        return co, proj

    def is_injective(self) -> bool:
        K0 = self._kernel_generators()
        if K0.cols == 0 or K0.is_zero():
            return True
        RM = self.source.relations
        if RM.cols == 0:
            return False
        return solve_linear(RM, K0).solvable

    def is_surjective(self) -> bool:
        return self.cokernel()[0].is_zero()

    def __repr__(self):
        return "ModuleMorphism(%r -> %r, %r)" % (self.source, self.target, self.matrix)


# -- Hom ---------------------------------------------------------------------------

class HomModule:
    """Hom_R(M, N) as a direct sum of cyclic modules with generator morphisms."""

    def __init__(self, m: FPModule, n: FPModule):
        if m.ring != n.ring:
            raise ValueError("Hom between modules over different rings")
        self.source, self.target = m, n
        ring, field = m.ring, m.field
        nm, nn = m.normal, n.normal
        self.pairs = []      # (i target summand, j source summand)
        self.factors = []    # generator entry
        self.moduli = []
        for i, e in enumerate(nn.moduli):
            for j, d in enumerate(nm.moduli):
                if d is None and e is None:
                    self.pairs.append((i, j)); self.factors.append(Poly.const(field, ring, 1)); self.moduli.append(None)
                elif d is None:
                    self.pairs.append((i, j)); self.factors.append(Poly.const(field, ring, 1)); self.moduli.append(e)
                elif e is None:
                    continue
                else:
                    g = _gcd_ring(d, e)
                    if g.is_unit():
                        continue
                    q, r = e.divmod(g)
                    self.pairs.append((i, j)); self.factors.append(q); self.moduli.append(g)
        self.module = FPModule.diagonal(field, ring, self.moduli)

    def __len__(self):
        return len(self.pairs)

    def normal_generator(self, idx, coeff=None):
        """Generator idx (times coeff) as a matrix in normal coordinates."""
        nm, nn = self.source.normal, self.target.normal
        ring, field = self.source.ring, self.source.field
        i, j = self.pairs[idx]
        M = [[Poly.zero(field, ring)] * len(nm.moduli) for _ in range(len(nn.moduli))]
        f = self.factors[idx]
        M[i][j] = f if coeff is None else reduce_mod(f * coeff, nn.moduli[i])
        return RingMatrix(field, ring, len(nn.moduli), len(nm.moduli), M)

    def morphism(self, coords) -> ModuleMorphism:
        """Morphism with the given coordinates (one ring element per generator)."""
        nm, nn = self.source.normal, self.target.normal
        ring, field = self.source.ring, self.source.field
        N = RingMatrix(field, ring, len(nn.moduli), len(nm.moduli))
        for idx, c in enumerate(coords):
            if c.c:
                N = N + self.normal_generator(idx, c)
        raw = nn.from_normal @ N @ nm.to_normal
        return ModuleMorphism(self.source, self.target, raw, check=False)

    def generators(self):
        ring, field = self.source.ring, self.source.field
        one = Poly.const(field, ring, 1)
        z = Poly.zero(field, ring)
        return [self.morphism([one if k == idx else z for k in range(len(self))]) for idx in range(len(self))]

    def coordinates(self, f: ModuleMorphism):
        """Coordinates of f, each reduced modulo its generator's annihilator."""
        N = f.normal_matrix()
        out = []
        for (i, j), fac, mod in zip(self.pairs, self.factors, self.moduli):
            h = N[i][j]
            if h.c:
                q, r = _divide_exact(h, fac)
                if r:
                    raise MorphismError("entry not a multiple of the Hom generator")
                h = reduce_mod(q, mod)
            out.append(h)
        # torsion-to-free and coprime entries must vanish
        covered = set(self.pairs)
        for i, row in enumerate(N):
            for j, h in enumerate(row):
                if (i, j) not in covered and h.c:
                    raise MorphismError("morphism has a component outside Hom")
        return out

    def is_finite_dimensional(self) -> bool:
        return all(d is not None for d in self.moduli)

    def k_dimension(self):
        if not self.is_finite_dimensional():
            return None
        return sum(d.degree for d in self.moduli)

    def k_basis(self):
        """Explicit k-basis of morphisms when Hom is finite dimensional."""
        if not self.is_finite_dimensional():
            return None
        ring, field = self.source.ring, self.source.field
        z = Poly.zero(field, ring)
        basis = []
        for idx, d in enumerate(self.moduli):
            for e in range(d.degree):
                coords = [z] * len(self)
                coords[idx] = Poly.monomial(field, ring, e)
                basis.append(self.morphism(coords))
        return basis


def _divide_exact(h: Poly, f: Poly):
    if f.is_const():
        return h * (h.field.one / f.c[0]), False
    if h.ring == LAURENT:
        g = h.like(0, h.c)
        e = f.like(0, f.c)
        q, r = g.divmod(e)
        return q.shift(h.low - f.low), bool(r.c)
    q, r = h.divmod(f)
    return q, bool(r.c)


def hom_module(m: FPModule, n: FPModule) -> HomModule:
    return HomModule(m, n)


# -- tensor, base change -------------------------------------------------------------

def tensor_module(m: FPModule, n: FPModule) -> FPModule:
    if m.ring != n.ring:
        raise ValueError("tensor of modules over different rings")
    field, ring = m.field, m.ring
    Im = RingMatrix.identity(field, ring, m.ngens)
    In = RingMatrix.identity(field, ring, n.ngens)
    parts = []
    if m.relations.cols:
        parts.append(m.relations.kron(In))
    if n.relations.cols:
        parts.append(Im.kron(n.relations))
    g = m.ngens * n.ngens
    rel = RingMatrix(field, ring, g, 0)
    for p in parts:
        rel = rel.hstack(p)
    return FPModule(ring, g, rel)


def tensor_morphism(f: ModuleMorphism, g: ModuleMorphism) -> ModuleMorphism:
    return ModuleMorphism(tensor_module(f.source, g.source), tensor_module(f.target, g.target),
                          f.matrix.kron(g.matrix), check=False)


def base_change_matrix(mat: RingMatrix) -> RingMatrix:
    if mat.ring == POLY_U:
        return mat.to_ring(LAURENT)
    if mat.ring == POLY_V:
        return mat.invert_variable()
    if mat.ring == LAURENT:
        return mat
    raise ValueError("unsupported ring %r" % mat.ring)


def base_change_laurent(m: FPModule):
    """M tensor k[x, 1/x] (with y -> 1/x for k[y]-modules).

    Returns the module and the unit map data: the generator correspondence,
    which is the identity on generators."""
    rel = base_change_matrix(m.relations)
    mod = FPModule(LAURENT, m.ngens, rel)
    return mod, RingMatrix.identity(m.field, LAURENT, m.ngens)


def base_change_morphism(f: ModuleMorphism) -> ModuleMorphism:
    return ModuleMorphism(base_change_laurent(f.source)[0], base_change_laurent(f.target)[0],
                          base_change_matrix(f.matrix), check=False)


# -- splitting --------------------------------------------------------------------

@dataclass
class SplitResult:
    split: bool
    retraction: ModuleMorphism | None = None

    def __bool__(self):
        return self.split


def is_split_mono(f: ModuleMorphism) -> SplitResult:
    """Decide whether the monomorphism f admits a retraction r (r f = id)."""
    if not f.is_injective():
        raise NotAMonomorphism("not a monomorphism")
    A, B = f.source, f.target
    ring, field = A.ring, A.field
    if A.is_zero():
        return SplitResult(True, ModuleMorphism(B, A, RingMatrix(field, ring, A.ngens, B.ngens), check=False))
    hom_ba = HomModule(B, A)
    end_a = HomModule(A, A)
    gens = hom_ba.generators()
    target = end_a.coordinates(A.identity())
    cols = [end_a.coordinates(g @ f) for g in gens]
    n = len(end_a)
    extra = [k for k in range(n) if end_a.moduli[k] is not None]
    ncols = len(cols) + len(extra)
    if ncols == 0:
        return SplitResult(False)
    z = Poly.zero(field, ring)
    rows = []
    for r in range(n):
        row = [c[r] for c in cols]
        row += [end_a.moduli[k] if k == r else z for k in extra]
        rows.append(row)
    sol = solve_linear(RingMatrix(field, ring, n, ncols, rows),
                       RingMatrix(field, ring, n, 1, [[t] for t in target]))
    if not sol.solvable:
        return SplitResult(False)
    coeffs = [sol.particular.e[k][0] for k in range(len(cols))]
    r = ModuleMorphism(B, A, RingMatrix(field, ring, A.ngens, B.ngens), check=False)
    for c, g in zip(coeffs, gens):
        if c.c:
            r = r + ModuleMorphism(B, A, g.matrix.map(lambda a: a * c), check=False)
    assert (r @ f).equals(A.identity())
    return SplitResult(True, r)
