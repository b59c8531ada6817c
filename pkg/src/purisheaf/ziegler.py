"""A symbolic model of the Ziegler spectrum of quasicoherent sheaves on P^1.

Points are LB(n), Tors(pt, m), Prufer(pt), Adic(pt) and Generic.  A
``PointSet`` describes the sets the closure operation needs: line bundles as a
finite set plus at most one lower and one upper ray, torsion points as a
finite set plus whole tubes T(pt, *) (or every torsion point), Prufer and adic
points as finite sets or everything, and the generic point.

Closure rules:
  * a line bundle family unbounded above gains every adic point and Generic;
    families bounded above are closed;
  * a whole tube T(pt, *) gains Prufer(pt), Adic(pt) and Generic; every
    torsion point at once gains every Prufer and adic point and Generic;
  * a Prufer or adic point gains Generic;
  * finite sets of torsion points and Generic are closed.
The torsion, Prufer, adic and generic rules are those of the Ziegler spectrum
of a Dedekind domain; mixed descriptions are closed part by part.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace

from .points import LB, Adic, Generic, Prufer, Tors, sorted_labels

ALL = "all"


@dataclass(frozen=True)
class Attributes:
    g_pure_injective: bool
    is_line_bundle: bool
    isolated: bool
    closed_singleton: bool
    sigma_c_pure_injective: bool | None = None  # catalogue entry, not computed

    def as_dict(self):
        return {"gPureInjective": self.g_pure_injective, "isLineBundle": self.is_line_bundle,
                "isolated": self.isolated, "closedSingleton": self.closed_singleton,
                "sigmaCPureInjective": self.sigma_c_pure_injective}


def attributes(p) -> Attributes:
    if isinstance(p, LB):
        return Attributes(False, True, True, True, True)
    if isinstance(p, Tors):
        return Attributes(True, False, True, True)
    if isinstance(p, (Prufer, Adic)):
        return Attributes(True, False, False, False)
    if isinstance(p, Generic):
        return Attributes(True, False, False, True)
    raise TypeError("not a Ziegler point: %r" % (p,))


@dataclass(frozen=True)
class PointSet:
    lb: frozenset = frozenset()
    lb_upto: int | None = None      # all LB(n) with n <= lb_upto
    lb_from: int | None = None      # all LB(n) with n >= lb_from
    tors: frozenset = frozenset()   # finite set of Tors labels
    tubes: frozenset = frozenset()  # points pt with every T(pt, m)
    all_tors: bool = False
    prufer: object = frozenset()    # frozenset of points or ALL
    adic: object = frozenset()
    generic: bool = False

    # -- canonical form ---------------------------------------------------------------
    def canonical(self) -> "PointSet":
        lb, lo, hi = set(self.lb), self.lb_upto, self.lb_from
        changed = True
        while changed:
            changed = False
            if lo is not None and lo + 1 in lb:
                lo += 1; lb.discard(lo); changed = True
            if hi is not None and hi - 1 in lb:
                hi -= 1; lb.discard(hi); changed = True
        if lo is not None:
            lb = {n for n in lb if n > lo}
        if hi is not None:
            lb = {n for n in lb if n < hi}
        all_lb = lo is not None and hi is not None and hi <= lo + 1
        if all_lb:
            lb = set()
        tubes = frozenset() if self.all_tors else self.tubes
        tors = frozenset() if self.all_tors else frozenset(t for t in self.tors if t.pt not in tubes)
        prufer = self.prufer if self.prufer == ALL else frozenset(self.prufer)
        adic = self.adic if self.adic == ALL else frozenset(self.adic)
        return PointSet(frozenset(lb), lo, hi, tors, tubes, self.all_tors, prufer, adic, self.generic)

    @property
    def all_lb(self) -> bool:
        return self.lb_upto is not None and self.lb_from is not None and self.lb_from <= self.lb_upto + 1

    def lb_bounded_above(self) -> bool:
        return self.lb_from is None

    # -- membership ---------------------------------------------------------------------
    def __contains__(self, p) -> bool:
        if isinstance(p, LB):
            return (p.n in self.lb or (self.lb_upto is not None and p.n <= self.lb_upto)
                    or (self.lb_from is not None and p.n >= self.lb_from))
        if isinstance(p, Tors):
            return self.all_tors or p.pt in self.tubes or p in self.tors
        if isinstance(p, Prufer):
            return self.prufer == ALL or p.pt in self.prufer
        if isinstance(p, Adic):
            return self.adic == ALL or p.pt in self.adic
        if isinstance(p, Generic):
            return self.generic
        raise TypeError("not a Ziegler point: %r" % (p,))

    def union(self, other: "PointSet") -> "PointSet":
        def join_set(a, b):
            return ALL if ALL in (a, b) else frozenset(a) | frozenset(b)

        def join_lo(a, b):
            return b if a is None else a if b is None else max(a, b)

        def join_hi(a, b):
            return b if a is None else a if b is None else min(a, b)
        return PointSet(self.lb | other.lb, join_lo(self.lb_upto, other.lb_upto),
                        join_hi(self.lb_from, other.lb_from), self.tors | other.tors,
                        self.tubes | other.tubes, self.all_tors or other.all_tors,
                        join_set(self.prufer, other.prufer), join_set(self.adic, other.adic),
                        self.generic or other.generic).canonical()

    def issubset(self, other: "PointSet") -> bool:
        return self.union(other) == other.canonical()

    def is_closed(self) -> bool:
        return closure(self) == self.canonical()

    def __str__(self):
        s = self.canonical()
        parts = []
        if s.all_lb:
            parts.append("LB(*)")
        else:
            if s.lb_upto is not None:
                parts.append("LB(<=%d)" % s.lb_upto)
            parts += [str(LB(n)) for n in sorted(s.lb)]
            if s.lb_from is not None:
                parts.append("LB(>=%d)" % s.lb_from)
        if s.all_tors:
            parts.append("T(*,*)")
        else:
            parts += [str(t) for t in sorted_labels(s.tors)]
            parts += ["T(%s,*)" % p for p in sorted(s.tubes)]
        for name, val in (("Prufer", s.prufer), ("Adic", s.adic)):
            if val == ALL:
                parts.append("%s(*)" % name)
            else:
                parts += ["%s(%s)" % (name, p) for p in sorted(val)]
        if s.generic:
            parts.append("Gen")
        return "{" + ", ".join(parts) + "}"


def point_set(points) -> PointSet:
    """The finite set of the given points."""
    lb, tors, pr, ad, gen = set(), set(), set(), set(), False
    for p in points:
        if isinstance(p, LB):
            lb.add(p.n)
        elif isinstance(p, Tors):
            tors.add(p)
        elif isinstance(p, Prufer):
            pr.add(p.pt)
        elif isinstance(p, Adic):
            ad.add(p.pt)
        elif isinstance(p, Generic):
            gen = True
        else:
            raise TypeError("not a Ziegler point: %r" % (p,))
    return PointSet(lb=frozenset(lb), tors=frozenset(tors), prufer=frozenset(pr), adic=frozenset(ad),
                    generic=gen).canonical()


def closure(s: PointSet) -> PointSet:
    s = s.canonical()
    prufer, adic, generic = s.prufer, s.adic, s.generic
    if s.lb_from is not None:                 # unbounded above
        adic, generic = ALL, True
    if s.all_tors:
        prufer, adic, generic = ALL, ALL, True
    elif s.tubes:
        if prufer != ALL:
            prufer = frozenset(prufer) | s.tubes
        if adic != ALL:
            adic = frozenset(adic) | s.tubes
        generic = True
    if prufer == ALL or adic == ALL or prufer or adic:
        generic = True
    return replace(s, prufer=prufer, adic=adic, generic=generic).canonical()


def geometric_part() -> PointSet:
    """Every non line bundle point; closed, and quasicompact as a Ziegler subset."""
    return PointSet(all_tors=True, prufer=ALL, adic=ALL, generic=True).canonical()


GEOMETRIC_PART_REPORT = {"closed": True, "quasicompact": True}


def coherent_zg_trace(F) -> PointSet:
    """The Ziegler points occurring as summands of a coherent sheaf."""
    from .decompose import decompose_sheaf
    return point_set(decompose_sheaf(F).labels)


def random_point_set(rng: random.Random, points) -> PointSet:
    """A random description over the given pool of closed points."""
    lb = frozenset(rng.sample(range(-5, 6), rng.randint(0, 3)))
    lo = rng.choice([None, None, rng.randint(-4, 4)])
    hi = rng.choice([None, None, rng.randint(-4, 4)])
    tors = frozenset(Tors(rng.choice(points), rng.randint(1, 3)) for _ in range(rng.randint(0, 3)))
    tubes = frozenset(rng.sample(points, rng.randint(0, 1)))
    all_tors = rng.random() < 0.1

    def pick():
        r = rng.random()
        if r < 0.1:
            return ALL
        return frozenset(rng.sample(points, rng.randint(0, 1))) if r < 0.5 else frozenset()
    return PointSet(lb, lo, hi, tors, tubes, all_tors, pick(), pick(), rng.random() < 0.2).canonical()
