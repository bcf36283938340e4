"""Exact calculus on the path groupoid through its basic compact open sets.

A cylinder Z(lam, mu) is the set of groupoid points (lam.z, d(lam)-d(mu), mu.z)
over all infinite tails z; it is the support of the generator s_lam s_mu*.
Open sets here are finite unions of cylinders, kept in a canonical form:
within each grade every cylinder is refined to the join of the left degrees,
where degree-matched cylinders are pairwise disjoint, so set equality reduces
to syntactic comparison after a common refinement.

Points are represented by ultimately periodic paths together with a shift
witness (p, q); membership, composition and inversion are all decided
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import degrees as dg
from .algebra import normal_form
from .errors import (
    DegreeOutOfRange,
    GraphMismatch,
    InvalidPoint,
    NotComposable,
    SourceMismatch,
)
from .pathspace import UPPath, compose, paths, segment, shift, up_path_equal
from .scalars import ZERO


@dataclass(frozen=True)
class Cylinder:
    """Z(left, right): the basic compact open set of grade d(left)-d(right)."""

    left: object
    right: object
    grade: tuple = field(init=False, compare=False, repr=False)
    sort_key: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.left.graph is not self.right.graph:
            raise GraphMismatch("cylinder sides live in different graphs")
        if self.left.source != self.right.source:
            raise SourceMismatch(
                f"Z({self.left},{self.right}): sides have sources "
                f"{self.left.source} and {self.right.source}"
            )
        object.__setattr__(self, "grade", dg.sub(self.left.degree, self.right.degree))
        object.__setattr__(
            self, "sort_key", (self.grade, self.left.sort_key, self.right.sort_key)
        )

    @property
    def graph(self):
        return self.left.graph

    def __str__(self):
        return f"Z({self.left.word()},{self.right.word()})"


def cylinder_of(gen):
    return Cylinder(gen.left, gen.right)


def refine(cyl, p):
    """Split Z(lam, mu) at left degree p >= d(lam) into disjoint pieces."""
    graph = cyl.graph
    p = dg.check(p, graph.rank)
    if not dg.leq(cyl.left.degree, p):
        raise DegreeOutOfRange(f"refinement degree {p} below left degree {cyl.left.degree}")
    out = [
        Cylinder(compose(cyl.left, rho), compose(cyl.right, rho))
        for rho in paths(graph, cyl.left.source, dg.sub(p, cyl.left.degree))
    ]
    return sorted(out, key=lambda c: c.sort_key)


class OpenSet:
    """A finite union of cylinders in per-grade canonical form."""

    __slots__ = ("graph", "blocks")

    def __init__(self, graph, cylinders=()):
        self.graph = graph
        groups = {}
        for c in cylinders:
            if c.graph is not graph:
                raise GraphMismatch("cylinder from a different graph")
            groups.setdefault(c.grade, []).append(c)
        blocks = {}
        for grade, cs in groups.items():
            p = cs[0].left.degree
            for c in cs[1:]:
                p = dg.join(p, c.left.degree)
            refined = set()
            for c in cs:
                refined.update(refine(c, p))
            blocks[grade] = (p, frozenset(refined))
        self.blocks = blocks

    @property
    def is_empty(self):
        return not self.blocks

    def grades(self):
        return sorted(self.blocks)

    def cylinders(self):
        out = []
        for grade in self.grades():
            out.extend(sorted(self.blocks[grade][1], key=lambda c: c.sort_key))
        return tuple(out)

    def union(self, other):
        if self.graph is not other.graph:
            raise GraphMismatch("open sets live in different graphs")
        return OpenSet(self.graph, self.cylinders() + other.cylinders())

    def __eq__(self, other):
        if not isinstance(other, OpenSet):
            return NotImplemented
        if self.graph is not other.graph:
            return False
        if set(self.blocks) != set(other.blocks):
            return False
        for grade in self.blocks:
            p1, cs1 = self.blocks[grade]
            p2, cs2 = other.blocks[grade]
            p = dg.join(p1, p2)
            r1 = set()
            for c in cs1:
                r1.update(refine(c, p))
            r2 = set()
            for c in cs2:
                r2.update(refine(c, p))
            if r1 != r2:
                return False
        return True

    __hash__ = None

    def __str__(self):
        if self.is_empty:
            return "{}"
        return "{" + ", ".join(str(c) for c in self.cylinders()) + "}"

    def __repr__(self):
        return f"<OpenSet {self}>"


def empty_set(graph):
    return OpenSet(graph)


def intersect(c1, c2):
    """Exact intersection of two cylinders as an open set."""
    if c1.graph is not c2.graph:
        raise GraphMismatch("cylinders live in different graphs")
    if c1.grade != c2.grade:
        return empty_set(c1.graph)
    p = dg.join(c1.left.degree, c2.left.degree)
    common = set(refine(c1, p)) & set(refine(c2, p))
    return OpenSet(c1.graph, common)


def subset(cyl, open_set):
    """Whether Z(lam, mu) is contained in the union."""
    block = open_set.blocks.get(cyl.grade)
    if block is None:
        return False
    p0, cs = block
    p = dg.join(cyl.left.degree, p0)
    target = set()
    for c in cs:
        target.update(refine(c, p))
    return all(piece in target for piece in refine(cyl, p))


def support(a):
    """The open set where the element is nonzero; exact through the normal form."""
    nf = normal_form(a)
    cyls = []
    for _, (_, coeffs) in nf.blocks.items():
        cyls.extend(Cylinder(g.left, g.right) for g in coeffs)
    return OpenSet(a.graph, cyls)


def grade_filter(open_set, m):
    m = dg.check(m, open_set.graph.rank, signed=True)
    block = open_set.blocks.get(m)
    if block is None:
        return empty_set(open_set.graph)
    return OpenSet(open_set.graph, block[1])


@dataclass(frozen=True)
class GroupoidPoint:
    """(x, n, y) with shift witness (p, q): sigma^p x = sigma^q y and n = p - q."""

    x: UPPath
    n: tuple
    y: UPPath
    p: tuple
    q: tuple

    @property
    def graph(self):
        return self.x.graph

    def __str__(self):
        return f"({self.x}, {dg.fmt(self.n)}, {self.y})"


def point(x, n, y, p, q, verify=True):
    k = x.graph.rank
    n = dg.check(n, k, signed=True)
    p = dg.check(p, k)
    q = dg.check(q, k)
    if dg.sub(p, q) != n:
        raise InvalidPoint(f"witness ({p},{q}) does not realize grade {n}")
    if verify and not up_path_equal(shift(x, p), shift(y, q)):
        raise InvalidPoint(f"sigma^{p} x != sigma^{q} y; not a groupoid point")
    return GroupoidPoint(x, n, y, p, q)


def tail_point(lam, mu, z):
    """The point (lam.z, d(lam)-d(mu), mu.z) for a shared tail z."""
    from .pathspace import concatenate

    x = concatenate(lam, z)
    y = concatenate(mu, z)
    return GroupoidPoint(x, dg.sub(lam.degree, mu.degree), y, lam.degree, mu.degree)


def unit_point(x):
    z = dg.zero(x.graph.rank)
    return GroupoidPoint(x, z, x, z, z)


def point_in(pt, cyl):
    """Exact membership of a point in a basic open set."""
    if pt.graph is not cyl.graph:
        raise GraphMismatch("point and cylinder live in different graphs")
    if pt.n != cyl.grade:
        return False
    zero = dg.zero(pt.graph.rank)
    if segment(pt.x, zero, cyl.left.degree) != cyl.left:
        return False
    if segment(pt.y, zero, cyl.right.degree) != cyl.right:
        return False
    return up_path_equal(shift(pt.x, cyl.left.degree), shift(pt.y, cyl.right.degree))


def compose_points(p1, p2):
    """(x,n,y)(y,m,z) = (x, n+m, z)."""
    if p1.graph is not p2.graph:
        raise GraphMismatch("points live in different graphs")
    if not up_path_equal(p1.y, p2.x):
        raise NotComposable("points are not composable: middle paths differ")
    return point(
        p1.x,
        dg.add(p1.n, p2.n),
        p2.y,
        dg.add(p1.p, p2.p),
        dg.add(p1.q, p2.q),
        verify=False,
    )


def invert_point(pt):
    """(x,n,y)^{-1} = (y, -n, x)."""
    return GroupoidPoint(pt.y, dg.neg(pt.n), pt.x, pt.q, pt.p)


def evaluate(a, pt):
    """The exact value of an element at a groupoid point.

    The element is literally a combination of characteristic functions, so the
    value is the sum of the coefficients of the cylinders containing the point.
    """
    if a.graph is not pt.graph:
        raise GraphMismatch("element and point live in different graphs")
    total = ZERO
    for g, c in a.terms.items():
        if point_in(pt, Cylinder(g.left, g.right)):
            total = total + c
    return total
