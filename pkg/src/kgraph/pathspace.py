"""Paths in color-sorted normal form, and ultimately periodic infinite paths.

A path is a composable edge word e1...em with range r(e1) and source s(em);
composition lam*mu is defined when r(mu) == s(lam), so initial segments sit on
the left.  The normal form keeps edge colors non-decreasing left to right;
sorting rewrites out-of-order pairs through the squares, and every rewrite
removes one color inversion, so sorting terminates.

Infinite paths are represented as ultimately periodic points prefix.cycle^inf
where the cycle has strictly positive degree in every coordinate; these are
exactly the finitely representable points of the infinite path space, and
equality between two of them is decidable by comparing long enough initial
segments.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import degrees as dg
from .errors import (
    BadInterval,
    BoundExceeded,
    DanglingVertexReference,
    DegreeOutOfRange,
    GraphMismatch,
    KGraphError,
    NotComposable,
)
from .graphs import KGraph


@dataclass(frozen=True)
class Path:
    graph: KGraph = field(compare=False, repr=False)
    range: str
    edges: tuple
    degree: tuple = field(init=False, compare=False)
    source: str = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        k = self.graph.rank
        deg = [0] * k
        cur = self.range
        for eid in self.edges:
            e = self.graph.edge(eid)
            if e.range != cur:
                raise NotComposable(
                    f"edge {eid} has range {e.range}, expected {cur} in word {self.edges}"
                )
            deg[e.color - 1] += 1
            cur = e.source
        object.__setattr__(self, "degree", tuple(deg))
        object.__setattr__(self, "source", cur)

    @property
    def is_vertex(self):
        return not self.edges

    @property
    def sort_key(self):
        return (self.degree, self.edges, self.range)

    def word(self):
        return ".".join(self.edges) if self.edges else self.range

    def __str__(self):
        return self.word()


def vertex_path(graph, v):
    if not graph.is_vertex(v):
        raise DanglingVertexReference(f"unknown vertex {v!r}")
    return Path(graph, v, ())


def _check_word(graph, word):
    cur = None
    for eid in word:
        e = graph.edge(eid)
        if cur is not None and e.range != cur:
            raise NotComposable(f"edges not composable at {eid} in word {tuple(word)}")
        cur = e.source


def _normalize(graph, word):
    """Sort a composable edge word by color using the squares (leftmost first)."""
    w = list(word)
    i = 0
    while i + 1 < len(w):
        if graph.color(w[i]) > graph.color(w[i + 1]):
            w[i], w[i + 1] = graph.sort_pair(w[i], w[i + 1])
            if i:
                i -= 1
        else:
            i += 1
    return tuple(w)


def make_path(graph, word, at=None):
    """Build the normal-form path of a composable edge word.

    ``at`` names the vertex for the empty word.
    """
    word = tuple(word)
    if not word:
        if at is None:
            raise KGraphError("empty word needs an explicit vertex")
        return vertex_path(graph, at)
    _check_word(graph, word)
    sorted_word = _normalize(graph, word)
    return Path(graph, graph.edge(sorted_word[0]).range, sorted_word)


def compose(lam, mu):
    """Path composition lam*mu, defined when r(mu) == s(lam)."""
    if lam.graph is not mu.graph:
        raise GraphMismatch("paths live in different graphs")
    if mu.range != lam.source:
        raise NotComposable(f"r({mu}) = {mu.range} != s({lam}) = {lam.source}")
    if lam.is_vertex:
        return mu
    if mu.is_vertex:
        return lam
    return Path(lam.graph, lam.range, _normalize(lam.graph, lam.edges + mu.edges))


def factorize(lam, m):
    """The unique split lam = mu*nu with d(mu) = m.

    Pulls edges to the front one at a time, in color order, commuting each
    past earlier edges through the squares.  On a validated graph the leftmost
    edge of each color is the forced choice.
    """
    graph = lam.graph
    m = dg.check(m, graph.rank)
    if not dg.leq(m, lam.degree):
        raise DegreeOutOfRange(f"split {m} exceeds path degree {lam.degree}")
    w = list(lam.edges)
    head = []
    for color in range(1, graph.rank + 1):
        for _ in range(m[color - 1]):
            idx = next(t for t, eid in enumerate(w) if graph.color(eid) == color)
            while idx > 0:
                g = w[idx - 1]
                if graph.color(g) < color:
                    w[idx - 1], w[idx] = graph.unsort_pair(g, w[idx])
                else:
                    w[idx - 1], w[idx] = graph.sort_pair(g, w[idx])
                idx -= 1
            head.append(w.pop(0))
    mu = Path(graph, lam.range, tuple(head)) if head else vertex_path(graph, lam.range)
    nu = make_path(graph, tuple(w), at=mu.source)
    return mu, nu


def paths(graph, v, n):
    """The complete set of degree-n paths with range v, in normal form.

    Enumerates color-sorted composable words directly; on a validated graph
    those are exactly the normal forms.
    """
    n = dg.check(n, graph.rank)
    if graph.strict and (
        graph.validated_bound is None or not dg.leq(n, graph.validated_bound)
    ):
        raise BoundExceeded(f"degree {n} beyond validated bound {graph.validated_bound}")
    key = (v, n)
    cached = graph._path_cache.get(key)
    if cached is not None:
        return cached
    if not graph.is_vertex(v):
        raise DanglingVertexReference(f"unknown vertex {v!r}")
    partial = [(v, ())]
    for color in range(1, graph.rank + 1):
        for _ in range(n[color - 1]):
            partial = [
                (e.source, word + (e.eid,))
                for (cur, word) in partial
                for e in graph.in_edges(cur, color)
            ]
    result = tuple(
        sorted((Path(graph, v, word) for (_, word) in partial), key=lambda p: p.sort_key)
    )
    graph._path_cache[key] = result
    return result


def paths_by_source(graph, u, n):
    """All degree-n paths with source u, over every range vertex."""
    key = (u, n)
    cached = graph._source_cache.get(key)
    if cached is not None:
        return cached
    result = tuple(
        p for v in graph.vertices for p in paths(graph, v, n) if p.source == u
    )
    graph._source_cache[key] = result
    return result


def all_paths_upto(graph, bound):
    """Every path of degree <= bound, grouped deterministically."""
    for n in dg.box(bound):
        for v in graph.vertices:
            yield from paths(graph, v, n)


@dataclass(frozen=True)
class UPPath:
    """Ultimately periodic infinite path prefix.cycle.cycle..."""

    prefix: Path
    cycle: Path

    def __post_init__(self):
        if self.prefix.graph is not self.cycle.graph:
            raise GraphMismatch("prefix and cycle live in different graphs")
        if self.cycle.range != self.cycle.source or self.cycle.range != self.prefix.source:
            raise NotComposable(
                f"cycle must loop at the prefix source: r(cycle)={self.cycle.range}, "
                f"s(cycle)={self.cycle.source}, s(prefix)={self.prefix.source}"
            )
        if not all(e > 0 for e in self.cycle.degree):
            raise DegreeOutOfRange(
                f"cycle degree {self.cycle.degree} must be strictly positive in every coordinate"
            )

    @property
    def graph(self):
        return self.prefix.graph

    @property
    def base(self):
        """The vertex x(0)."""
        return self.prefix.range

    def __str__(self):
        return f"{self.prefix.word()}({self.cycle.word()})^inf"


def _covering_path(x, n):
    """The finite path x(0, q) for the smallest unrolling with q >= n."""
    dp, dc = x.prefix.degree, x.cycle.degree
    t = 0
    for need, have, step in zip(n, dp, dc):
        if need > have:
            t = max(t, -(-(need - have) // step))
    word = x.prefix.edges + x.cycle.edges * t
    return make_path(x.graph, word, at=x.base)


def segment(x, m, n):
    """The finite path x(m, n) for m <= n in N^k."""
    k = x.graph.rank
    m = dg.check(m, k)
    n = dg.check(n, k)
    if not dg.leq(m, n):
        raise BadInterval(f"segment needs m <= n, got {m} and {n}")
    full = _covering_path(x, n)
    _, rest = factorize(full, m)
    mid, _ = factorize(rest, dg.sub(n, m))
    return mid


def shift(x, p):
    """The shifted path sigma^p(x), with the same cycle."""
    p = dg.check(p, x.graph.rank)
    dp, dc = x.prefix.degree, x.cycle.degree
    t = 0
    for need, have, step in zip(p, dp, dc):
        if need > have:
            t = max(t, -(-(need - have) // step))
    q = dg.add(dp, dg.scale(dc, t))
    return UPPath(segment(x, p, q), x.cycle)


def concatenate(lam, x):
    """The unique y with y(0, d(lam)) = lam and sigma^{d(lam)} y = x."""
    if lam.graph is not x.graph:
        raise GraphMismatch("path and infinite path live in different graphs")
    if x.base != lam.source:
        raise NotComposable(f"x(0) = {x.base} != s({lam}) = {lam.source}")
    return UPPath(compose(lam, x.prefix), x.cycle)


def up_path_equal(x, y):
    """Exact point equality in the infinite path space.

    Comparing out to the prefix join plus twice the cycle join is enough:
    past the prefixes both tails are periodic, and two periodic tails that
    agree over a window of both period lengths coincide.
    """
    if x.graph is not y.graph:
        raise GraphMismatch("points live in different graphs")
    n = dg.add(
        dg.join(x.prefix.degree, y.prefix.degree),
        dg.scale(dg.join(x.cycle.degree, y.cycle.degree), 2),
    )
    z = dg.zero(x.graph.rank)
    return segment(x, z, n) == segment(y, z, n)


def canonical_up_path(graph, v):
    """A deterministic ultimately periodic point with x(0) = v.

    Walks one edge of each color per step (always the first in id order), and
    closes the cycle at the first repeated vertex.
    """
    cur = v
    visited = [v]
    words = []
    while True:
        step = []
        for color in range(1, graph.rank + 1):
            es = graph.in_edges(cur, color)
            if not es:
                raise KGraphError(f"vertex {cur} receives no color-{color} edge")
            step.append(es[0].eid)
            cur = es[0].source
        words.append(tuple(step))
        if cur in visited:
            start = visited.index(cur)
            break
        visited.append(cur)
    prefix_word = tuple(eid for w in words[:start] for eid in w)
    cycle_word = tuple(eid for w in words[start:] for eid in w)
    prefix = make_path(graph, prefix_word, at=v)
    cycle = make_path(graph, cycle_word, at=visited[start])
    return UPPath(prefix, cycle)
