"""Finite rank-k graph presentations: colored skeletons with commuting squares.

A rank-k graph is presented by a finite set of vertices, edges carrying a
color in 1..k, and squares.  A square asserts the path identity
``e.f == f2.e2`` where e, e2 have some color i and f, f2 some color j > i;
the squares are the finite data realizing unique factorization of mixed
two-edge paths.  ``validate`` checks, up to a degree bound, that the
presentation really is a rank-k graph: every vertex receives an edge of every
color, the square relation is a bijection between mixed composable pairs in
both orders, and every path splits uniquely at every intermediate degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import degrees as dg
from .errors import (
    BoundExceeded,
    ColorOutOfRange,
    DanglingVertexReference,
    DuplicateId,
    KGraphError,
    MalformedSquare,
)

_FAILURE_CAP = 20


@dataclass(frozen=True)
class Edge:
    eid: str
    color: int
    source: str
    range: str


@dataclass(frozen=True)
class Square:
    """Path identity e.f == f2.e2 with color(e) == color(e2) < color(f) == color(f2)."""

    e: str
    f: str
    f2: str
    e2: str


class KGraph:
    """A validated-on-demand rank-k graph presentation.

    Values are immutable after construction except for the validation stamp;
    all derived lookup tables are built once.  Use :func:`build_kgraph`.
    """

    def __init__(self, rank, vertices, edges, squares, strict=False):
        self.rank = rank
        self.vertices = tuple(sorted(vertices))
        self.edges = {e.eid: e for e in sorted(edges, key=lambda e: e.eid)}
        self.squares = tuple(sorted(squares, key=lambda s: (s.e, s.f)))
        self.strict = strict
        self.validated_bound = None

        self._vset = set(self.vertices)
        self._in = {}
        for v in self.vertices:
            for c in range(1, rank + 1):
                self._in[(v, c)] = []
        for e in self.edges.values():
            self._in[(e.range, e.color)].append(e)
        for key, lst in self._in.items():
            self._in[key] = tuple(sorted(lst, key=lambda e: e.eid))

        # square rewrite tables: fwd sorts right-to-left side, bwd the reverse
        self._fwd = {}
        self._bwd = {}
        for s in self.squares:
            self._fwd.setdefault((s.e, s.f), []).append((s.f2, s.e2))
            self._bwd.setdefault((s.f2, s.e2), []).append((s.e, s.f))

        self._path_cache = {}
        self._source_cache = {}
        self._prod_cache = {}
        self._misc_cache = {}

    def edge(self, eid):
        try:
            return self.edges[eid]
        except KeyError:
            raise DanglingVertexReference(f"unknown edge {eid!r}")

    def color(self, eid):
        return self.edge(eid).color

    def is_vertex(self, name):
        return name in self._vset

    def in_edges(self, v, color):
        """Edges of the given color with range v, in id order."""
        try:
            return self._in[(v, color)]
        except KeyError:
            raise DanglingVertexReference(f"unknown vertex {v!r} or color {color}")

    def sort_pair(self, g, h):
        """Rewrite an out-of-order pair (colors j > i) to its sorted form."""
        rules = self._bwd.get((g, h))
        if not rules:
            raise MalformedSquare(f"no square covers the pair {g}.{h}")
        return rules[0]

    def unsort_pair(self, g, h):
        """Rewrite a sorted pair (colors i < j) to its swapped form."""
        rules = self._fwd.get((g, h))
        if not rules:
            raise MalformedSquare(f"no square covers the pair {g}.{h}")
        return rules[0]

    def require_validated(self, bound):
        if self.validated_bound is None or not dg.leq(bound, self.validated_bound):
            raise BoundExceeded(
                f"graph validated to {self.validated_bound}, need {bound}; run validate() first"
            )

    def signature(self):
        """Structural identity, used for round-trip comparisons."""
        return (
            self.rank,
            self.vertices,
            tuple((e.eid, e.color, e.source, e.range) for e in self.edges.values()),
            tuple((s.e, s.f, s.f2, s.e2) for s in self.squares),
        )

    def __repr__(self):
        return f"<KGraph rank={self.rank} |V|={len(self.vertices)} |E|={len(self.edges)}>"


def build_kgraph(rank, vertices, edges, squares=(), strict=False):
    """Assemble and structurally check a presentation; no axiom checks yet."""
    if not isinstance(rank, int) or rank < 1:
        raise KGraphError(f"rank must be a positive integer, got {rank!r}")

    vlist = [str(v) for v in vertices]
    seen = set()
    for v in vlist:
        if v in seen:
            raise DuplicateId(f"duplicate vertex id {v!r}")
        seen.add(v)

    elist = []
    for e in edges:
        if not isinstance(e, Edge):
            e = Edge(*e)
        if e.eid in seen:
            raise DuplicateId(f"duplicate id {e.eid!r}")
        seen.add(e.eid)
        if not 1 <= e.color <= rank:
            raise ColorOutOfRange(f"edge {e.eid!r} has color {e.color}, rank is {rank}")
        for v in (e.source, e.range):
            if v not in vlist:
                raise DanglingVertexReference(f"edge {e.eid!r} references unknown vertex {v!r}")
        elist.append(e)
    emap = {e.eid: e for e in elist}

    slist = []
    for s in squares:
        if not isinstance(s, Square):
            s = Square(*s)
        for eid in (s.e, s.f, s.f2, s.e2):
            if eid not in emap:
                raise MalformedSquare(f"square references unknown edge {eid!r}")
        e, f, f2, e2 = emap[s.e], emap[s.f], emap[s.f2], emap[s.e2]
        if e.color != e2.color or f.color != f2.color or e.color >= f.color:
            raise MalformedSquare(
                f"square {s.e}.{s.f} = {s.f2}.{s.e2} has colors "
                f"({e.color},{f.color}) = ({f2.color},{e2.color}); need (i,j)=(j,i) with i<j"
            )
        if e.source != f.range or f2.source != e2.range:
            raise MalformedSquare(f"square {s.e}.{s.f} = {s.f2}.{s.e2}: sides not composable")
        if e.range != f2.range or f.source != e2.source:
            raise MalformedSquare(
                f"square {s.e}.{s.f} = {s.f2}.{s.e2}: sides disagree on range or source"
            )
        slist.append(s)

    return KGraph(rank, vlist, elist, slist, strict=strict)


@dataclass(frozen=True)
class FactorizationFailure:
    vertex: str
    path_word: tuple
    degree: tuple
    split: tuple
    count: int
    note: str = ""

    def __str__(self):
        word = ".".join(self.path_word) if self.path_word else self.vertex
        msg = f"path {word} (degree {self.degree}) at split {self.split}: {self.count} factorizations"
        return msg + (f" [{self.note}]" if self.note else "")


@dataclass
class ValidationReport:
    bound: tuple
    source_failures: list = field(default_factory=list)  # (vertex, color)
    square_failures: list = field(default_factory=list)  # strings
    factorization_failures: list = field(default_factory=list)
    paths_checked: int = 0
    truncated: bool = False

    @property
    def ok(self):
        return not (self.source_failures or self.square_failures or self.factorization_failures)

    def summary(self):
        lines = [f"validation bound {dg.fmt(self.bound)}: {'PASS' if self.ok else 'FAIL'}"]
        for v, c in self.source_failures:
            lines.append(f"  no-sources: vertex {v} receives no color-{c} edge")
        for msg in self.square_failures:
            lines.append(f"  squares: {msg}")
        for fail in self.factorization_failures:
            lines.append(f"  factorization: {fail}")
        if self.truncated:
            lines.append("  (failure list truncated)")
        if self.paths_checked:
            lines.append(f"  paths checked: {self.paths_checked}")
        return "\n".join(lines)


def validate(graph, bound):
    """Check the rank-k graph axioms for all paths of degree <= bound.

    Failures are report entries, never exceptions.  On success the graph is
    stamped with the join of all bounds it has passed.
    """
    from .pathspace import compose, paths  # local import: pathspace depends on this module

    bound = dg.check(bound, graph.rank)
    report = ValidationReport(bound=bound)

    for v in graph.vertices:
        for c in range(1, graph.rank + 1):
            if not graph.in_edges(v, c):
                report.source_failures.append((v, c))

    _check_square_bijectivity(graph, report)

    if graph.rank >= 2:
        was_strict = graph.strict
        graph.strict = False  # validation itself enumerates beyond the current stamp
        try:
            _factorization_sweep(graph, bound, report, paths, compose)
        finally:
            graph.strict = was_strict
    # rank 1 has no squares: free words factor uniquely by length, nothing to sweep

    if report.ok:
        prev = graph.validated_bound
        graph.validated_bound = bound if prev is None else dg.join(prev, bound)
    return report


def _check_square_bijectivity(graph, report):
    for i in range(1, graph.rank + 1):
        for j in range(i + 1, graph.rank + 1):
            ij_pairs = {
                (e.eid, f.eid)
                for e in graph.edges.values()
                if e.color == i
                for f in graph.edges.values()
                if f.color == j and e.source == f.range
            }
            ji_pairs = {
                (f.eid, e.eid)
                for f in graph.edges.values()
                if f.color == j
                for e in graph.edges.values()
                if e.color == i and f.source == e.range
            }
            lefts, rights = {}, {}
            for s in graph.squares:
                if graph.color(s.e) == i and graph.color(s.f) == j:
                    lefts.setdefault((s.e, s.f), []).append(s)
                    rights.setdefault((s.f2, s.e2), []).append(s)
            for pair in sorted(ij_pairs):
                n = len(lefts.get(pair, ()))
                if n != 1:
                    report.square_failures.append(
                        f"colors ({i},{j}): pair {pair[0]}.{pair[1]} covered by {n} squares"
                    )
            for pair in sorted(ji_pairs):
                n = len(rights.get(pair, ()))
                if n != 1:
                    report.square_failures.append(
                        f"colors ({j},{i}): pair {pair[0]}.{pair[1]} covered by {n} squares"
                    )


def _factorization_sweep(graph, bound, report, paths, compose):
    """Brute-force uniqueness of every split of every path up to the bound."""
    checked = 0
    for n in dg.box_by_total(bound):
        if dg.is_zero(n):
            continue
        for v in graph.vertices:
            for lam in paths(graph, v, n):
                checked += 1
                for m in dg.box(n):
                    if dg.is_zero(m) or m == n:
                        continue
                    rest = dg.sub(n, m)
                    count = 0
                    note = ""
                    for mu in paths(graph, v, m):
                        for nu in paths(graph, mu.source, rest):
                            try:
                                if compose(mu, nu) == lam:
                                    count += 1
                            except KGraphError as exc:
                                note = str(exc)
                                count = -1
                                break
                        if count == -1:
                            break
                    if count != 1:
                        report.factorization_failures.append(
                            FactorizationFailure(
                                vertex=v,
                                path_word=lam.edges,
                                degree=n,
                                split=m,
                                count=max(count, 0),
                                note=note,
                            )
                        )
                        if len(report.factorization_failures) >= _FAILURE_CAP:
                            report.truncated = True
                            report.paths_checked = checked
                            return
    report.paths_checked = checked
