"""Aperiodicity of the path space and maximality of the diagonal.

For rank 1 the diagonal is maximal abelian exactly when every cycle has an
entrance, which is decidable by enumeration.  For higher rank the engine runs
a bounded three-valued search: a vertex is certified periodic when no finite
path breaks the candidate period, the reachable part of the graph is
deterministic, and an explicitly constructed ultimately periodic point
verifies the period exactly.  Aperiodicity is certified per (vertex, period)
pair by a breaking path; anything else is reported unknown.

The isotropy search looks for a basic cylinder Z(al, be) with d(al) != d(be)
all of whose bounded extensions agree, then verifies one actual isotropy
point; such a cylinder is evidence that the isotropy bundle has interior
beyond the units, i.e. that the diagonal is not maximal abelian.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import degrees as dg
from .errors import BoundExceeded, RankMismatch, TheoremViolation
from .groupoid import Cylinder, GroupoidPoint
from .pathspace import (
    canonical_up_path,
    compose,
    concatenate,
    factorize,
    paths,
    paths_by_source,
    shift,
    up_path_equal,
)


@dataclass(frozen=True)
class PeriodicCertificate:
    vertex: str
    period: tuple
    witness: object  # a verified UPPath from the vertex with the stated period

    def __str__(self):
        return f"vertex {self.vertex}, period {dg.fmt(self.period)}, witness {self.witness}"


@dataclass
class AperiodicityVerdict:
    status: str  # "aperiodic" | "periodic" | "unknown"
    pmax: int
    depth: tuple
    certificate: PeriodicCertificate = None
    breaking: dict = field(default_factory=dict)  # (vertex, period) -> Path
    unresolved: list = field(default_factory=list)

    def summary(self):
        lines = [f"aperiodicity at pmax={self.pmax}, depth={dg.fmt(self.depth)}: {self.status}"]
        if self.certificate:
            lines.append(f"  periodic certificate: {self.certificate}")
        if self.status == "aperiodic":
            lines.append(f"  breaking paths found for all {len(self.breaking)} (vertex, period) pairs")
        for pair in self.unresolved[:5]:
            lines.append(f"  unresolved: vertex {pair[0]}, period {dg.fmt(pair[1])}")
        return "\n".join(lines)


@dataclass
class IsotropyVerdict:
    found: bool
    bound: tuple
    cylinder: Cylinder = None
    point: GroupoidPoint = None

    def summary(self):
        if self.found:
            return (
                f"isotropy interior at bound {dg.fmt(self.bound)}: found {self.cylinder} "
                f"with point {self.point}"
            )
        return f"isotropy interior at bound {dg.fmt(self.bound)}: none found"


@dataclass
class MasaVerdict:
    status: str  # "yes" | "no" | "unknown"
    basis: str  # which criterion fired
    detail: str
    cycle: tuple = None
    period_certificate: PeriodicCertificate = None
    isotropy: IsotropyVerdict = None
    pmax: int = None
    depth: tuple = None

    def summary(self):
        word = {"yes": "Yes", "no": "No", "unknown": "Unknown"}[self.status]
        return f"{word} - {self.detail}"


def _simple_cycles(graph):
    """All directed simple cycles of a rank-1 graph, one per rotation.

    A cycle is an edge word e1..en with r(e1) = s(en) and distinct ranges;
    the canonical representative starts at the smallest vertex on the cycle.
    """
    order = {v: i for i, v in enumerate(graph.vertices)}
    out = []

    def walk(start, cur, trail, seen):
        for e in graph.in_edges(cur, 1):
            w = e.source
            if w == start:
                out.append(tuple(trail + [e.eid]))
            elif w not in seen and order[w] > order[start]:
                walk(start, w, trail + [e.eid], seen | {w})

    for v in graph.vertices:
        walk(v, v, [], {v})
    return sorted(out)


def loop_entrance_check(graph):
    """Exact rank-1 masa verdict: the diagonal is maximal iff every cycle has an entrance."""
    if graph.rank != 1:
        raise RankMismatch(f"loop-entrance criterion needs rank 1, got {graph.rank}")
    if graph.validated_bound is None:
        raise BoundExceeded("graph must be validated first")
    for cycle in _simple_cycles(graph):
        edges = set(cycle)
        has_entrance = False
        for eid in cycle:
            v = graph.edge(eid).range
            for g in graph.in_edges(v, 1):
                if g.eid not in edges:
                    has_entrance = True
                    break
            if has_entrance:
                break
        if not has_entrance:
            word = ".".join(cycle)
            return MasaVerdict(
                status="no",
                basis="loop-entrance",
                detail=f"loop '{word}' has no entrance",
                cycle=cycle,
            )
    return MasaVerdict(
        status="yes", basis="loop-entrance", detail="every loop has an entrance"
    )


def _subsegment(path, m, n):
    """path(m, n) for a finite path, m <= n <= d(path)."""
    _, rest = factorize(path, m)
    mid, _ = factorize(rest, dg.sub(n, m))
    return mid


def breaking_path(graph, v, p, depth):
    """A finite path from v witnessing that not every extension is p-periodic.

    Writing p = p+ - p-, a path lam of degree n breaks the period when its two
    shifted windows lam(p-, n-p+) and lam(p+, n-p-) differ; every infinite
    extension of such a path fails to be p-periodic.  Returns None when every
    path to the stated depth is consistent with the period.
    """
    k = graph.rank
    p = dg.check(p, k, signed=True)
    depth = dg.check(depth, k)
    graph.require_validated(depth)
    plus, minus = dg.pos_part(p), dg.neg_part(p)
    window = dg.add(plus, minus)
    if not dg.leq(window, depth):
        raise BoundExceeded(f"period {p} needs depth at least {window}, have {depth}")
    for n in dg.box_by_total(depth):
        if not dg.leq(window, n):
            continue
        for lam in paths(graph, v, n):
            a = _subsegment(lam, minus, dg.sub(n, plus))
            b = _subsegment(lam, plus, dg.sub(n, minus))
            if a != b:
                return lam
    return None


def _deterministic_walk(graph, v):
    """The unique ultimately periodic point from v when extensions are forced.

    Returns None unless every vertex reachable from v (walking ranges to
    sources) receives exactly one edge of each color; then from v the path of
    every degree is unique and the walk closes into a cycle.
    """
    reachable = {v}
    frontier = [v]
    while frontier:
        u = frontier.pop()
        for c in range(1, graph.rank + 1):
            es = graph.in_edges(u, c)
            if len(es) != 1:
                return None
            w = es[0].source
            if w not in reachable:
                reachable.add(w)
                frontier.append(w)
    return canonical_up_path(graph, v)


def aperiodicity_check(graph, pmax, depth):
    """Bounded three-valued search over all (vertex, period) pairs.

    Periodic needs a verified certificate; aperiodic needs a breaking path for
    every pair; anything unresolved makes the verdict unknown.
    """
    depth = dg.check(depth, graph.rank)
    graph.require_validated(depth)
    candidates = dg.period_candidates(graph.rank, pmax)
    verdict = AperiodicityVerdict(status="unknown", pmax=pmax, depth=depth)
    walks = {}
    for v in graph.vertices:
        walks[v] = _deterministic_walk(graph, v)
    for v in graph.vertices:
        for p in candidates:
            window = dg.add(dg.pos_part(p), dg.neg_part(p))
            if not dg.leq(window, depth):
                verdict.unresolved.append((v, p))
                continue
            witness = breaking_path(graph, v, p, depth)
            if witness is not None:
                verdict.breaking[(v, p)] = witness
                continue
            x = walks[v]
            if x is not None and up_path_equal(shift(x, dg.pos_part(p)), shift(x, dg.neg_part(p))):
                if verdict.certificate is None:
                    verdict.certificate = PeriodicCertificate(vertex=v, period=p, witness=x)
            else:
                verdict.unresolved.append((v, p))
    if verdict.certificate is not None:
        verdict.status = "periodic"
    elif not verdict.unresolved:
        verdict.status = "aperiodic"
    return verdict


def _forced_cylinder(graph, lam, mu, depth):
    """Whether every depth-bounded extension of lam and mu agrees on the overlap."""
    window = dg.add(depth, dg.meet(lam.degree, mu.degree))
    for w in paths(graph, lam.source, depth):
        a = compose(lam, w)
        b = compose(mu, w)
        if factorize(a, window)[0] != factorize(b, window)[0]:
            return False
    return True


def isotropy_interior_check(graph, bound):
    """Search for a basic cylinder of nonzero grade inside the isotropy bundle.

    Candidate grades follow the canonical order (mixed-sign first); a find is
    only reported after an explicit isotropy point verifies exactly.
    """
    bound = dg.check(bound, graph.rank)
    graph.require_validated(bound)
    sup = max(bound) if bound else 0
    grades = [
        m
        for m in dg.period_candidates(graph.rank, sup)
        if dg.leq(dg.pos_part(m), bound) and dg.leq(dg.neg_part(m), bound)
    ]
    for m in grades:
        for dl in dg.box_by_total(bound):
            dr = dg.sub(dl, m)
            if not dg.nonneg(dr) or not dg.leq(dr, bound):
                continue
            for v in graph.vertices:
                for lam in paths(graph, v, dl):
                    for mu in paths_by_source(graph, lam.source, dr):
                        if not _forced_cylinder(graph, lam, mu, bound):
                            continue
                        z = canonical_up_path(graph, lam.source)
                        x = concatenate(lam, z)
                        y = concatenate(mu, z)
                        if not up_path_equal(x, y):
                            continue
                        pt = GroupoidPoint(x, m, x, dl, dr)
                        return IsotropyVerdict(
                            found=True, bound=bound, cylinder=Cylinder(lam, mu), point=pt
                        )
    return IsotropyVerdict(found=False, bound=bound)


def masa_verdict(graph, pmax=2, depth=None):
    """Whether the diagonal is maximal abelian: exact for rank 1, bounded above.

    Rank 1 uses the loop-entrance criterion.  Higher rank reports no when a
    period certificate or an isotropy cylinder is found, yes when every pair
    has a breaking path and no cylinder exists at the bound, and unknown
    otherwise.  A period certificate together with an empty breaking table
    contradiction trips an internal error.
    """
    if depth is None:
        depth = tuple(3 for _ in range(graph.rank))
    depth = dg.check(depth, graph.rank)
    if graph.rank == 1:
        verdict = loop_entrance_check(graph)
        verdict.pmax = pmax
        verdict.depth = depth
        return verdict
    ap = aperiodicity_check(graph, pmax, depth)
    iso = isotropy_interior_check(graph, depth)
    if ap.status == "aperiodic" and iso.found and dg.supnorm(iso.cylinder.grade) <= pmax:
        # breaking paths rule out exactly the periods scanned; a cylinder whose
        # grade lies in that range would be a genuine contradiction
        raise TheoremViolation(
            "breaking paths for every period but an isotropy cylinder exists in range"
        )
    if ap.status == "periodic" or iso.found:
        details = []
        if ap.certificate:
            details.append(
                f"period certificate ({ap.certificate.vertex}, {dg.fmt(ap.certificate.period)})"
            )
        if iso.found:
            details.append(f"isotropy cylinder {iso.cylinder}")
        return MasaVerdict(
            status="no",
            basis="period-certificate" if ap.certificate else "isotropy-cylinder",
            detail="; ".join(details),
            period_certificate=ap.certificate,
            isotropy=iso,
            pmax=pmax,
            depth=depth,
        )
    if ap.status == "aperiodic":
        return MasaVerdict(
            status="yes",
            basis="breaking-path-family",
            detail=f"every period up to {pmax} breaks at depth {dg.fmt(depth)} and "
            f"no isotropy cylinder exists at that bound",
            isotropy=iso,
            pmax=pmax,
            depth=depth,
        )
    return MasaVerdict(
        status="unknown",
        basis="depth-exhausted",
        detail=f"search exhausted at pmax={pmax}, depth={dg.fmt(depth)}",
        isotropy=iso,
        pmax=pmax,
        depth=depth,
    )
