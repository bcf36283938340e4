"""Exact arithmetic in the graded *-algebra spanned by the generators s_lam s_mu*.

Elements are finite Gaussian-rational combinations of generators (lam, mu)
with s(lam) == s(mu).  The generator product expands through common
extensions:

    (s_lam s_mu*)(s_al s_be*) = sum over mu.rho == al.tau of s_{lam.rho} s_{be.tau}*

where the extensions are enumerated at the join of d(mu) and d(al).  Equality
is decided through the normal form: within each grade, every term is refined
to a common left degree, where degree-matched generators have disjoint
supports and hence unique coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import degrees as dg
from .errors import GraphMismatch, NonUnimodular, SourceMismatch
from .pathspace import Path, compose, paths, vertex_path
from .scalars import ONE, as_scalar


@dataclass(frozen=True)
class Generator:
    """The partial isometry s_left s_right*; grade = d(left) - d(right)."""

    left: Path
    right: Path
    grade: tuple = field(init=False, compare=False, repr=False)
    sort_key: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.left.source != self.right.source:
            raise SourceMismatch(
                f"s({self.left}) = {self.left.source} != s({self.right}) = {self.right.source}"
            )
        object.__setattr__(self, "grade", dg.sub(self.left.degree, self.right.degree))
        object.__setattr__(self, "sort_key", (self.grade, self.left.sort_key, self.right.sort_key))

    def __str__(self):
        if self.right.is_vertex:
            return f"s({self.left.word()})"
        if self.left.is_vertex:
            return f"adj(s({self.right.word()}))"
        return f"s({self.left.word()})*adj(s({self.right.word()}))"


class Element:
    """A finite combination of generators over one graph; immutable by convention."""

    __slots__ = ("graph", "terms")

    def __init__(self, graph, terms=None):
        self.graph = graph
        pruned = {}
        if terms:
            for g, c in terms.items():
                if c:
                    pruned[g] = c
        self.terms = pruned

    @classmethod
    def zero(cls, graph):
        return cls(graph)

    def is_raw_zero(self):
        return not self.terms

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key)

    def grades(self):
        return sorted({g.grade for g in self.terms})

    def _check(self, other):
        if self.graph is not other.graph:
            raise GraphMismatch("elements live in different graphs")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            if g in out:
                out[g] = out[g] + c
            else:
                out[g] = c
        return Element(self.graph, out)

    def __neg__(self):
        return Element(self.graph, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_scalar(c)
        return Element(self.graph, {g: c * v for g, v in self.terms.items()})

    def __mul__(self, other):
        return multiply(self, other)

    def adjoint(self):
        return Element(
            self.graph,
            {Generator(g.right, g.left): c.conjugate() for g, c in self.terms.items()},
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for g, c in self.items():
            parts.append(_format_term(g, c, first=not parts))
        return " ".join(parts)

    def __repr__(self):
        return f"<Element {self}>"


def _format_term(g, c, first):
    body = str(g)
    if c == ONE:
        coeff = ""
    elif not c.im and c.re < 0 or (not c.re and c.im < 0):
        # purely negative: render through the leading sign
        pos = -c
        coeff = "" if pos == ONE else f"({pos})*"
        sign = "-" if first else "- "
        return f"{sign}{coeff}{body}"
    else:
        coeff = f"({c})*"
    text = f"{coeff}{body}"
    return text if first else f"+ {text}"


def generator(lam, mu):
    """The single generator s_lam s_mu* with coefficient 1."""
    if lam.graph is not mu.graph:
        raise GraphMismatch("paths live in different graphs")
    return Element(lam.graph, {Generator(lam, mu): ONE})


def isometry(lam):
    """s_lam = s_lam s_{s(lam)}*."""
    return generator(lam, vertex_path(lam.graph, lam.source))


def projection(graph, v):
    """The vertex projection s_v."""
    vp = vertex_path(graph, v)
    return generator(vp, vp)


def unit(graph):
    """The sum of all vertex projections (the unit: the graph is finite)."""
    cached = graph._misc_cache.get("unit")
    if cached is None:
        cached = Element(graph)
        for v in graph.vertices:
            cached = cached + projection(graph, v)
        graph._misc_cache["unit"] = cached
    return cached


def add(a, b):
    return a + b


def scale(c, a):
    return a.scale(c)


def adjoint(a):
    return a.adjoint()


def _generator_product(graph, g1, g2):
    """Expand (s_lam s_mu*)(s_al s_be*) into generators; cached per graph."""
    key = (g1, g2)
    cached = graph._prod_cache.get(key)
    if cached is not None:
        return cached
    mu, al = g1.right, g2.left
    j = dg.join(mu.degree, al.degree)
    by_extension = {}
    for rho in paths(graph, mu.source, dg.sub(j, mu.degree)):
        by_extension[compose(mu, rho)] = rho
    out = []
    for tau in paths(graph, al.source, dg.sub(j, al.degree)):
        rho = by_extension.get(compose(al, tau))
        if rho is not None:
            out.append(Generator(compose(g1.left, rho), compose(g2.right, tau)))
    out = tuple(out)
    graph._prod_cache[key] = out
    return out


def multiply(a, b):
    a._check(b)
    graph = a.graph
    out = {}
    for g1, c1 in a.terms.items():
        for g2, c2 in b.terms.items():
            c = c1 * c2
            for g in _generator_product(graph, g1, g2):
                if g in out:
                    out[g] = out[g] + c
                else:
                    out[g] = c
    return Element(graph, out)


def phi(a, m):
    """Projection onto the grade-m component."""
    m = dg.check(m, a.graph.rank, signed=True)
    return Element(a.graph, {g: c for g, c in a.terms.items() if g.grade == m})


def gauge(a, t):
    """The gauge automorphism at an exact unimodular torus point.

    Each grade-m term is scaled by t^m; negative powers use the conjugate.
    """
    k = a.graph.rank
    t = tuple(as_scalar(c) for c in t)
    if len(t) != k:
        raise NonUnimodular(f"gauge point must have {k} coordinates")
    for c in t:
        if not c.is_unimodular():
            raise NonUnimodular(f"gauge coordinate {c} is not unimodular")
    out = {}
    for g, c in a.terms.items():
        factor = ONE
        for ti, e in zip(t, g.grade):
            factor = factor * (ti ** e)
        out[g] = c * factor
    return Element(a.graph, out)


@dataclass
class NormalForm:
    """Per grade: a common (left, right) degree pair and unique coefficients."""

    graph: object
    blocks: dict  # grade -> (left_degree, {Generator: QQi})

    def is_zero(self):
        return not self.blocks

    def as_element(self):
        merged = {}
        for _, (_, coeffs) in sorted(self.blocks.items()):
            merged.update(coeffs)
        return Element(self.graph, merged)

    def __str__(self):
        if not self.blocks:
            return "0"
        lines = []
        for grade in sorted(self.blocks):
            p, coeffs = self.blocks[grade]
            el = Element(self.graph, coeffs)
            lines.append(f"grade {dg.fmt(grade)} at left degree {dg.fmt(p)}: {el}")
        return "\n".join(lines)


def refine_generator(g, p):
    """Split s_lam s_mu* at left degree p >= d(lam) into degree-matched pieces."""
    graph = g.left.graph
    out = []
    for rho in paths(graph, g.left.source, dg.sub(p, g.left.degree)):
        out.append(Generator(compose(g.left, rho), compose(g.right, rho)))
    return out


def normal_form(a, targets=None):
    """Refine every grade to a common left degree (at least the stated target)."""
    groups = {}
    for g, c in a.terms.items():
        groups.setdefault(g.grade, []).append((g, c))
    blocks = {}
    for grade, pairs in groups.items():
        p = pairs[0][0].left.degree
        for g, _ in pairs[1:]:
            p = dg.join(p, g.left.degree)
        if targets and grade in targets:
            p = dg.join(p, targets[grade])
        coeffs = {}
        for g, c in pairs:
            for rg in refine_generator(g, p):
                if rg in coeffs:
                    coeffs[rg] = coeffs[rg] + c
                else:
                    coeffs[rg] = c
        coeffs = {g: c for g, c in coeffs.items() if c}
        if coeffs:
            blocks[grade] = (p, coeffs)
    return NormalForm(a.graph, blocks)


def equals(a, b):
    """Exact equality in the algebra, decided through the normal form."""
    a._check(b)
    return normal_form(a - b).is_zero()


@dataclass
class CKReport:
    bound: tuple
    failures: dict  # axiom name -> list of messages

    @property
    def ok(self):
        return not any(self.failures.values())

    def summary(self):
        lines = [f"Cuntz-Krieger axiom check at bound {dg.fmt(self.bound)}: "
                 f"{'PASS' if self.ok else 'FAIL'}"]
        for name in ("projections", "composition", "isometry", "refinement"):
            msgs = self.failures.get(name, [])
            lines.append(f"  axiom {name}: {'ok' if not msgs else 'FAIL'}")
            lines.extend(f"    {m}" for m in msgs[:5])
        return "\n".join(lines)


def verify_ck(graph, bound):
    """Symbolically verify the four defining relations up to the degree bound.

    (1) vertex projections are mutually orthogonal self-adjoint idempotents;
    (2) s_{lam.mu} = s_lam s_mu for composable pairs within the bound;
    (3) s_lam* s_lam = s_{s(lam)};
    (4) s_v = sum of s_lam s_lam* over lam in Lambda^n(v), for every n <= bound.
    """
    bound = dg.check(bound, graph.rank)
    graph.require_validated(bound)
    failures = {"projections": [], "composition": [], "isometry": [], "refinement": []}

    projs = {v: projection(graph, v) for v in graph.vertices}
    for v in graph.vertices:
        for w in graph.vertices:
            want = projs[v] if v == w else Element.zero(graph)
            if not equals(multiply(projs[v], projs[w]), want):
                failures["projections"].append(f"s_{v} s_{w} != {'s_' + v if v == w else '0'}")
        if not equals(projs[v].adjoint(), projs[v]):
            failures["projections"].append(f"s_{v} not self-adjoint")

    for n1 in dg.box(bound):
        for v in graph.vertices:
            for lam in paths(graph, v, n1):
                rest = dg.sub(bound, n1)
                for n2 in dg.box(rest):
                    if dg.is_zero(n2) and dg.is_zero(n1):
                        continue
                    for mu in paths(graph, lam.source, n2):
                        lhs = isometry(compose(lam, mu))
                        rhs = multiply(isometry(lam), isometry(mu))
                        if not equals(lhs, rhs):
                            failures["composition"].append(f"s_({lam}.{mu}) != s_{lam} s_{mu}")

    for n in dg.box(bound):
        for v in graph.vertices:
            for lam in paths(graph, v, n):
                got = multiply(isometry(lam).adjoint(), isometry(lam))
                if not equals(got, projs[lam.source]):
                    failures["isometry"].append(f"s_{lam}* s_{lam} != s_{lam.source}")

    for v in graph.vertices:
        for n in dg.box(bound):
            total = Element.zero(graph)
            for lam in paths(graph, v, n):
                total = total + generator(lam, lam)
            if not equals(total, projs[v]):
                failures["refinement"].append(
                    f"s_{v} != sum over degree {dg.fmt(n)} range projections"
                )

    return CKReport(bound=bound, failures=failures)
