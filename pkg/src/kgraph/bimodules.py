"""Finitely presented bimodules over the diagonal, truncated to a degree box.

The diagonal D is spanned by the range projections s_nu s_nu*.  A presentation
is a finite set of elements; its truncated closure is the smallest exact span
containing the generators and closed under left/right multiplication by every
projection s_nu s_nu* with d(nu) <= bound, keeping only products whose terms
stay inside the box d(left) <= bound, d(right) <= bound.  Every basis vector
is a genuine element of the bimodule, so the computed spectrum is contained
in the true one and agrees with it in all grades representable at the bound.

spectral_check evaluates, at one shared bound, the three equivalent
characterizations of a bimodule being determined by its spectrum:

  (1) the truncated span equals the span of all generators supported in it;
  (2) the truncated span is generated by the partial isometries it contains;
  (3) the truncated span is invariant under every grade projection.

Disagreement between the three flags is an internal error, never a result.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import degrees as dg
from .algebra import Element, Generator, generator, normal_form, refine_generator
from .errors import BoundExceeded, GraphMismatch, TheoremViolation
from .groupoid import Cylinder, OpenSet, subset
from .linalg import RowSpan
from .pathspace import paths, paths_by_source


@dataclass(frozen=True)
class BimodulePresentation:
    graph: object
    generators: tuple

    def __post_init__(self):
        for el in self.generators:
            if el.graph is not self.graph:
                raise GraphMismatch("presentation mixes graphs")


def bimodule(graph, *elements):
    return BimodulePresentation(graph, tuple(elements))


def _gen_key(g):
    return g.sort_key


class TruncatedBasis:
    """A reduced echelon basis of a degree-box slice of a bimodule.

    Rows are kept at a shared per-grade refinement (the join of the left
    degrees encountered); membership queries refine a throwaway copy so the
    stored basis never changes after construction.
    """

    def __init__(self, graph, bound):
        self.graph = graph
        self.bound = dg.check(bound, graph.rank)
        self.refinement = {}  # grade -> left degree of that block
        self._span = RowSpan(_gen_key)
        self._query_cache = {}

    # -- refinement plumbing ------------------------------------------------

    def _box_check(self, grade, p):
        if not dg.leq(p, self.bound) or not dg.leq(dg.sub(p, grade), self.bound):
            raise BoundExceeded(
                f"refinement {p} at grade {grade} leaves the degree box {self.bound}"
            )

    def _refine_vec(self, vec, targets):
        out = {}
        for g, c in vec.items():
            p = targets.get(g.grade)
            if p is None or p == g.left.degree:
                pieces = (g,)
            else:
                pieces = refine_generator(g, p)
            for rg in pieces:
                if rg in out:
                    out[rg] = out[rg] + c
                else:
                    out[rg] = c
        return {g: c for g, c in out.items() if c}

    def _coords(self, element, targets):
        nf = normal_form(element, targets=targets)
        merged = {}
        for _, (_, coeffs) in nf.blocks.items():
            merged.update(coeffs)
        return merged

    def _targets_for(self, element):
        targets = dict(self.refinement)
        nf = normal_form(element)
        for grade, (p, _) in nf.blocks.items():
            t = dg.join(targets.get(grade, p), p)
            self._box_check(grade, t)
            targets[grade] = t
        return targets

    # -- construction (used by closure / a_of only) -------------------------

    def _add(self, element):
        if element.is_raw_zero():
            return False
        targets = self._targets_for(element)
        if targets != self.refinement:
            grown = {m: p for m, p in targets.items() if self.refinement.get(m) != p}
            if grown:
                span = RowSpan(_gen_key)
                for vec in self._span.vectors():
                    if not span.insert(self._refine_vec(vec, grown)):
                        raise TheoremViolation("refinement collapsed an independent row")
                self._span = span
            self.refinement = targets
            self._query_cache.clear()
        return self._span.insert(self._coords(element, self.refinement))

    # -- queries ------------------------------------------------------------

    def contains(self, element):
        if element.graph is not self.graph:
            raise GraphMismatch("element from a different graph")
        if element.is_raw_zero():
            return True
        targets = self._targets_for(element)
        vec = self._coords(element, targets)
        grown = {m: p for m, p in targets.items() if self.refinement.get(m) != p}
        if not grown:
            return self._span.contains(vec)
        sig = tuple(sorted(grown.items()))
        span = self._query_cache.get(sig)
        if span is None:
            span = RowSpan(_gen_key)
            for row in self._span.vectors():
                span.insert(self._refine_vec(row, grown))
            self._query_cache[sig] = span
        return span.contains(vec)

    @property
    def dim(self):
        return self._span.dim

    def elements(self):
        return [Element(self.graph, vec) for vec in self._span.vectors()]

    def grades(self):
        seen = set()
        for vec in self._span.vectors():
            seen.update(g.grade for g in vec)
        return sorted(seen)

    def support(self):
        cyls = []
        for vec in self._span.vectors():
            cyls.extend(Cylinder(g.left, g.right) for g in vec)
        return OpenSet(self.graph, cyls)

    def __repr__(self):
        return f"<TruncatedBasis dim={self.dim} bound={dg.fmt(self.bound)}>"


def _in_box(element, bound):
    return all(
        dg.leq(g.left.degree, bound) and dg.leq(g.right.degree, bound)
        for g in element.terms
    )


def _diagonal_projections(graph, bound):
    """All s_nu s_nu* with d(nu) <= bound, in canonical order; cached."""
    key = ("diag", bound)
    cached = graph._misc_cache.get(key)
    if cached is None:
        out = []
        for n in dg.box(bound):
            for v in graph.vertices:
                for nu in paths(graph, v, n):
                    out.append(generator(nu, nu))
        cached = tuple(out)
        graph._misc_cache[key] = cached
    return cached


def closure(presentation, bound):
    """The truncated diagonal-bimodule closure of the presented generators.

    Products that would leave the degree box are discarded rather than
    truncated termwise, so every basis vector is an actual member of the
    bimodule generated by the presentation.
    """
    graph = presentation.graph
    bound = dg.check(bound, graph.rank)
    graph.require_validated(bound)
    basis = TruncatedBasis(graph, bound)
    worklist = []
    for el in presentation.generators:
        if el.is_raw_zero():
            continue
        if not _in_box(el, bound):
            raise BoundExceeded(f"presentation generator {el} leaves the degree box {bound}")
        if basis._add(el):
            worklist.append(el)
    projections = _diagonal_projections(graph, bound)
    while worklist:
        el = worklist.pop(0)
        for proj in projections:
            for prod in (proj * el, el * proj):
                if prod.is_raw_zero() or not _in_box(prod, bound):
                    continue
                if basis._add(prod):
                    worklist.append(prod)
    return basis


def spectrum(presentation, bound):
    """The open set where some element of the (truncated) bimodule is nonzero."""
    return closure(presentation, bound).support()


def a_of(open_set, bound):
    """The span of every in-box generator supported inside the open set."""
    graph = open_set.graph
    bound = dg.check(bound, graph.rank)
    graph.require_validated(bound)
    basis = TruncatedBasis(graph, bound)
    for grade in open_set.grades():
        for dl in dg.box_by_total(bound):
            dr = dg.sub(dl, grade)
            if not dg.nonneg(dr) or not dg.leq(dr, bound):
                continue
            for v in graph.vertices:
                for lam in paths(graph, v, dl):
                    for mu in paths_by_source(graph, lam.source, dr):
                        if subset(Cylinder(lam, mu), open_set):
                            basis._add(generator(lam, mu))
    return basis


@dataclass
class GaugeInvarianceReport:
    invariant: bool
    witness: object = None  # offending grade component, when not invariant


def _gauge_invariant(basis):
    for vec in basis._span.vectors():
        grades = sorted({g.grade for g in vec})
        if len(grades) <= 1:
            continue
        for m in grades:
            comp = {g: c for g, c in vec.items() if g.grade == m}
            if not basis._span.contains(comp):
                return GaugeInvarianceReport(False, Element(basis.graph, comp))
    return GaugeInvarianceReport(True)


def is_gauge_invariant(presentation, bound):
    """Whether the truncated span is closed under every grade projection."""
    return _gauge_invariant(closure(presentation, bound))


def ck_isometries_in(basis):
    """All in-box generators s_lam s_mu* that lie in the span, as Generator pairs."""
    graph = basis.graph
    found = []
    for grade in basis.grades():
        for dl in dg.box_by_total(basis.bound):
            dr = dg.sub(dl, grade)
            if not dg.nonneg(dr) or not dg.leq(dr, basis.bound):
                continue
            for v in graph.vertices:
                for lam in paths(graph, v, dl):
                    for mu in paths_by_source(graph, lam.source, dr):
                        if basis.contains(generator(lam, mu)):
                            found.append(Generator(lam, mu))
    return tuple(sorted(found, key=_gen_key))


def _spans_equal(a, b):
    if a.dim != b.dim:
        return False
    return all(b.contains(el) for el in a.elements())


@dataclass
class SpectralReport:
    determined_by_spectrum: bool
    ck_generated: bool
    gauge_invariant: bool
    bound: tuple
    spectrum: OpenSet
    dim: int
    ck_isometries: tuple
    gauge_witness: object = None
    ck_witness: object = None
    determined_witness: object = None  # element of A(spectrum) outside the span

    @property
    def all_true(self):
        return self.determined_by_spectrum and self.ck_generated and self.gauge_invariant

    def summary(self):
        lines = [
            f"spectral check at bound {dg.fmt(self.bound)} (span dimension {self.dim}):",
            f"  determined by spectrum: {self.determined_by_spectrum}",
            f"  generated by its partial isometries: {self.ck_generated}",
            f"  gauge invariant: {self.gauge_invariant}",
        ]
        if self.determined_witness is not None:
            lines.append(f"  witness in A(spectrum) outside the bimodule: {self.determined_witness}")
        if self.gauge_witness is not None:
            lines.append(f"  grade component outside the bimodule: {self.gauge_witness}")
        return "\n".join(lines)


def spectral_check(presentation, bound):
    """Decide the three equivalent conditions at one bound and cross-check them."""
    graph = presentation.graph
    bound = dg.check(bound, graph.rank)
    basis = closure(presentation, bound)

    gauge = _gauge_invariant(basis)

    cks = ck_isometries_in(basis)
    ck_basis = closure(
        BimodulePresentation(graph, tuple(generator(g.left, g.right) for g in cks)), bound
    )
    ck_ok = _spans_equal(ck_basis, basis)
    ck_witness = None
    if not ck_ok:
        for el in basis.elements():
            if not ck_basis.contains(el):
                ck_witness = el
                break

    sigma = basis.support()
    harvested = a_of(sigma, bound)
    for el in basis.elements():
        if not harvested.contains(el):
            raise TheoremViolation(f"bimodule element {el} escapes A(spectrum)")
    det_ok = _spans_equal(harvested, basis)
    det_witness = None
    if not det_ok:
        for el in harvested.elements():
            if not basis.contains(el):
                det_witness = el
                break

    if not (gauge.invariant == ck_ok == det_ok):
        raise TheoremViolation(
            f"trichotomy flags disagree: determined={det_ok} "
            f"ck_generated={ck_ok} gauge_invariant={gauge.invariant}"
        )

    return SpectralReport(
        determined_by_spectrum=det_ok,
        ck_generated=ck_ok,
        gauge_invariant=gauge.invariant,
        bound=bound,
        spectrum=sigma,
        dim=basis.dim,
        ck_isometries=cks,
        gauge_witness=gauge.witness,
        ck_witness=ck_witness,
        determined_witness=det_witness,
    )
