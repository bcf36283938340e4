import pytest

from kgraph.algebra import (
    Element,
    adjoint,
    equals,
    generator,
    isometry,
    multiply,
    projection,
)
from kgraph.bimodules import (
    a_of,
    bimodule,
    ck_isometries_in,
    closure,
    is_gauge_invariant,
    spectral_check,
    spectrum,
)
from kgraph.errors import BoundExceeded
from kgraph.groupoid import Cylinder, OpenSet
from kgraph.pathspace import make_path, vertex_path
from kgraph.scalars import qi


def test_closure_single_loop_collapses(k1):
    e = make_path(k1, ["e"])
    basis = closure(bimodule(k1, isometry(e)), (3,))
    assert basis.dim == 1
    assert basis.contains(isometry(e))
    assert basis.contains(generator(make_path(k1, ["e", "e"]), e))


def test_closure_diagonal_splits(k2):
    basis = closure(bimodule(k2, projection(k2, "v")), (1,))
    assert basis.dim == 2
    a, b = make_path(k2, ["a"]), make_path(k2, ["b"])
    assert basis.contains(generator(a, a))
    assert basis.contains(generator(b, b))
    assert basis.contains(projection(k2, "v"))
    assert not basis.contains(isometry(a))


def test_closure_mixed_generator_stays_one_dimensional(k1):
    mixed = projection(k1, "v") + isometry(make_path(k1, ["e"]))
    basis = closure(bimodule(k1, mixed), (2,))
    assert basis.dim == 1
    assert basis.contains(mixed)
    assert not basis.contains(projection(k1, "v"))


def test_closure_rejects_out_of_box_generators(k2):
    big = isometry(make_path(k2, ["a", "a", "a"]))
    with pytest.raises(BoundExceeded):
        closure(bimodule(k2, big), (2,))


def test_closure_requires_validated_bound(k2):
    with pytest.raises(BoundExceeded):
        closure(bimodule(k2, projection(k2, "v")), (9,))


def test_spectrum_examples(k1, k2):
    e = make_path(k1, ["e"])
    v1 = vertex_path(k1, "v")
    mixed = projection(k1, "v") + isometry(e)
    assert spectrum(bimodule(k1, mixed), (2,)) == OpenSet(
        k1, [Cylinder(v1, v1), Cylinder(e, v1)]
    )
    a = make_path(k2, ["a"])
    assert spectrum(bimodule(k2, isometry(a)), (2,)) == OpenSet(
        k2, [Cylinder(a, vertex_path(k2, "v"))]
    )
    assert spectrum(bimodule(k1, Element.zero(k1)), (2,)).is_empty


def test_a_of_examples(k1, k2):
    e = make_path(k1, ["e"])
    v1 = vertex_path(k1, "v")
    basis = a_of(OpenSet(k1, [Cylinder(v1, v1), Cylinder(e, v1)]), (2,))
    assert basis.dim == 2
    assert basis.contains(projection(k1, "v"))
    assert basis.contains(isometry(e))

    assert a_of(OpenSet(k1), (2,)).dim == 0

    a = make_path(k2, ["a"])
    b = make_path(k2, ["b"])
    aa = make_path(k2, ["a", "a"])
    ab = make_path(k2, ["a", "b"])
    basis2 = a_of(OpenSet(k2, [Cylinder(a, a)]), (2,))
    for member in (generator(a, a), generator(aa, aa), generator(ab, ab)):
        assert basis2.contains(member)
    assert not basis2.contains(generator(b, b))
    assert basis2.support() == OpenSet(k2, [Cylinder(a, a)])


def test_bimodule_always_inside_a_of_spectrum(k1, k2):
    for graph, gens in (
        (k1, (projection(k1, "v") + isometry(make_path(k1, ["e"])),)),
        (k2, (isometry(make_path(k2, ["a"])), generator(make_path(k2, ["a"]), make_path(k2, ["b"])))),
    ):
        basis = closure(bimodule(graph, *gens), (2,))
        harvested = a_of(basis.support(), (2,))
        for el in basis.elements():
            assert harvested.contains(el)


def test_gauge_invariance_examples(k1, k2):
    mixed = projection(k1, "v") + isometry(make_path(k1, ["e"]))
    report = is_gauge_invariant(bimodule(k1, mixed), (3,))
    assert not report.invariant
    assert equals(report.witness, projection(k1, "v")) or equals(
        report.witness, isometry(make_path(k1, ["e"]))
    )
    a, b = make_path(k2, ["a"]), make_path(k2, ["b"])
    assert is_gauge_invariant(bimodule(k2, isometry(a), isometry(b)), (2,)).invariant
    assert is_gauge_invariant(bimodule(k2, generator(a, b)), (2,)).invariant


def test_ck_isometries_examples(k1, k2):
    mixed = projection(k1, "v") + isometry(make_path(k1, ["e"]))
    assert ck_isometries_in(closure(bimodule(k1, mixed), (2,))) == ()

    a, b = make_path(k2, ["a"]), make_path(k2, ["b"])
    found = ck_isometries_in(closure(bimodule(k2, isometry(a), isometry(b)), (1,)))
    words = {(g.left.word(), g.right.word()) for g in found}
    assert ("a", "v") in words and ("b", "v") in words

    e = make_path(k1, ["e"])
    found1 = ck_isometries_in(closure(bimodule(k1, isometry(e)), (3,)))
    words1 = {(g.left.word(), g.right.word()) for g in found1}
    assert ("e", "v") in words1 and ("e.e", "e") in words1 and ("e.e.e", "e.e") in words1
    # all of them are the same element
    for g in found1:
        assert equals(generator(g.left, g.right), isometry(e))


def test_spectral_check_counterexample(k1):
    mixed = projection(k1, "v") + isometry(make_path(k1, ["e"]))
    report = spectral_check(bimodule(k1, mixed), (3,))
    assert not report.determined_by_spectrum
    assert not report.ck_generated
    assert not report.gauge_invariant
    assert report.determined_witness is not None
    assert equals(report.determined_witness, projection(k1, "v"))


def test_spectral_check_homogeneous(k2):
    a, b = make_path(k2, ["a"]), make_path(k2, ["b"])
    pres = bimodule(k2, isometry(a), multiply(isometry(b), adjoint(isometry(a))))
    report = spectral_check(pres, (3,))
    assert report.all_true


def test_spectral_check_diagonal(k1, k3):
    assert spectral_check(bimodule(k1, projection(k1, "v")), (2,)).all_true
    assert spectral_check(bimodule(k3, projection(k3, "v")), (2, 2)).all_true


def test_slice_decomposition_for_invariant_bimodules(k2):
    # each grade slice of an invariant bimodule splits into its coordinate generators
    a, b = make_path(k2, ["a"]), make_path(k2, ["b"])
    basis = closure(bimodule(k2, isometry(a) + isometry(b)), (2,))
    report = is_gauge_invariant(bimodule(k2, isometry(a) + isometry(b)), (2,))
    if report.invariant:
        for vec in basis._span.vectors():
            for gen in vec:
                assert basis.contains(generator(gen.left, gen.right))


def test_scaled_generators_span_same_bimodule(k2):
    a = make_path(k2, ["a"])
    b1 = closure(bimodule(k2, isometry(a).scale(qi(0, 2))), (2,))
    b2 = closure(bimodule(k2, isometry(a)), (2,))
    assert b1.dim == b2.dim
    for el in b1.elements():
        assert b2.contains(el)
