"""The four example graphs used throughout the test suite.

g1: one vertex, one loop (rank 1)
g2: one vertex, two loops (rank 1)
g3: one vertex, one loop of each color, commuting (rank 2 torus)
g4: one vertex, two color-1 loops and one color-2 loop that swaps them (rank 2 flip)
"""

from __future__ import annotations

from . import degrees as dg
from .graphs import build_kgraph, validate


def g1(validated=True, bound=None):
    graph = build_kgraph(1, ["v"], [("e", 1, "v", "v")])
    if validated:
        validate(graph, bound or (2,))
    return graph


def g2(validated=True, bound=None):
    graph = build_kgraph(1, ["v"], [("a", 1, "v", "v"), ("b", 1, "v", "v")])
    if validated:
        validate(graph, bound or (2,))
    return graph


def g3(validated=True, bound=None):
    graph = build_kgraph(
        2,
        ["v"],
        [("e", 1, "v", "v"), ("f", 2, "v", "v")],
        [("e", "f", "f", "e")],
    )
    if validated:
        validate(graph, bound or (2, 2))
    return graph


def g4(validated=True, bound=None):
    graph = build_kgraph(
        2,
        ["v"],
        [("a", 1, "v", "v"), ("b", 1, "v", "v"), ("f", 2, "v", "v")],
        [("a", "f", "f", "b"), ("b", "f", "f", "a")],
    )
    if validated:
        validate(graph, bound or (2, 2))
    return graph


def mutated_g4():
    """g4 with a broken square table: both squares share the right side (f, b)."""
    return build_kgraph(
        2,
        ["v"],
        [("a", 1, "v", "v"), ("b", 1, "v", "v"), ("f", 2, "v", "v")],
        [("a", "f", "f", "b"), ("b", "f", "f", "b")],
    )


FIXTURES = {"g1": g1, "g2": g2, "g3": g3, "g4": g4}


def default_bound(graph):
    return dg.zero(graph.rank) if graph.rank == 0 else tuple(2 for _ in range(graph.rank))
