import random

import pytest
from hypothesis import settings

from kgraph import build_kgraph, validate
from kgraph.fixtures import g1, g2, g3, g4

settings.register_profile("suite", deadline=None, max_examples=30)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def k1():
    return g1(bound=(4,))


@pytest.fixture(scope="session")
def k2():
    return g2(bound=(4,))


@pytest.fixture(scope="session")
def k3():
    return g3(bound=(3, 3))


@pytest.fixture(scope="session")
def k4():
    return g4(bound=(3, 3))


def random_rank1_graph(rng, max_vertices=4, validate_bound=(9,)):
    """A random rank-1 graph with no sources (every vertex receives an edge)."""
    nv = rng.randint(1, max_vertices)
    vertices = [f"v{i}" for i in range(nv)]
    edges = []
    counter = 0
    for v in vertices:
        counter += 1
        edges.append((f"e{counter}", 1, rng.choice(vertices), v))
    for _ in range(rng.randint(0, 3)):
        counter += 1
        edges.append((f"e{counter}", 1, rng.choice(vertices), rng.choice(vertices)))
    graph = build_kgraph(1, vertices, edges)
    report = validate(graph, validate_bound)
    assert report.ok
    return graph


def seeded(seed):
    return random.Random(seed)
