#!/usr/bin/env python3
"""Cross-validate the exact rank-1 masa criterion against the bounded searches.

Generates random rank-1 graphs without sources and checks that the
loop-entrance verdict, the bounded aperiodicity search and the isotropy
interior search never disagree.

Usage: python scripts/rank1_coherence.py [--count 100] [--seed 7]
"""

import argparse
import os
import random
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from kgraph.aperiodicity import (  # noqa: E402
    aperiodicity_check,
    isotropy_interior_check,
    loop_entrance_check,
)
from kgraph.graphs import build_kgraph, validate  # noqa: E402


def random_graph(rng, max_vertices=4):
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
    validate(graph, (9,))
    return graph


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=100)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--pmax", type=int, default=4)
    parser.add_argument("--depth", type=int, default=9)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    tallies = {"yes": 0, "no": 0}
    for i in range(args.count):
        graph = random_graph(rng)
        exact = loop_entrance_check(graph)
        ap = aperiodicity_check(graph, args.pmax, (args.depth,))
        iso = isotropy_interior_check(graph, (4,))
        ok = (
            (exact.status == "yes" and ap.status == "aperiodic" and not iso.found)
            or (exact.status == "no" and ap.status == "periodic")
        )
        if iso.found and exact.status != "no":
            ok = False
        tallies[exact.status] += 1
        if not ok:
            print(f"DISAGREEMENT on graph {i}:")
            print(f"  loop-entrance: {exact.status} ({exact.detail})")
            print(f"  aperiodicity: {ap.status}")
            print(f"  isotropy found: {iso.found}")
            for e in graph.edges.values():
                print(f"  edge {e.eid}: {e.source} -> {e.range}")
            return 1
    print(
        f"{args.count} graphs checked, no disagreement "
        f"(masa yes: {tallies['yes']}, masa no: {tallies['no']})"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
