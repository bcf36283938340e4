#!/usr/bin/env python3
"""Survey the bundled example graphs: validation, defining relations, masa status,
and one spectrum trichotomy check per graph.

Usage: python scripts/fixture_survey.py [--json out.json]
"""

import argparse
import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from kgraph import degrees as dg  # noqa: E402
from kgraph.algebra import isometry, projection, verify_ck  # noqa: E402
from kgraph.aperiodicity import masa_verdict  # noqa: E402
from kgraph.bimodules import bimodule, spectral_check  # noqa: E402
from kgraph.fixtures import g1, g2, g3, g4  # noqa: E402
from kgraph.graphs import validate  # noqa: E402
from kgraph.pathspace import make_path  # noqa: E402


def survey():
    rows = []
    setups = [
        ("g1", g1(validated=False), (3,), lambda k: projection(k, "v") + isometry(make_path(k, ["e"]))),
        ("g2", g2(validated=False), (3,), lambda k: isometry(make_path(k, ["a"]))),
        ("g3", g3(validated=False), (2, 2), lambda k: isometry(make_path(k, ["e"]))),
        ("g4", g4(validated=False), (2, 2), lambda k: isometry(make_path(k, ["f"]))),
    ]
    for name, graph, bound, pick in setups:
        report = validate(graph, bound)
        ck = verify_ck(graph, bound)
        depth = tuple(3 for _ in range(graph.rank))
        validate(graph, depth)
        masa = masa_verdict(graph, pmax=2, depth=depth)
        spec = spectral_check(bimodule(graph, pick(graph)), bound)
        rows.append(
            {
                "graph": name,
                "validated": report.ok,
                "bound": list(bound),
                "ck_axioms": ck.ok,
                "masa": masa.status,
                "masa_basis": masa.basis,
                "sample_bimodule_determined": spec.determined_by_spectrum,
            }
        )
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--json", default=None, help="write the survey as JSON")
    args = parser.parse_args()
    rows = survey()
    header = f"{'graph':<6} {'valid':<6} {'ck':<6} {'masa':<8} {'basis':<22} {'sample det.':<11}"
    print(header)
    print("-" * len(header))
    for r in rows:
        print(
            f"{r['graph']:<6} {str(r['validated']):<6} {str(r['ck_axioms']):<6} "
            f"{r['masa']:<8} {r['masa_basis']:<22} {str(r['sample_bimodule_determined']):<11}"
        )
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(rows, sort_keys=True, indent=2) + "\n")
        print(f"wrote {args.json}")


if __name__ == "__main__":
    main()
