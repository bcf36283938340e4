"""Command-line front end.

One subcommand per library capability: validate, paths, eval, spectrum, a-of,
spectral-check, aperiodicity, masa.  Human-readable text goes to stdout; a
machine-readable JSON report is written behind --json.  Exit codes: 0 for any
computed verdict (including unknown), 1 for usage or input errors, 2 for
validation failure.

The JSON report is byte-identical across runs on identical inputs; wall-clock
timing therefore appears only in the human output and the timing_ms field is
always null.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import degrees as dg
from .aperiodicity import aperiodicity_check, masa_verdict
from .algebra import normal_form
from .bimodules import a_of, bimodule, closure, spectral_check
from .errors import KGraphError, ValidationFailure
from .graphio import default_validation_bound, parse_graph
from .grammar import parse_element
from .groupoid import Cylinder, OpenSet
from .graphs import validate
from .pathspace import make_path, paths, vertex_path


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _deg(value):
    return list(value)


def _report(command, graph_path, graph, bounds, verdicts, certificates):
    return {
        "command": command,
        "graph": {
            "path": graph_path,
            "rank": graph.rank,
            "vertices": len(graph.vertices),
            "edges": len(graph.edges),
            "squares": len(graph.squares),
        },
        "bounds": bounds,
        "verdicts": verdicts,
        "certificates": certificates,
        "timing_ms": None,
    }


def _load(args):
    bound = None
    if getattr(args, "bound", None):
        # the bound flag doubles as the validation bound
        with open(args.file, "r", encoding="utf-8") as fh:
            head = fh.read()
        from .graphio import parse_graph_text

        probe = parse_graph_text(head)
        bound = dg.parse(args.bound, probe.rank)
    graph, report = parse_graph(args.file, bound=bound)
    return graph, report


def _parse_cylinders(text, graph):
    cyls = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "," not in chunk:
            raise UsageError(f"cylinder {chunk!r} must be 'leftword,rightword'")
        lw, rw = (part.strip() for part in chunk.split(",", 1))
        cyls.append(Cylinder(_parse_word(lw, graph), _parse_word(rw, graph)))
    return OpenSet(graph, cyls)


def _parse_word(word, graph):
    ids = [s.strip() for s in word.split(".")]
    if len(ids) == 1 and graph.is_vertex(ids[0]):
        return vertex_path(graph, ids[0])
    return make_path(graph, ids)


def _cyl_json(c):
    return [c.left.word(), c.right.word()]


def cmd_validate(args):
    with open(args.file, "r", encoding="utf-8") as fh:
        text = fh.read()
    from .graphio import parse_graph_text

    graph = parse_graph_text(text)
    bound = dg.parse(args.bound, graph.rank) if args.bound else default_validation_bound(graph.rank)
    report = validate(graph, bound)
    human = [report.summary()]
    verdicts = [
        {"check": "no-sources", "ok": not report.source_failures},
        {"check": "square-bijectivity", "ok": not report.square_failures},
        {"check": "unique-factorization", "ok": not report.factorization_failures},
        {"check": "overall", "ok": report.ok},
    ]
    certificates = (
        [{"kind": "no-sources", "vertex": v, "color": c} for v, c in report.source_failures]
        + [{"kind": "squares", "detail": msg} for msg in report.square_failures]
        + [
            {
                "kind": "factorization",
                "vertex": f.vertex,
                "path": list(f.path_word),
                "degree": _deg(f.degree),
                "split": _deg(f.split),
                "count": f.count,
                "note": f.note,
            }
            for f in report.factorization_failures
        ]
    )
    rep = _report(
        ["validate", args.file],
        args.file,
        graph,
        {"validation": _deg(bound)},
        verdicts,
        certificates,
    )
    return (0 if report.ok else 2), rep, human


def cmd_paths(args):
    graph, _ = _load(args)
    n = dg.parse(args.degree, graph.rank)
    found = paths(graph, args.vertex, n)
    human = [f"{len(found)} path(s) of degree {dg.fmt(n)} from {args.vertex}:"]
    human += [f"  {p.word()}" for p in found]
    rep = _report(
        ["paths", args.file, "--vertex", args.vertex, "--degree", args.degree],
        args.file,
        graph,
        {"degree": _deg(n)},
        [{"vertex": args.vertex, "degree": _deg(n), "count": len(found)}],
        [{"kind": "path", "word": p.word()} for p in found],
    )
    return 0, rep, human


def cmd_eval(args):
    graph, _ = _load(args)
    element = parse_element(args.expr, graph)
    nf = normal_form(element)
    human = ["normal form:", str(nf) if not nf.is_zero() else "0"]
    blocks = []
    for grade in sorted(nf.blocks):
        p, coeffs = nf.blocks[grade]
        terms = [
            {"left": g.left.word(), "right": g.right.word(), "coefficient": str(c)}
            for g, c in sorted(coeffs.items(), key=lambda kv: kv[0].sort_key)
        ]
        blocks.append({"grade": _deg(grade), "left_degree": _deg(p), "terms": terms})
    rep = _report(
        ["eval", args.file, "--expr", args.expr],
        args.file,
        graph,
        {},
        [{"zero": nf.is_zero(), "grades": len(blocks)}],
        blocks,
    )
    return 0, rep, human


def _gens_from_args(args, graph):
    elements = []
    for chunk in args.gens.split(";"):
        chunk = chunk.strip()
        if chunk:
            elements.append(parse_element(chunk, graph))
    return bimodule(graph, *elements)


def cmd_spectrum(args):
    graph, _ = _load(args)
    bound = dg.parse(args.bound, graph.rank) if args.bound else default_validation_bound(graph.rank)
    graph.require_validated(bound)
    pres = _gens_from_args(args, graph)
    basis = closure(pres, bound)
    sigma = basis.support()
    human = [f"spectrum at bound {dg.fmt(bound)} (span dimension {basis.dim}): {sigma}"]
    rep = _report(
        ["spectrum", args.file, "--gens", args.gens, "--bound", dg.fmt(bound)],
        args.file,
        graph,
        {"bound": _deg(bound)},
        [{"dimension": basis.dim, "cylinders": len(sigma.cylinders())}],
        [{"kind": "cylinder", "sides": _cyl_json(c), "grade": _deg(c.grade)} for c in sigma.cylinders()],
    )
    return 0, rep, human


def cmd_a_of(args):
    graph, _ = _load(args)
    bound = dg.parse(args.bound, graph.rank) if args.bound else default_validation_bound(graph.rank)
    graph.require_validated(bound)
    open_set = _parse_cylinders(args.cylinders, graph)
    basis = a_of(open_set, bound)
    recovered = basis.support() == open_set
    human = [
        f"A(P) at bound {dg.fmt(bound)}: dimension {basis.dim}",
        f"spectrum recovers P exactly: {recovered}",
    ]
    human += [f"  {el}" for el in basis.elements()]
    rep = _report(
        ["a-of", args.file, "--cylinders", args.cylinders, "--bound", dg.fmt(bound)],
        args.file,
        graph,
        {"bound": _deg(bound)},
        [{"dimension": basis.dim, "spectrum_equals_input": recovered}],
        [{"kind": "basis-element", "element": str(el)} for el in basis.elements()],
    )
    return 0, rep, human


def cmd_spectral_check(args):
    graph, _ = _load(args)
    bound = dg.parse(args.bound, graph.rank) if args.bound else default_validation_bound(graph.rank)
    graph.require_validated(bound)
    pres = _gens_from_args(args, graph)
    report = spectral_check(pres, bound)
    human = [report.summary()]
    certificates = [
        {"kind": "spectrum-cylinder", "sides": _cyl_json(c), "grade": _deg(c.grade)}
        for c in report.spectrum.cylinders()
    ]
    if report.determined_witness is not None:
        certificates.append(
            {"kind": "witness-outside-bimodule", "element": str(report.determined_witness)}
        )
    if report.gauge_witness is not None:
        certificates.append(
            {"kind": "grade-component-outside-bimodule", "element": str(report.gauge_witness)}
        )
    rep = _report(
        ["spectral-check", args.file, "--gens", args.gens, "--bound", dg.fmt(bound)],
        args.file,
        graph,
        {"bound": _deg(bound)},
        [
            {"name": "determined_by_spectrum", "value": report.determined_by_spectrum},
            {"name": "ck_generated", "value": report.ck_generated},
            {"name": "gauge_invariant", "value": report.gauge_invariant},
            {"name": "dimension", "value": report.dim},
        ],
        certificates,
    )
    return 0, rep, human


def cmd_aperiodicity(args):
    graph, _ = _load(args)
    depth = dg.parse(args.depth, graph.rank) if args.depth else tuple(3 for _ in range(graph.rank))
    validate(graph, depth)
    verdict = aperiodicity_check(graph, args.pmax, depth)
    human = [verdict.summary()]
    certificates = []
    if verdict.certificate:
        certificates.append(
            {
                "kind": "period-certificate",
                "vertex": verdict.certificate.vertex,
                "period": _deg(verdict.certificate.period),
                "witness": str(verdict.certificate.witness),
            }
        )
    for (v, p), lam in sorted(verdict.breaking.items()):
        certificates.append(
            {"kind": "breaking-path", "vertex": v, "period": _deg(p), "path": lam.word()}
        )
    rep = _report(
        ["aperiodicity", args.file, "--pmax", str(args.pmax), "--depth", dg.fmt(depth)],
        args.file,
        graph,
        {"pmax": args.pmax, "depth": _deg(depth)},
        [{"status": verdict.status, "unresolved": len(verdict.unresolved)}],
        certificates,
    )
    return 0, rep, human


def cmd_masa(args):
    graph, _ = _load(args)
    depth = dg.parse(args.depth, graph.rank) if args.depth else tuple(3 for _ in range(graph.rank))
    validate(graph, depth)
    verdict = masa_verdict(graph, pmax=args.pmax, depth=depth)
    human = [f"masa: {verdict.summary()}"]
    certificates = []
    if verdict.cycle:
        certificates.append({"kind": "entranceless-loop", "edges": list(verdict.cycle)})
    if verdict.period_certificate:
        certificates.append(
            {
                "kind": "period-certificate",
                "vertex": verdict.period_certificate.vertex,
                "period": _deg(verdict.period_certificate.period),
                "witness": str(verdict.period_certificate.witness),
            }
        )
    if verdict.isotropy and verdict.isotropy.found:
        certificates.append(
            {
                "kind": "isotropy-cylinder",
                "sides": _cyl_json(verdict.isotropy.cylinder),
                "grade": _deg(verdict.isotropy.cylinder.grade),
            }
        )
    rep = _report(
        ["masa", args.file, "--pmax", str(args.pmax), "--depth", dg.fmt(depth)],
        args.file,
        graph,
        {"pmax": args.pmax, "depth": _deg(depth)},
        [{"status": verdict.status, "basis": verdict.basis}],
        certificates,
    )
    return 0, rep, human


def build_parser():
    parser = _Parser(prog="kgraph", description="Exact computation in finite rank-k graph algebras")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p, bound_flag=True):
        p.add_argument("file", help="graph description file")
        p.add_argument("--json", dest="json_path", default=None, help="write a JSON report here")
        if bound_flag:
            p.add_argument("--bound", default=None, help="degree bound, comma separated")

    p = sub.add_parser("validate", help="check the rank-k graph axioms up to a bound")
    common(p)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("paths", help="list all paths of one degree from a vertex")
    common(p)
    p.add_argument("--vertex", required=True)
    p.add_argument("--degree", required=True)
    p.set_defaults(fn=cmd_paths)

    p = sub.add_parser("eval", help="evaluate an expression and print its normal form")
    common(p)
    p.add_argument("--expr", required=True)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("spectrum", help="spectrum of the bimodule generated by expressions")
    common(p)
    p.add_argument("--gens", required=True, help="semicolon-separated expressions")
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("a-of", help="largest bimodule supported in a cylinder union")
    common(p)
    p.add_argument(
        "--cylinders", required=True, help="semicolon-separated 'leftword,rightword' pairs"
    )
    p.set_defaults(fn=cmd_a_of)

    p = sub.add_parser("spectral-check", help="decide the spectrum trichotomy for a bimodule")
    common(p)
    p.add_argument("--gens", required=True, help="semicolon-separated expressions")
    p.set_defaults(fn=cmd_spectral_check)

    p = sub.add_parser("aperiodicity", help="bounded aperiodicity search with certificates")
    common(p, bound_flag=False)
    p.add_argument("--pmax", type=int, default=2)
    p.add_argument("--depth", default=None)
    p.set_defaults(fn=cmd_aperiodicity)

    p = sub.add_parser("masa", help="is the diagonal maximal abelian?")
    common(p, bound_flag=False)
    p.add_argument("--pmax", type=int, default=2)
    p.add_argument("--depth", default=None)
    p.set_defaults(fn=cmd_masa)

    return parser


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    started = time.perf_counter()
    try:
        args = parser.parse_args(argv)
        code, report, human = args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ValidationFailure as exc:
        print(exc.report.summary(), file=sys.stderr)
        return 2
    except (KGraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    for line in human:
        print(line)
    print(f"elapsed: {elapsed_ms:.1f} ms")
    if args.json_path:
        payload = json.dumps(report, sort_keys=True, indent=2) + "\n"
        with open(args.json_path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
