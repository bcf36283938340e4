"""Line-oriented graph description files.

    kgraph rank <k>
    vertex <id>
    edge <id> color <1..k> source <v> range <w>
    square <e> <f> = <f2> <e2>      # path identity e.f == f2.e2

'#' starts a comment; blank lines are ignored.  Printing a parsed graph and
re-parsing it reproduces the same structure.
"""

from __future__ import annotations

import os

from . import degrees as dg
from .errors import (
    GraphSemanticError,
    GraphSyntaxError,
    KGraphError,
    ValidationFailure,
)
from .graphs import build_kgraph, validate

ENV_DEFAULT_BOUND = "KGRAPH_DEFAULT_BOUND"


def parse_graph_text(text, strict=False):
    """Build an (unvalidated) graph from description text."""
    rank = None
    vertices = []
    edges = []
    squares = []
    square_lines = {}
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]

        def syntax(msg, token_index=0):
            col = raw.find(tokens[token_index]) + 1 if token_index < len(tokens) else 1
            raise GraphSyntaxError(msg, lineno, col)

        if head == "kgraph":
            if len(tokens) != 3 or tokens[1] != "rank":
                syntax("expected 'kgraph rank <k>'")
            if rank is not None:
                syntax("duplicate kgraph directive")
            try:
                rank = int(tokens[2])
            except ValueError:
                syntax(f"rank must be an integer, got {tokens[2]!r}", 2)
            if rank < 1:
                syntax("rank must be positive", 2)
        elif head == "vertex":
            if rank is None:
                syntax("kgraph directive must come first")
            if len(tokens) != 2:
                syntax("expected 'vertex <id>'")
            if tokens[1] in seen:
                raise GraphSemanticError(f"duplicate id {tokens[1]!r}", lineno)
            seen.add(tokens[1])
            vertices.append(tokens[1])
        elif head == "edge":
            if rank is None:
                syntax("kgraph directive must come first")
            if (
                len(tokens) != 8
                or tokens[2] != "color"
                or tokens[4] != "source"
                or tokens[6] != "range"
            ):
                syntax("expected 'edge <id> color <c> source <v> range <w>'")
            eid = tokens[1]
            if eid in seen:
                raise GraphSemanticError(f"duplicate id {eid!r}", lineno)
            try:
                color = int(tokens[3])
            except ValueError:
                syntax(f"color must be an integer, got {tokens[3]!r}", 3)
            if not 1 <= color <= rank:
                raise GraphSemanticError(f"color {color} out of range 1..{rank}", lineno)
            for v in (tokens[5], tokens[7]):
                if v not in vertices:
                    raise GraphSemanticError(f"unknown vertex {v!r}", lineno)
            seen.add(eid)
            edges.append((eid, color, tokens[5], tokens[7]))
        elif head == "square":
            if rank is None:
                syntax("kgraph directive must come first")
            if len(tokens) != 6 or tokens[3] != "=":
                syntax("expected 'square <e> <f> = <f2> <e2>'")
            eids = {e[0] for e in edges}
            for eid in (tokens[1], tokens[2], tokens[4], tokens[5]):
                if eid not in eids:
                    raise GraphSemanticError(f"square references unknown edge {eid!r}", lineno)
            square = (tokens[1], tokens[2], tokens[4], tokens[5])
            squares.append(square)
            square_lines[square] = lineno
        else:
            syntax(f"unknown directive {head!r}")
    if rank is None:
        raise GraphSyntaxError("missing 'kgraph rank <k>' directive", 1, 1)
    try:
        return build_kgraph(rank, vertices, edges, squares, strict=strict)
    except KGraphError as exc:
        raise GraphSemanticError(str(exc))


def print_graph(graph):
    """Canonical description text; deterministic and re-parseable."""
    lines = [f"kgraph rank {graph.rank}"]
    for v in graph.vertices:
        lines.append(f"vertex {v}")
    for e in graph.edges.values():
        lines.append(f"edge {e.eid} color {e.color} source {e.source} range {e.range}")
    for s in graph.squares:
        lines.append(f"square {s.e} {s.f} = {s.f2} {s.e2}")
    return "\n".join(lines) + "\n"


def default_validation_bound(rank):
    env = os.environ.get(ENV_DEFAULT_BOUND)
    if env:
        return dg.parse(env, rank)
    return tuple(2 for _ in range(rank))


def parse_graph(path, bound=None, do_validate=True, strict=False):
    """Load, build and (by default) validate a graph file.

    Returns (graph, report); raises ValidationFailure when validation fails.
    """
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    graph = parse_graph_text(text, strict=strict)
    report = None
    if do_validate:
        if bound is None:
            bound = default_validation_bound(graph.rank)
        report = validate(graph, bound)
        if not report.ok:
            raise ValidationFailure(report)
    return graph, report
