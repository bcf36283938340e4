"""Expression grammar for algebra elements over a named graph.

    expr     := ['-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := scalar | 's(' pathword ')' | 'adj(' expr ')' | '(' expr ')'
    pathword := id ('.' id)*
    scalar   := number ['/' number] ['i'] | 'i'

A scalar standing alone denotes that multiple of the unit (the sum of all
vertex projections; graphs here are finite).  Within s(...), ids name edges,
or a single vertex for a degree-zero path.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import Element, generator, unit
from .errors import ExprError, KGraphError
from .pathspace import make_path, vertex_path
from .scalars import QQi, qi

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/().]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ExprError(f"unexpected character {text[pos]!r}", pos)
            break
        if m.group("num"):
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("id"):
            tokens.append(("id", m.group("id"), m.start("id")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, graph):
        self.text = text
        self.graph = graph
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value):
        kind, val, at = self.next()
        if val != value:
            raise ExprError(f"expected {value!r}, found {val or 'end of input'!r}", at)

    def parse(self):
        value = self.expr()
        kind, val, at = self.peek()
        if kind != "eof":
            raise ExprError(f"trailing input {val!r}", at)
        if isinstance(value, QQi):
            value = unit(self.graph).scale(value)
        return value

    def expr(self):
        negate = False
        if self.peek()[1] == "-":
            self.next()
            negate = True
        value = self.term()
        if negate:
            value = -value if isinstance(value, QQi) else value.scale(qi(-1))
        while self.peek()[1] in ("+", "-"):
            op = self.next()[1]
            rhs = self.term()
            value, rhs = self._lift_pair(value, rhs)
            if op == "+":
                value = value + rhs
            else:
                value = value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[1] == "*":
            self.next()
            rhs = self.factor()
            value = self._mul(value, rhs)
        return value

    def _lift_pair(self, a, b):
        if isinstance(a, QQi) and isinstance(b, Element):
            a = unit(self.graph).scale(a)
        elif isinstance(b, QQi) and isinstance(a, Element):
            b = unit(self.graph).scale(b)
        return a, b

    def _mul(self, a, b):
        if isinstance(a, QQi) and isinstance(b, QQi):
            return a * b
        if isinstance(a, QQi):
            return b.scale(a)
        if isinstance(b, QQi):
            return a.scale(b)
        return a * b

    def factor(self):
        kind, val, at = self.peek()
        if kind == "num":
            return self.scalar()
        if kind == "id" and val == "i":
            self.next()
            return qi(0, 1)
        if kind == "id" and val == "s":
            self.next()
            self.expect("(")
            path = self.pathword()
            self.expect(")")
            return generator(path, vertex_path(self.graph, path.source))
        if kind == "id" and val == "adj":
            self.next()
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            if isinstance(inner, QQi):
                return inner.conjugate()
            return inner.adjoint()
        if val == "(":
            self.next()
            inner = self.expr()
            self.expect(")")
            return inner
        raise ExprError(f"expected a factor, found {val or 'end of input'!r}", at)

    def scalar(self):
        kind, val, at = self.next()
        num = int(val)
        den = 1
        if self.peek()[1] == "/":
            self.next()
            kind, val, at2 = self.next()
            if kind != "num":
                raise ExprError("expected a denominator", at2)
            den = int(val)
            if den == 0:
                raise ExprError("zero denominator", at2)
        kind, val, _ = self.peek()
        if kind == "id" and val == "i":
            self.next()
            return qi(0, Fraction(num, den))
        return qi(Fraction(num, den))

    def pathword(self):
        kind, val, at = self.next()
        if kind != "id":
            raise ExprError(f"expected an edge or vertex id, found {val!r}", at)
        ids = [val]
        while self.peek()[1] == ".":
            self.next()
            kind, val, at = self.next()
            if kind != "id":
                raise ExprError(f"expected an edge id, found {val!r}", at)
            ids.append(val)
        if len(ids) == 1 and self.graph.is_vertex(ids[0]):
            return vertex_path(self.graph, ids[0])
        for eid in ids:
            if eid not in self.graph.edges:
                raise ExprError(f"unknown edge {eid!r}", at)
        try:
            return make_path(self.graph, ids)
        except KGraphError as exc:
            raise ExprError(f"bad path word {'.'.join(ids)}: {exc}", at)


def parse_element(text, graph):
    """Parse an expression into an Element of the graph's algebra."""
    return _Parser(text, graph).parse()
