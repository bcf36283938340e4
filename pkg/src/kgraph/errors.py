"""Exception types shared across the package."""


class KGraphError(Exception):
    """Base class for all library errors."""


class DuplicateId(KGraphError):
    pass


class ColorOutOfRange(KGraphError):
    pass


class DanglingVertexReference(KGraphError):
    pass


class MalformedSquare(KGraphError):
    pass


class NotComposable(KGraphError):
    pass


class DegreeOutOfRange(KGraphError):
    pass


class BadInterval(KGraphError):
    pass


class BoundExceeded(KGraphError):
    pass


class SourceMismatch(KGraphError):
    pass


class GraphMismatch(KGraphError):
    pass


class NonUnimodular(KGraphError):
    pass


class RankMismatch(KGraphError):
    pass


class InvalidPoint(KGraphError):
    pass


class TheoremViolation(KGraphError):
    """Internal coherence tripwire; must never fire on a validated graph."""


class ExprError(KGraphError):
    """Expression syntax or semantics error, with character position."""

    def __init__(self, message, pos=None):
        super().__init__(message if pos is None else f"{message} (at position {pos})")
        self.pos = pos


class GraphSyntaxError(KGraphError):
    def __init__(self, message, line, col=0):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class GraphSemanticError(KGraphError):
    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class ValidationFailure(KGraphError):
    """Raised when a graph file fails validation at load time; carries the report."""

    def __init__(self, report):
        super().__init__(f"graph failed validation at bound {report.bound}")
        self.report = report
