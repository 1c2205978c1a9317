"""Exception hierarchy shared by every module."""

from __future__ import annotations


class HrushovskiError(Exception):
    """Base class for all library errors."""


class GraphError(HrushovskiError, ValueError):
    """Malformed graph: loops, dangling edge endpoints, duplicate edges."""


class UnknownVertexError(GraphError, KeyError):
    def __init__(self, vertices):
        self.vertices = tuple(sorted(str(v) for v in vertices))
        super().__init__(f"unknown vertex: {', '.join(self.vertices)}")

    def __str__(self):
        return self.args[0]


class OrientationError(HrushovskiError, ValueError):
    """An arc set that is not an orientation of its base graph."""


class CapExceeded(HrushovskiError):
    """An exhaustive routine was asked to run above its size cap."""


class SearchBudgetExceeded(HrushovskiError):
    """A backtracking search visited more nodes than its budget allows."""


class UndecidableComparison(HrushovskiError, ArithmeticError):
    """Certified intervals still straddle the comparison at maximum precision."""


class PreconditionError(HrushovskiError, ValueError):
    """A documented precondition failed; ``certificate`` carries the evidence."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class ParseError(HrushovskiError, ValueError):
    def __init__(self, source, line, reason):
        self.source = source
        self.line = line
        self.reason = reason
        super().__init__(f"{source}:{line}: {reason}")
