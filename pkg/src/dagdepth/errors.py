"""Exception types raised by the library."""

from __future__ import annotations


class DagDepthError(ValueError):
    """Base class for all library errors."""


class ParseError(DagDepthError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += source
        if line is not None:
            where += f":{line}" if where else f"line {line}"
        super().__init__(f"{where}: {message}" if where else message)


class SizeLimitError(DagDepthError):
    """The input is larger than the configured exact-computation limit."""


class UnknownVertexError(DagDepthError):
    pass


class NotADagError(DagDepthError):
    pass


class MalformedDecompositionError(DagDepthError):
    """The decomposition does not fit the digraph (org map, acyclicity)."""


class IllegalMoveError(DagDepthError):
    def __init__(self, message: str, turn: int):
        self.turn = turn
        super().__init__(f"turn {turn}: {message}")
