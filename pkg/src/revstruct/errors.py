"""Exception hierarchy shared by every module of the workbench."""

from __future__ import annotations


class RevStructError(Exception):
    """Base class for all domain errors."""


class EmptyGate(RevStructError):
    def __init__(self, message: str = "gate has neither inputs nor outputs"):
        super().__init__(message)


class BadMultiplicity(RevStructError):
    def __init__(self, multiplicity: int):
        super().__init__(f"multiplicity must be >= 1, got {multiplicity}")
        self.multiplicity = multiplicity


class SourceError(RevStructError):
    """Malformed text input; ``line`` and ``column`` are 1-based."""

    def __init__(self, line: int, column: int, message: str, expected=()):
        self.line = line
        self.column = column
        self.message = message
        self.expected = frozenset(expected)
        detail = f"{line}:{column}: {message}"
        if self.expected:
            detail += " (expected one of: " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(detail)


class DuplicateMarker(SourceError):
    def __init__(self, line: int, column: int):
        super().__init__(line, column, "second '^' marker in one gate")


class NotEnabled(RevStructError):
    """A step cannot fire. ``index`` is the 1-based trace position, if known."""

    def __init__(self, message: str, index: int | None = None):
        self.index = index
        self.reason = message
        if index is not None:
            message = f"step {index}: {message}"
        super().__init__(message)


class NotIndependent(RevStructError):
    pass


class NotEnabledAfterSwap(RevStructError):
    pass


class NotConverse(RevStructError):
    pass


class TraceTooLong(RevStructError):
    def __init__(self, length: int, bound: int):
        super().__init__(f"trace length {length} exceeds bound {bound}")
        self.length = length
        self.bound = bound


class MalformedQuery(RevStructError):
    pass


class NotLinear(RevStructError):
    def __init__(self, name: str):
        super().__init__(f"name {name!r} is used more than once as input or as output")
        self.name = name


class Inconclusive(RevStructError):
    """An exhaustive search hit its state bound before deciding."""

    def __init__(self, bound: int, explored: int | None = None):
        super().__init__(f"state bound {bound} reached; no verdict")
        self.bound = bound
        self.explored = bound if explored is None else explored
