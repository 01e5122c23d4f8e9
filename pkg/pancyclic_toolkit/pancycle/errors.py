"""Exception hierarchy.

Library code raises these; only the CLI turns them into exit codes.
"""

from __future__ import annotations


class PancycleError(Exception):
    """Base class for every error raised by the package."""


# ── graph-core ───────────────────────────────────────────────────────────


class GraphError(PancycleError):
    """A graph could not be built or transformed."""


class InvalidVertexError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class CapacityError(GraphError):
    pass


class NotAnEdgeError(GraphError):
    pass


class Graph6ParseError(GraphError):
    """Malformed graph6 text.  ``offset`` is the byte index of the fault."""

    def __init__(self, message: str, offset: int, line: int | None = None):
        self.reason = message
        self.offset = offset
        self.line = line
        where = f"byte {offset}" if line is None else f"line {line}, byte {offset}"
        super().__init__(f"{message} ({where})")


# ── parameters and preconditions ─────────────────────────────────────────


class UndefinedParameterError(PancycleError):
    pass


class PreconditionError(PancycleError):
    pass


class FamilyParameterError(PancycleError):
    pass


# ── enumeration and verification ─────────────────────────────────────────


class BudgetError(PancycleError):
    """Refused up front: the requested work exceeds a configured budget."""

    def __init__(self, message: str, estimate: int | None = None):
        self.estimate = estimate
        super().__init__(message)


class PredicateMisuseError(PancycleError):
    pass


class MergeError(PancycleError):
    pass


class CheckSpecError(PancycleError):
    pass
