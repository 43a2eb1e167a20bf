"""Exception hierarchy shared by every module."""

from __future__ import annotations


class LamanError(Exception):
    """Base class for all errors raised by lamancount."""


class InvalidInputError(LamanError, ValueError):
    """An argument violates an operation's precondition."""


class NotLamanError(InvalidInputError):
    """A graph that must be Laman is not; ``defect`` carries the classification."""

    def __init__(self, defect: str, message: str | None = None):
        self.defect = defect
        super().__init__(message or f"graph is not Laman ({defect})")


class ParseError(InvalidInputError):
    """Malformed graph6 or edge-list input.

    ``offset`` is a 0-based byte offset (graph6), ``line`` a 1-based line
    number (edge lists); whichever does not apply is ``None``.
    """

    def __init__(self, message: str, *, offset: int | None = None, line: int | None = None):
        self.offset = offset
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"offset {offset}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class DegenerateInputError(InvalidInputError):
    """Geometric input is too degenerate for the requested operation."""


class ComputationError(LamanError, ArithmeticError):
    """A well-formed computation could not be completed."""


class CountOverflowError(ComputationError, OverflowError):
    """A Laman count exceeded the 64-bit range in checked mode."""


class ComputationTimeout(ComputationError):
    """The cooperative deadline of a counting run expired."""
