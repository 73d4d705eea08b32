"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class KrhomError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(KrhomError, ValueError):
    """An operation was called outside its documented domain."""


class ParseError(KrhomError, ValueError):
    """Malformed edge-list or report input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class StructureError(KrhomError):
    """A partition violated an independence or homogeneity requirement.

    ``witness`` holds the offending vertices so callers can report them.
    """

    def __init__(self, message: str, witness: dict | None = None):
        self.witness = witness or {}
        super().__init__(message)


class HypothesisViolation(KrhomError):
    """Good samples were drawn but the structure checks still failed."""

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class RetriesExhausted(KrhomError):
    """No attempt produced a usable sample within the retry budget."""

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)
