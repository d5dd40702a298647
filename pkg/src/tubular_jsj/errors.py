"""Exception hierarchy; each class carries the CLI exit code it maps to."""
from __future__ import annotations


class JSJError(Exception):
    exit_code = 1


class ParseError(JSJError):
    exit_code = 2

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


class ValidationError(JSJError):
    exit_code = 2

    def __init__(self, message: str, violations: list[str] | None = None):
        super().__init__(message)
        self.violations = list(violations or [])


class PreconditionError(JSJError):
    exit_code = 3


class ClosedSurfaceError(JSJError):
    exit_code = 4


class ResourceCapError(JSJError):
    exit_code = 5
