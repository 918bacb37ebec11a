"""Exception hierarchy shared by every module of the package."""
from __future__ import annotations


class AlgoCircuitsError(Exception):
    """Base class for all package errors."""


class InvalidArgument(AlgoCircuitsError, ValueError):
    pass


class InvalidInstruction(AlgoCircuitsError, ValueError):
    pass


class NotInvertible(AlgoCircuitsError, ValueError):
    pass


class RequiresTrajectory(AlgoCircuitsError, RuntimeError):
    """Raised when a circuit with mid-circuit measurement is run as a pure state."""


class ResourceLimit(AlgoCircuitsError, RuntimeError):
    pass


class QasmParseError(AlgoCircuitsError, ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnsupportedFeature(AlgoCircuitsError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column
