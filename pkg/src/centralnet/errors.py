"""Exception types raised across the package."""


class CentralNetError(Exception):
    """Base class for all package errors."""


class InvalidInputError(CentralNetError, ValueError):
    """Input data violates a precondition (bad price, bad matrix, ...)."""


class DegenerateColumnError(InvalidInputError):
    """A returns column (or series) has zero variance."""

    def __init__(self, column, message=None):
        self.column = column
        super().__init__(message or f"column {column!r} has zero variance")


class ThresholdOutOfRangeError(InvalidInputError):
    pass


class DimensionMismatchError(InvalidInputError):
    pass


class ParseError(InvalidInputError):
    """Malformed CSV. Carries 1-based line and column numbers."""

    def __init__(self, path, line, column, message):
        self.path = path
        self.line = line
        self.column = column
        super().__init__(f"{path}: line {line}, column {column}: {message}")


class ConfigError(CentralNetError, ValueError):
    pass
