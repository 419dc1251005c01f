"""Exception types shared across the package."""


class BuchikitError(Exception):
    """Base class for errors raised by this package."""


class CapacityError(BuchikitError):
    """A configurable resource bound was exceeded (macrostates, AP count, ...)."""


class UnsupportedAcceptanceError(BuchikitError):
    """The input declares an acceptance condition outside the supported shapes."""


class FormatError(BuchikitError):
    """Syntax error in an input file.  Carries a 1-based line (and column) position."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f" at line {line}" + (f", col {col}" if col is not None else "")
        super().__init__(message + where)
