"""Exception types shared across the package.

The CLI maps each family onto a distinct exit status, so the hierarchy is
kept flat and explicit.
"""


class ArtinkitError(Exception):
    """Base class for every error raised on purpose by this package."""


class DomainError(ArtinkitError, ValueError):
    """Input is well formed but outside an operation's domain (e.g. a
    non-spherical graph handed to a spherical-only routine)."""


class ResourceCapExceeded(ArtinkitError):
    """A configurable size cap was hit. Never a wrong answer, only no answer."""

    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} exceeded cap of {cap}")
        self.what = what
        self.cap = cap


class GraphParseError(ArtinkitError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


class WordParseError(ArtinkitError, ValueError):
    pass
