"""Exception types shared across the package."""


class DomainError(ValueError):
    """An operation was called outside its mathematical domain."""


class ModeMismatchError(DomainError):
    """Exact and float scalars were mixed in one computation."""


class HypothesisError(DomainError):
    """The hypothesis of a checked identity does not hold for the input."""


class ParseError(ValueError):
    """Malformed textual input.  Carries 1-based line/column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
