"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed edge-list input. Carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceLimitError(RuntimeError):
    """A guarded computation exceeded its configured budget."""


class SearchTimeout(RuntimeError):
    """A search ran past its deadline (used by benchmark cells)."""
