"""Exception types raised across the package."""


class HiciteError(ValueError):
    """Base class for every error raised by hicite."""


class SchemaError(HiciteError):
    """Input file does not carry the expected header."""


class RowError(HiciteError):
    """A data row could not be parsed."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class ValidationError(HiciteError):
    """Parsed values violate a data-model invariant."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConfigError(HiciteError):
    pass


class NoDataError(HiciteError):
    """A (category, year) cell or scope has no articles."""


class UndefinedIndicatorError(HiciteError):
    """The journal published nothing in the requested window."""


class EmptySampleError(HiciteError):
    pass


class InsufficientDataError(HiciteError):
    pass


class DegenerateError(HiciteError):
    """Statistic is undefined because the sample has no variation."""


class DomainError(HiciteError):
    pass


class CapabilityError(HiciteError):
    """The requested output needs data the input kind does not provide."""
