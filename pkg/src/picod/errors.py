"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class PicodError(Exception):
    """Base class for all picod errors."""


class UsageError(PicodError, ValueError):
    """Invalid parameters or malformed inputs (CLI exit code 2)."""


class DomainError(PicodError, ArithmeticError):
    """Mathematically undefined operation, e.g. inverting zero."""


class ConstructionError(PicodError, RuntimeError):
    """Randomized construction ran out of its resampling budget (exit code 3)."""

    def __init__(self, message, attempts=None):
        super().__init__(message)
        self.attempts = attempts


class SearchCeilingExceeded(PicodError):
    """Exhaustive search refused because its size exceeds the ceiling."""

    def __init__(self, size, ceiling):
        super().__init__(f"search size {size} exceeds ceiling {ceiling}")
        self.size = size
        self.ceiling = ceiling
