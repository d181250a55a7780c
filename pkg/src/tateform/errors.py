"""Shared exception types."""


class ValidationError(ValueError):
    """A structural law fails at construction time (group table, module
    action, complex differential)."""


class CapExceeded(RuntimeError):
    """A configured size cap would be exceeded."""


class WindowError(RuntimeError):
    """The complete-resolution window does not cover the requested degree
    range."""


class LiftingError(RuntimeError):
    """An integer lifting system that should be solvable is not; indicates
    a broken resolution or a bug upstream."""


class ParseError(ValueError):
    """A scenario document violates the input schema."""
