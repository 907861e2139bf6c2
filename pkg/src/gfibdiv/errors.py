"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed user-supplied input (bad decimal string, unknown name, ...)."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class ResourceLimitError(RuntimeError):
    """A configured resource ceiling (term count, time budget) was hit."""
