"""Exception types shared across the package."""


class GroupctlError(Exception):
    """Base class for all errors raised by this package."""


class InputError(GroupctlError, ValueError):
    """Malformed or out-of-contract input (bad indices, empty sets, ...)."""


class CapacityError(GroupctlError, RuntimeError):
    """An exact solver was asked to exceed its configured size cap."""


class ParseError(InputError):
    """Instance text could not be parsed; carries a 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
