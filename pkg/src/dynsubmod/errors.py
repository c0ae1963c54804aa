"""Exception types shared across the package."""


class DynSubmodError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(DynSubmodError, ValueError):
    """Invalid parameters (k, tau, eps_prime, algorithm names, ...)."""


class DomainError(DynSubmodError, ValueError):
    """An element outside the objective's universe was queried."""


class PreconditionError(DynSubmodError, ValueError):
    """An operation was called with arguments violating its precondition."""


class ShapeError(DynSubmodError, ValueError):
    """Matrix input has the wrong shape."""


class UpdateError(DynSubmodError, ValueError):
    """An update event is inconsistent with the current ground set."""


class ParseError(DynSubmodError, ValueError):
    """Malformed input file."""

    def __init__(self, message, path=None, lineno=None):
        where = ""
        if path is not None:
            where = f"{path}:"
        if lineno is not None:
            where += f"{lineno}:"
        super().__init__(f"{where} {message}" if where else message)
        self.path = path
        self.lineno = lineno


class EnumerationCapError(DynSubmodError, ValueError):
    """Brute force refused because the ground set is too large."""
