"""Exception hierarchy shared by all modules."""


class LsobError(Exception):
    """Base class for every error raised by this package."""


class ArgumentError(LsobError, ValueError):
    """An argument is outside the documented domain."""


class PreconditionError(LsobError, ValueError):
    """Inputs are well-formed but violate a numerical precondition (e.g. rank)."""


class ValidationError(LsobError, ValueError):
    """A matrix failed quantum-state validation."""


class ResourceError(LsobError, RuntimeError):
    """The request would exceed a configured size cap."""


class ConvergenceError(LsobError, RuntimeError):
    """An iterative solver did not converge within its iteration budget."""
