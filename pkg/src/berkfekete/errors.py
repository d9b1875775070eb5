"""Exception hierarchy shared by all modules."""


class BerkFeketeError(Exception):
    """Base class for library errors."""


class ConfigurationError(BerkFeketeError, ValueError):
    """Invalid field mode or global configuration (e.g. a non-prime p)."""


class PreconditionError(BerkFeketeError, ValueError):
    """An operation was called outside its documented domain."""


class UnsupportedModeError(PreconditionError):
    """Operation not available in the requested field mode."""


class NotSquarefreeError(PreconditionError):
    pass


class NewtonPolygonError(PreconditionError):
    """Newton polygon does not have the shape an experiment needs."""


class MissingModulusError(PreconditionError):
    """A weight lacks the Hölder / sup data needed to assemble a bound."""


class QuadratureWarning(RuntimeWarning):
    """Two successive quadrature refinements disagree by more than 1e-6."""
