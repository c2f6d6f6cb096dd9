"""Exception and warning types raised across the package."""


class IHOError(Exception):
    """Base class for all errors raised by :mod:`iho`."""


class NonConvergence(IHOError):
    """A series or iteration hit its term budget before converging."""


class DomainError(IHOError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """Evaluation at a pole (e.g. the gamma function at 0, -1, -2, ...)."""


class ValidationError(IHOError, ValueError):
    """A data object violates one of its invariants."""


class GridMismatch(IHOError, ValueError):
    """Two sampled functions do not live on the same grid."""


class InterpolationError(IHOError, ValueError):
    """Requested interpolation points fall outside the sampled range."""


class QuadratureError(IHOError):
    """A quadrature rule could not be set up as requested."""


class TruncationWarning(UserWarning):
    """Input samples do not decay at the grid ends; results include truncation error."""
