"""Exception hierarchy shared by all modules."""


class BlaschkeError(Exception):
    """Base class for errors raised by blaschke_hp."""


class DiskDomainError(BlaschkeError, ValueError):
    """A point that must lie in the open unit disc does not."""


class ParameterError(BlaschkeError, ValueError):
    """A parameter is outside its admissible range."""


class NumericalError(BlaschkeError, RuntimeError):
    """A numerical procedure failed to reach its accuracy target."""


class ConvergenceError(NumericalError):
    """Quadrature did not converge within the allowed refinements."""


class CrossCheckError(NumericalError):
    """Two independent evaluations of the same quantity disagree."""


class EnclosureError(NumericalError):
    """An adaptive enclosure stayed wider than the requested tolerance."""


class RootResidualError(NumericalError):
    """Polished polynomial roots do not satisfy the target equation."""


class TruncationWarning(UserWarning):
    """A truncated series still had a non-zero last term."""


class DepthWarning(UserWarning):
    """Some zeros lie deeper than the requested dyadic depth."""
