"""Exception hierarchy shared by all modules."""


class PtDiracError(Exception):
    """Base class for every error raised by this package."""


class DomainError(PtDiracError, ValueError):
    """Bad parameters, grids, or non-finite model samples."""


class ConvergenceError(PtDiracError, RuntimeError):
    """An iterative solver ran out of budget.

    ``partial`` carries whatever eigenvalues had converged (possibly empty).
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class CapacityError(PtDiracError, ValueError):
    """Matrix larger than the configured solver cap."""


class ZeroModeError(PtDiracError, ValueError):
    """Spinor reconstruction attempted at (numerically) zero energy."""
