"""Exception types shared across the library."""


class ChainfoError(Exception):
    """Base class for all library-specific errors."""


class DomainError(ChainfoError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ConvergenceError(ChainfoError, RuntimeError):
    """An iterative procedure exhausted its budget without converging."""


class UnsupportedOrderError(ChainfoError, ValueError):
    """Requested order is outside the implemented range."""


class ResolutionError(ChainfoError, RuntimeError):
    """Grid too coarse to resolve the requested eigenstate."""


class WrongBranchError(ChainfoError, RuntimeError):
    """Eigenvector node count does not match the requested state."""


class QuadratureError(ChainfoError, RuntimeError):
    """Panel refinement failed to converge."""


class CutoffTooSmallError(ChainfoError, RuntimeError):
    """Momentum cutoff leaves too much density mass in the tail."""

    def __init__(self, message, suggested_pmax=None):
        super().__init__(message)
        self.suggested_pmax = suggested_pmax


class ConfigurationError(ChainfoError, ValueError):
    """Invalid sweep or CLI configuration."""
