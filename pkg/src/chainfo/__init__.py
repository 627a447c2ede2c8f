"""Information measures and statistical complexities of the confined hydrogen atom."""

from .kernels import backend_name
from .radial import Confinement, QuantumState, RadialSolution, SolverOptions

__version__ = "0.1.0"

__all__ = [
    "Confinement",
    "QuantumState",
    "RadialSolution",
    "SolverOptions",
    "backend_name",
    "__version__",
]
