"""Backend selection for the hot transform kernels.

Prefers the compiled Cython extension when it was built; otherwise uses the
numpy fallback. Both expose the same two functions.
"""

try:
    from ._kernels import sph_bessel_j_array, transform_contract

    BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on build environment
    from ._kernels_py import sph_bessel_j_array, transform_contract

    BACKEND = "python"


def backend_name():
    """Name of the active kernel backend ('cython' or 'python')."""
    return BACKEND


__all__ = ["sph_bessel_j_array", "transform_contract", "backend_name", "BACKEND"]
