"""Self-contained special functions and quadrature primitives.

Everything downstream (eigensolver, momentum transform, entropy integrals)
is built on the four primitives here: Kummer's confluent hypergeometric
function, Legendre polynomials, spherical Bessel functions of order 0..4,
and Gauss-Legendre quadrature rules.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, UnsupportedOrderError

_MAX_1F1_TERMS = 5000


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes/weights on the reference interval [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def __post_init__(self):
        object.__setattr__(self, "nodes", np.asarray(self.nodes, dtype=float))
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    def mapped(self, a, b):
        """Nodes and weights mapped to the interval [a, b]."""
        half = 0.5 * (b - a)
        return a + half * (self.nodes + 1.0), half * self.weights


def kummer_1f1(a, b, x):
    """Kummer's confluent hypergeometric function 1F1(a; b; x).

    Direct ascending series with compensated summation; when a is a
    non-positive integer the series terminates exactly (polynomial case).
    """
    if b <= 0 and b == int(b):
        raise DomainError(f"1F1 undefined for non-positive integer b={b}")
    if x == 0.0:
        return 1.0

    a_is_nonpos_int = a <= 0 and a == int(a)
    n_terms = int(-a) + 1 if a_is_nonpos_int else _MAX_1F1_TERMS

    total = 1.0
    comp = 0.0  # Kahan compensation
    term = 1.0
    for k in range(n_terms):
        term *= (a + k) * x / ((b + k) * (k + 1))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if not a_is_nonpos_int and abs(term) <= 1e-17 * abs(total):
            return total
    if a_is_nonpos_int:
        return total
    raise ConvergenceError(
        f"1F1 series did not converge in {_MAX_1F1_TERMS} terms "
        f"for (a={a}, b={b}, x={x})"
    )


def legendre_p(l, u):
    """Legendre polynomial P_l(u) by the three-term recurrence."""
    if abs(u) > 1.0:
        raise DomainError(f"legendre_p requires |u| <= 1, got {u}")
    if l == 0:
        return 1.0
    p_prev, p = 1.0, u
    for k in range(1, l):
        p_prev, p = p, ((2 * k + 1) * u * p - k * p_prev) / (k + 1)
    return p


def legendre_p_array(l, u):
    """P_l evaluated on an array (same recurrence, vectorized)."""
    u = np.asarray(u, dtype=float)
    if np.any(np.abs(u) > 1.0 + 1e-14):
        raise DomainError("legendre_p requires |u| <= 1")
    if l == 0:
        return np.ones_like(u)
    p_prev, p = np.ones_like(u), u.copy()
    for k in range(1, l):
        p_prev, p = p, ((2 * k + 1) * u * p - k * p_prev) / (k + 1)
    return p


# Closed trigonometric forms of j_l suffer 1/x^(l+1) cancellation as x -> 0;
# the ascending series takes over below x = max(0.5, l), where both branches
# still agree to ~1e-13.
def _series_cutoff(l):
    return max(0.5, float(l))


def _sph_bessel_series(l, x):
    # j_l(x) = x^l sum_k (-x^2/2)^k / (k! (2l+2k+1)!!)
    dfact = 1.0
    for m in range(1, 2 * l + 2, 2):
        dfact *= m
    term = x**l / dfact
    total = term
    for k in range(1, 25):
        term *= -0.5 * x * x / (k * (2 * l + 2 * k + 1))
        total += term
        if abs(term) < 1e-18 * max(abs(total), 1e-300):
            break
    return total


def _sph_bessel_trig(l, x):
    s, c = np.sin(x), np.cos(x)
    if l == 0:
        return s / x
    if l == 1:
        return s / x**2 - c / x
    if l == 2:
        return (3.0 / x**3 - 1.0 / x) * s - 3.0 / x**2 * c
    if l == 3:
        return (15.0 / x**4 - 6.0 / x**2) * s - (15.0 / x**3 - 1.0 / x) * c
    # l == 4
    return (105.0 / x**5 - 45.0 / x**3 + 1.0 / x) * s - (
        105.0 / x**4 - 10.0 / x**2
    ) * c


def sph_bessel_j(l, x):
    """Spherical Bessel function j_l(x) for l in 0..4 and x >= 0."""
    if not 0 <= l <= 4:
        raise UnsupportedOrderError(f"sph_bessel_j supports l in 0..4, got {l}")
    if x < 0:
        raise DomainError(f"sph_bessel_j requires x >= 0, got {x}")
    if x < _series_cutoff(l):
        return _sph_bessel_series(l, x)
    return _sph_bessel_trig(l, x)


def gauss_legendre(order):
    """Gauss-Legendre rule of the given order on [-1, 1].

    Nodes by Newton iteration on P_n seeded with Chebyshev-like guesses;
    exact for polynomials of degree <= 2*order - 1.
    """
    if order < 1:
        raise DomainError(f"gauss_legendre requires order >= 1, got {order}")
    if order == 1:
        return QuadratureRule(np.array([0.0]), np.array([2.0]), 1)

    n = order
    k = np.arange(1, n + 1)
    x = np.cos(np.pi * (k - 0.25) / (n + 0.5))
    for _ in range(100):
        p_prev, p = np.ones_like(x), x.copy()
        for j in range(1, n):
            p_prev, p = p, ((2 * j + 1) * x * p - j * p_prev) / (j + 1)
        dp = n * (x * p - p_prev) / (x * x - 1.0)
        dx = p / dp
        x -= dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    else:
        raise ConvergenceError(f"gauss_legendre Newton stalled at order {order}")

    # one more pass for the weights at the converged nodes
    p_prev, p = np.ones_like(x), x.copy()
    for j in range(1, n):
        p_prev, p = p, ((2 * j + 1) * x * p - j * p_prev) / (j + 1)
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)

    idx = np.argsort(x)
    x, w = x[idx], w[idx]
    # enforce exact symmetry about 0
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    return QuadratureRule(x, w, n)
