"""Composite Gauss-Legendre grids and Chebyshev collocation helpers."""

from functools import lru_cache

import numpy as np

from .specfun import gauss_legendre


@lru_cache(maxsize=64)
def _gl_rule(npts):
    rule = gauss_legendre(npts)
    return rule.nodes, rule.weights


def composite_rule(boundaries, npts=16):
    """Composite Gauss-Legendre nodes/weights over consecutive panels."""
    boundaries = np.asarray(boundaries, dtype=float)
    xg, wg = _gl_rule(npts)
    a = boundaries[:-1]
    half = 0.5 * np.diff(boundaries)
    nodes = (a[:, None] + half[:, None] * (xg[None, :] + 1.0)).ravel()
    weights = (half[:, None] * wg[None, :]).ravel()
    return nodes, weights


def graded_boundaries(r_c, inner_frac=1e-7, ratio=2.0):
    """Panel boundaries on [0, r_c], geometrically graded toward both ends.

    Grading toward 0 resolves the Coulomb region; grading toward r_c keeps
    the last quadrature node close enough to the wall that the Dirichlet
    boundary value is sampled essentially at zero.
    """
    left = [0.0]
    t = inner_frac
    while t < 0.5:
        left.append(t)
        t *= ratio
    right = [1.0 - b for b in left]
    ts = np.array(sorted(set(left) | set(right) | {0.5, 1.0}))
    return r_c * ts


def refine_at(boundaries, points, scale_frac=0.02, levels=3):
    """Insert graded panel boundaries around interior points (density nodes).

    Fractional powers of the density are non-smooth at its zeros; placing
    the zero on a panel edge with shrinking neighbor panels restores fast
    Gauss-Legendre convergence.
    """
    boundaries = np.asarray(boundaries, dtype=float)
    lo, hi = boundaries[0], boundaries[-1]
    span = hi - lo
    extra = []
    for p in points:
        if not lo < p < hi:
            continue
        extra.append(p)
        w = scale_frac * span
        for _ in range(levels):
            for side in (-1.0, 1.0):
                q = p + side * w
                if lo < q < hi:
                    extra.append(q)
            w /= 8.0
    if not extra:
        return boundaries
    merged = np.unique(np.concatenate([boundaries, extra]))
    # drop boundaries that ended up closer than 1e-12*span to a neighbor
    keep = np.concatenate([[True], np.diff(merged) > 1e-12 * span])
    return merged[keep]


def chebyshev_lobatto(n):
    """Chebyshev-Gauss-Lobatto points x_j = cos(pi j / n), descending."""
    return np.cos(np.pi * np.arange(n + 1) / n)


def chebyshev_diff_matrix(n):
    """First-derivative collocation matrix on the CGL points (Trefethen)."""
    x = chebyshev_lobatto(n)
    c = np.ones(n + 1)
    c[0] = c[-1] = 2.0
    c *= (-1.0) ** np.arange(n + 1)
    dx = x[:, None] - x[None, :]
    np.fill_diagonal(dx, 1.0)
    d = np.outer(c, 1.0 / c) / dx
    np.fill_diagonal(d, 0.0)
    np.fill_diagonal(d, -d.sum(axis=1))
    return d, x


def barycentric_matrix(x_nodes, x_eval):
    """Interpolation matrix from CGL nodal values to arbitrary points.

    Uses the closed-form barycentric weights of the CGL family; rows for
    evaluation points that coincide with a node reduce to a unit row.
    """
    n = len(x_nodes) - 1
    w = np.ones(n + 1)
    w[0] = w[-1] = 0.5
    w *= (-1.0) ** np.arange(n + 1)

    diff = x_eval[:, None] - x_nodes[None, :]
    exact_rows, exact_cols = np.nonzero(np.abs(diff) < 1e-14)
    diff[exact_rows, :] = 1.0  # avoid division by zero; rows fixed below
    m = w[None, :] / diff
    row_sum = m.sum(axis=1, keepdims=True)
    if exact_rows.size:
        row_sum[exact_rows] = 1.0  # placeholder; rows are overwritten below
    m /= row_sum
    if exact_rows.size:
        m[exact_rows, :] = 0.0
        m[exact_rows, exact_cols] = 1.0
    return m
