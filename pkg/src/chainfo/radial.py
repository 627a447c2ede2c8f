"""Radial eigenproblem of the hydrogen atom inside an impenetrable sphere.

Solves -1/2 u'' + [l(l+1)/(2r^2) - 1/r] u = E u on (0, r_c) with
u(0) = u(r_c) = 0 for u(r) = r R(r), by Chebyshev collocation on a
rational map of [-1, 1] that clusters points near both walls. Positive
eigenvalues (strong confinement) are legal outputs. For E < 0 the closed
confluent-hypergeometric form provides an independent boundary residual.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.linalg

from .errors import DomainError, ResolutionError, WrongBranchError
from .grids import (
    barycentric_matrix,
    chebyshev_diff_matrix,
    composite_rule,
    graded_boundaries,
    refine_at,
)
from .specfun import kummer_1f1

STATE_LABELS = {
    "1s": (1, 0), "2s": (2, 0), "2p": (2, 1), "3s": (3, 0),
    "3p": (3, 1), "3d": (3, 2), "4f": (4, 3), "5g": (5, 4),
}


@dataclass(frozen=True, order=True)
class QuantumState:
    """Quantum-number triple (n, l, m); m stays 0 on all table-facing paths."""

    n: int
    l: int
    m: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.l < self.n:
            raise DomainError(f"l must satisfy 0 <= l < n, got l={self.l}, n={self.n}")
        if abs(self.m) > self.l:
            raise DomainError(f"|m| must be <= l, got m={self.m}, l={self.l}")

    @classmethod
    def from_label(cls, label):
        try:
            n, l = STATE_LABELS[label.strip().lower()]
        except KeyError:
            raise DomainError(f"unknown state label {label!r}; "
                              f"supported: {sorted(STATE_LABELS)}") from None
        return cls(n, l)

    @property
    def label(self):
        sub = "spdfghi"[self.l] if self.l < 7 else f"(l={self.l})"
        return f"{self.n}{sub}"

    @property
    def radial_nodes(self):
        return self.n - self.l - 1


@dataclass(frozen=True)
class Confinement:
    """Hard spherical wall at radius r_c (bohr)."""

    r_c: float

    def __post_init__(self):
        if not self.r_c > 0:
            raise DomainError(f"r_c must be positive, got {self.r_c}")


@dataclass(frozen=True)
class SolverOptions:
    grid_points: int = 400          # Chebyshev collocation order
    map_scale: float = 0.0          # rational-map parameter L; 0 -> r_c
    panel_points: int = 16          # Gauss-Legendre points per measure panel
    max_grid_doublings: int = 2

    def scale_for(self, r_c):
        return self.map_scale if self.map_scale > 0 else r_c

    def signature(self):
        return (f"N{self.grid_points}_L{self.map_scale:.6g}"
                f"_P{self.panel_points}")


# ---------------------------------------------------------------------------
# rational map r(x) = L (1+x) / (1 - x + c), c = 2 L / r_c

def _map_r(x, L, c):
    return L * (1.0 + x) / (1.0 - x + c)


def _map_x(r, L, c):
    return (r * (1.0 + c) - L) / (r + L)


def _map_dr(x, L, c):
    return L * (2.0 + c) / (1.0 - x + c) ** 2


def _map_d2r(x, L, c):
    return 2.0 * L * (2.0 + c) / (1.0 - x + c) ** 3


@lru_cache(maxsize=16)
def _cheb_operators(n):
    d, x = chebyshev_diff_matrix(n)
    return d, d @ d, x


@lru_cache(maxsize=32)
def _eig_interior(l, r_c, n, L):
    """Sorted real eigenvalues/vectors of the mapped radial Hamiltonian."""
    d, d2, x = _cheb_operators(n)
    c = 2.0 * L / r_c
    xi = x[1:-1]
    r = _map_r(xi, L, c)
    gp = _map_dr(xi, L, c)
    gpp = _map_d2r(xi, L, c)

    kin = -(0.5 / gp**2)[:, None] * d2[1:-1, 1:-1] \
        + (0.5 * gpp / gp**3)[:, None] * d[1:-1, 1:-1]
    pot = l * (l + 1) / (2.0 * r**2) - 1.0 / r
    h = kin + np.diag(pot)

    evals, evecs = scipy.linalg.eig(h)
    scale = np.maximum(1.0, np.abs(evals.real))
    physical = np.abs(evals.imag) <= 1e-8 * scale
    evals, evecs = evals[physical].real, evecs[:, physical].real
    order = np.argsort(evals)
    return evals[order], evecs[:, order], x


def _count_sign_changes(values, tol_frac=1e-8):
    v = np.asarray(values, dtype=float)
    v = v[np.abs(v) > tol_frac * np.max(np.abs(v))]
    return int(np.count_nonzero(np.diff(np.sign(v)) != 0))


def _pick_branch(state, evals, evecs, x):
    """Eigenpair with the correct sorted index, verified by node count."""
    k = state.n - state.l - 1
    target_idx = state.n - state.l - 1
    for idx in [target_idx, target_idx - 1, target_idx + 1,
                target_idx - 2, target_idx + 2]:
        if not 0 <= idx < len(evals):
            continue
        if _count_sign_changes(evecs[:, idx]) == k:
            return evals[idx], evecs[:, idx]
    return None


@dataclass(frozen=True)
class RadialSolution:
    """Normalized radial eigenfunction sampled on a quadrature grid."""

    state: QuantumState
    r_c: float
    energy: float
    grid: np.ndarray            # strictly increasing r in (0, r_c)
    weights: np.ndarray         # quadrature weights for integrals in dr
    values: np.ndarray          # R(r) samples, sign R > 0 as r -> 0+
    norm_constant: float        # scale applied to the raw eigenvector
    nodes_r: tuple = ()         # interior zeros of R

    # spectral payload enabling evaluation at arbitrary radii
    _x_nodes: np.ndarray = field(repr=False, default=None)
    _u_nodes: np.ndarray = field(repr=False, default=None)
    _du_nodes: np.ndarray = field(repr=False, default=None)
    _map_scale: float = field(repr=False, default=0.0)

    def _to_x(self, r):
        c = 2.0 * self._map_scale / self.r_c
        return np.clip(_map_x(np.asarray(r, dtype=float), self._map_scale, c),
                       -1.0, 1.0)

    def evaluate_u(self, r):
        """u(r) = r R(r) by barycentric interpolation of the collocation data."""
        x = self._to_x(np.atleast_1d(r))
        return barycentric_matrix(self._x_nodes, x) @ self._u_nodes

    def evaluate_du(self, r):
        """du/dr via the spectrally differentiated collocation data."""
        r = np.atleast_1d(r)
        x = self._to_x(r)
        c = 2.0 * self._map_scale / self.r_c
        dudx = barycentric_matrix(self._x_nodes, x) @ self._du_nodes
        return dudx / _map_dr(x, self._map_scale, c)

    def evaluate_R(self, r):
        r = np.atleast_1d(r)
        return self.evaluate_u(r) / r

    def support_radius(self, mass_tol=1e-9):
        """Smallest radius beyond which less than mass_tol density remains."""
        dens = self.values**2 * self.grid**2 * self.weights
        tail = np.cumsum(dens[::-1])[::-1]
        idx = np.searchsorted(tail[::-1], mass_tol)
        i = len(tail) - 1 - idx
        return float(self.grid[min(max(i, 0), len(tail) - 1)])


def _locate_nodes(u_eval, r_fine, u_fine, tol_frac=1e-8):
    """Refine sign-change brackets of u to ~1e-12 relative by bisection.

    Samples below tol_frac of the peak are ignored so that roundoff noise in
    exponentially small tails does not register as nodes.
    """
    nodes = []
    u_fine = np.where(np.abs(u_fine) > tol_frac * np.max(np.abs(u_fine)),
                      u_fine, 0.0)
    s = np.sign(u_fine)
    nz = np.nonzero(s)[0]
    for a_idx, b_idx in zip(nz[:-1], nz[1:]):
        if s[a_idx] == s[b_idx]:
            continue
        a, b = r_fine[a_idx], r_fine[b_idx]
        fa = u_fine[a_idx]
        for _ in range(80):
            mid = 0.5 * (a + b)
            fm = u_eval(np.array([mid]))[0]
            if fm == 0.0 or (b - a) < 1e-13 * max(b, 1.0):
                a = b = mid
                break
            if (fm > 0) == (fa > 0):
                a, fa = mid, fm
            else:
                b = mid
        nodes.append(0.5 * (a + b))
    return nodes


def _build_solution(state, conf, opts, energy, u_interior, x):
    L = opts.scale_for(conf.r_c)
    c = 2.0 * L / conf.r_c
    u_full = np.zeros(len(x))
    u_full[1:-1] = u_interior

    # sign convention: R > 0 as r -> 0+ (x is descending, so last interior
    # collocation point is the one nearest the origin)
    near_origin = u_full[-6:-1]
    if near_origin[np.argmax(np.abs(near_origin))] < 0:
        u_full = -u_full

    d, _, _ = _cheb_operators(len(x) - 1)
    du_full = d @ u_full

    def u_eval(r):
        xr = np.clip(_map_x(r, L, c), -1.0, 1.0)
        return barycentric_matrix(x, xr) @ u_full

    # pass 1: base grid to normalize roughly and locate nodes
    base_bounds = graded_boundaries(conf.r_c)
    r0, w0 = composite_rule(base_bounds, opts.panel_points)
    u0 = u_eval(r0)
    nodes = _locate_nodes(u_eval, r0, u0)

    # pass 2: node-refined grid, final normalization
    bounds = refine_at(base_bounds, nodes)
    r_q, w_q = composite_rule(bounds, opts.panel_points)
    u_q = u_eval(r_q)
    raw_norm = float(np.sqrt(np.sum(w_q * u_q**2)))
    scale = 1.0 / raw_norm
    u_full = u_full * scale
    du_full = du_full * scale
    u_q = u_q * scale

    return RadialSolution(
        state=state,
        r_c=conf.r_c,
        energy=float(energy),
        grid=r_q,
        weights=w_q,
        values=u_q / r_q,
        norm_constant=scale,
        nodes_r=tuple(nodes),
        _x_nodes=x,
        _u_nodes=u_full,
        _du_nodes=du_full,
        _map_scale=L,
    )


def _solve(state, conf, opts):
    n_grid = opts.grid_points
    for _ in range(opts.max_grid_doublings + 1):
        L = opts.scale_for(conf.r_c)
        evals, evecs, x = _eig_interior(state.l, conf.r_c, n_grid, L)
        if len(evals) >= state.n - state.l:
            picked = _pick_branch(state, evals, evecs, x)
            if picked is not None:
                energy, vec = picked
                eff_opts = opts if n_grid == opts.grid_points else \
                    SolverOptions(n_grid, opts.map_scale, opts.panel_points,
                                  opts.max_grid_doublings)
                return _build_solution(state, conf, eff_opts, energy, vec, x)
        n_grid *= 2
    raise ResolutionError(
        f"could not resolve {state.label} at r_c={conf.r_c} with grids up to "
        f"{n_grid // 2} points"
    )


def solve_state(state, conf, opts=None):
    """Full normalized RadialSolution for one (state, r_c)."""
    sol = _solve(state, conf, opts or SolverOptions())
    if _count_sign_changes(sol.values) != state.radial_nodes:
        raise WrongBranchError(
            f"{state.label}: node count {_count_sign_changes(sol.values)} "
            f"!= {state.radial_nodes}"
        )
    return sol


def solve_energy(state, conf, opts=None):
    """Energy (hartree) of the (n-l)-th Dirichlet eigenvalue for this l."""
    return solve_state(state, conf, opts).energy


def radial_wavefunction(state, conf, energy, opts=None):
    """RadialSolution for a previously computed energy of the same cell."""
    sol = solve_state(state, conf, opts)
    tol = 1e-6 * max(1.0, abs(sol.energy))
    if abs(sol.energy - energy) > tol:
        raise WrongBranchError(
            f"energy {energy} does not match the {state.label} eigenvalue "
            f"{sol.energy} at r_c={conf.r_c}"
        )
    return sol


def node_count(solution):
    """Number of strict sign changes of R strictly inside (0, r_c)."""
    return _count_sign_changes(solution.values)


def boundary_residual(energy, l, r_c):
    """Confluent-hypergeometric wall residual; zero at E < 0 eigenvalues."""
    if energy >= 0:
        raise DomainError("boundary_residual requires energy < 0")
    kappa = np.sqrt(-2.0 * energy)
    return kummer_1f1(l + 1 - 1.0 / kappa, 2 * l + 2, 2.0 * r_c * kappa)
