"""Momentum-space radial function via the spherical-Bessel transform.

The kernel is j_l(pr) r^2 rather than the equivalent trigonometric
expansions, which is numerically stable as pr -> 0. The global (-i)^l
phase is dropped: everything downstream uses |phi(p)|^2 only, and the
density is renormalized after the transform anyway.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import CutoffTooSmallError, QuadratureError
from .grids import composite_rule
from .kernels import transform_contract


@dataclass(frozen=True)
class MomentumGridSpec:
    p_min: float = 1e-4
    p_max: float = 0.0        # 0 -> automatic max(30, 40/r_c)
    panel_points: int = 12
    tail_tol: float = 1e-7
    # strongly confined high-l states need p_max in the thousands; eight
    # geometric raises span a factor ~43 over the automatic starting cutoff
    max_pmax_raises: int = 8

    def auto_pmax(self, r_c):
        return self.p_max if self.p_max > 0 else max(30.0, 40.0 / r_c)

    def signature(self):
        return (f"pmin{self.p_min:.3g}_pmax{self.p_max:.6g}"
                f"_P{self.panel_points}_tt{self.tail_tol:.3g}")


@dataclass(frozen=True)
class MomentumSolution:
    """Normalized momentum radial magnitude on (0, p_max]."""

    state: object
    r_c: float
    p_grid: np.ndarray
    weights: np.ndarray
    values: np.ndarray          # |phi(p)|, with int phi^2 p^2 dp = 1
    p_max: float
    tail_mass: float
    norm_constant: float        # scale applied to the raw transform amplitude
    tail_amplitude2: float = field(default=0.0)  # a^2 in |phi|^2 ~ a^2/(2 p^6)

    def moment(self, k, tail_corrected=True):
        """<p^k> of the normalized density, with analytic tail/head estimates."""
        val = float(np.sum(self.weights * self.p_grid ** (k + 2) * self.values**2))
        if tail_corrected and self.tail_amplitude2 > 0.0:
            # |phi|^2 averages to a^2/(2 p^6) beyond p_max
            power = k - 4  # integrand exponent: p^(k+2) * p^-6
            if power < -1:
                val += self.tail_amplitude2 / (2.0 * (-power - 1)
                                               * self.p_max ** (-power - 1))
        if tail_corrected and k <= 0:
            # head below the first grid point, density ~ constant there
            p0 = self.p_grid[0]
            if k + 2 > -1:
                val += self.values[0] ** 2 * p0 ** (k + 2) * p0 / (k + 3)
        return val


def _oscillation_r_grid(sol, p_max, points_per_panel=12, mass_tol=1e-16):
    """Quadrature grid on [0, r_up] resolving the fastest j_l oscillation.

    One full oscillation per 12-point Gauss-Legendre panel keeps the panel
    error far below 1e-10 while halving the grid size relative to the
    half-oscillation rule.
    """
    r_up = max(sol.support_radius(mass_tol), 1e-3 * sol.r_c)
    width = np.pi / p_max
    n_panels = max(8, int(np.ceil(r_up / width)))
    bounds = np.linspace(0.0, r_up, n_panels + 1)
    return composite_rule(bounds, points_per_panel)


def transform_point(sol, p, abs_tol=1e-9, max_halvings=10):
    """Unnormalized momentum amplitude at a single p > 0.

    Panel widths start at <= pi/(2p) in r and halve until the result is
    stable to abs_tol.
    """
    if p <= 0:
        raise QuadratureError("transform_point requires p > 0")
    width = min(sol.r_c / 4.0, np.pi / (2.0 * p))
    n_panels = max(4, int(np.ceil(sol.r_c / width)))

    def integrate(panels):
        bounds = np.linspace(0.0, sol.r_c, panels + 1)
        r, w = composite_rule(bounds, 12)
        f = w * sol.evaluate_u(r) * r  # R r^2 = u r
        return transform_contract(sol.state.l, np.array([p]), r, f)[0]

    prev = integrate(n_panels)
    for _ in range(max_halvings):
        n_panels *= 2
        cur = integrate(n_panels)
        if abs(cur - prev) <= abs_tol:
            return cur
        prev = cur
    raise QuadratureError(
        f"transform amplitude at p={p} not stable to {abs_tol} "
        f"after {max_halvings} panel halvings (last delta {abs(cur - prev):.2e})"
    )


def _p_boundaries(spec, p_max, r_osc):
    """Log panels through the low decades, oscillation-resolving above."""
    lo = []
    p = spec.p_min
    while p < min(1.0, p_max):
        lo.append(p)
        p *= 10.0 ** 0.25
    width = np.pi / max(r_osc, 1e-3)
    fine = np.arange(width, p_max, width)
    bounds = np.unique(np.concatenate([lo, fine, [spec.p_min, p_max]]))
    return bounds[(bounds >= spec.p_min) & (bounds <= p_max)]


def build_momentum(sol, spec=None):
    """Normalized MomentumSolution for a radial solution.

    p_max is raised geometrically until the estimated density mass beyond
    the cutoff drops below spec.tail_tol.
    """
    spec = spec or MomentumGridSpec()
    p_max = spec.auto_pmax(sol.r_c)
    r_osc = max(sol.support_radius(1e-9), 1e-3 * sol.r_c)
    # an explicit cutoff is honored exactly; only the automatic one is raised
    max_raises = spec.max_pmax_raises if spec.p_max == 0 else 0

    for attempt in range(max_raises + 1):
        bounds = _p_boundaries(spec, p_max, r_osc)
        p_grid, p_w = composite_rule(bounds, spec.panel_points)

        # integrate per momentum band so low-p points use a coarser r grid
        phi = np.empty_like(p_grid)
        band_tops = [p_max / 8.0, p_max / 4.0, p_max / 2.0, p_max]
        lo = 0.0
        for top in band_tops:
            sel = (p_grid > lo) & (p_grid <= top * (1.0 + 1e-12))
            if np.any(sel):
                r, w = _oscillation_r_grid(sol, top)
                f = w * sol.evaluate_u(r) * r
                phi[sel] = transform_contract(sol.state.l, p_grid[sel], r, f)
            lo = top

        norm2 = float(np.sum(p_w * p_grid**2 * phi**2))
        scale = 1.0 / np.sqrt(norm2)
        phi_n = np.abs(phi) * scale

        # oscillation-averaged tail amplitude: |phi|^2 ~ a^2 sin^2 / p^6
        last = p_grid >= 0.9 * p_max
        a2 = 2.0 * float(np.mean(phi_n[last] ** 2 * p_grid[last] ** 6))
        tail_mass = a2 / (6.0 * p_max**3)
        if tail_mass < spec.tail_tol:
            return MomentumSolution(
                state=sol.state,
                r_c=sol.r_c,
                p_grid=p_grid,
                weights=p_w,
                values=phi_n,
                p_max=p_max,
                tail_mass=tail_mass,
                norm_constant=scale,
                tail_amplitude2=a2,
            )
        p_max *= 1.6

    raise CutoffTooSmallError(
        f"tail mass {tail_mass:.3e} >= {spec.tail_tol} at p_max={p_max:.1f}",
        suggested_pmax=p_max * 2.0,
    )
