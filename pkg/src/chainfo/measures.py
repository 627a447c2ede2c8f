"""The twelve information scalars of one (state, r_c) cell.

Every quantity is the *net* measure: radial part from the quadrature grids
of the two solutions plus the angular contribution of |Y_l0|^2, which is
independent of the confinement radius. Entropies are in nats; everything
else in hartree atomic units. The convention 0*ln(0) = 0 applies at
density zeros.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .grids import composite_rule, refine_at
from .specfun import gauss_legendre, legendre_p_array

_angular_cache = {}


def _angular_rule(l):
    """Quadrature in u = cos(theta) resolving the |P_l|^(2q) kinks.

    Fractional powers of |P_l| are not smooth at the zeros of P_l, so the
    panels shrink geometrically toward each zero.
    """
    key = (l, "rule")
    if key not in _angular_cache:
        zeros = gauss_legendre(l).nodes
        bounds = np.unique(np.concatenate([[-1.0], zeros, [1.0]]))
        bounds = refine_at(bounds, zeros, scale_frac=0.05, levels=12)
        _angular_cache[key] = composite_rule(bounds, 20)
    return _angular_cache[key]


@dataclass(frozen=True)
class AngularFactors:
    """Angular integrals of |Y_l0|^2: Shannon term and power moments."""

    l: int
    shannon_ang: float                  # -int |Y|^2 ln|Y|^2 dOmega
    power_integrals: dict               # q -> int |Y|^(2q) dOmega


def _angular_power(l, q):
    key = (l, float(q))
    if key not in _angular_cache:
        if l == 0:
            val = (4.0 * math.pi) ** (1.0 - q)
        else:
            u, w = _angular_rule(l)
            p = legendre_p_array(l, u)
            c = (2 * l + 1) / (4.0 * math.pi)
            val = 2.0 * math.pi * c**q * float(
                np.sum(w * np.abs(p) ** (2.0 * q))
            )
        _angular_cache[key] = val
    return _angular_cache[key]


def _angular_shannon(l):
    key = (l, "shannon")
    if key not in _angular_cache:
        if l == 0:
            val = math.log(4.0 * math.pi)
        else:
            u, w = _angular_rule(l)
            p = legendre_p_array(l, u)
            c = (2 * l + 1) / (4.0 * math.pi)
            y2 = c * p**2
            integrand = np.where(y2 > 0, y2 * np.log(np.maximum(y2, 1e-300)), 0.0)
            val = -2.0 * math.pi * float(np.sum(w * integrand))
        _angular_cache[key] = val
    return _angular_cache[key]


def angular_factors(l, exponents=(0.6, 2.0 / 3.0, 1.0, 2.0, 3.0)):
    """Shannon angular term and |Y_l0|^(2q) moments for the given exponents."""
    powers = {float(q): _angular_power(l, q) for q in exponents}
    return AngularFactors(l=l, shannon_ang=_angular_shannon(l),
                          power_integrals=powers)


@dataclass(frozen=True)
class MeasureSet:
    """All information scalars for one (state, r_c)."""

    state: object
    r_c: float
    alpha: float
    beta: float
    S_r: float
    S_p: float
    S_t: float
    R_r_alpha: float
    R_p_beta: float
    R_t: float
    I_r: float
    I_p: float
    I_t: float
    E_r: float
    E_p: float
    E_t: float
    r2: float        # <r^2>
    p2: float        # <p^2>, position-space kinetic integral
    rm2: float       # <r^-2>
    pm2: float       # <p^-2>
    p2_momentum: float  # momentum-space cross-check of <p^2>


def _check_normalized(rsol, psol, tol=1e-6):
    nr = float(np.sum(rsol.weights * rsol.values**2 * rsol.grid**2))
    npn = float(np.sum(psol.weights * psol.p_grid**2 * psol.values**2))
    if abs(nr - 1.0) > tol or abs(npn - 1.0) > tol:
        raise DomainError(
            f"solutions must be normalized: got position {nr}, momentum {npn}"
        )


def _radial_shannon(weights, x, dens):
    """-int dens ln dens x^2 dx with the 0 ln 0 = 0 convention."""
    good = dens > 0
    out = np.zeros_like(dens)
    out[good] = dens[good] * np.log(dens[good])
    return -float(np.sum(weights * x**2 * out))


def shannon_pair(rsol, psol):
    """(S_r, S_p) in nats, radial plus angular parts."""
    _check_normalized(rsol, psol)
    ang = _angular_shannon(rsol.state.l)
    s_r = _radial_shannon(rsol.weights, rsol.grid, rsol.values**2) + ang
    s_p = _radial_shannon(psol.weights, psol.p_grid, psol.values**2) + ang
    return s_r, s_p


def renyi_pair(rsol, psol, alpha, beta):
    """(R_r^alpha, R_p^beta) in nats."""
    for order in (alpha, beta):
        if order <= 0 or order == 1.0:
            raise DomainError(f"Renyi order must be positive and != 1, got {order}")
    _check_normalized(rsol, psol)
    l = rsol.state.l
    mom_r = float(np.sum(rsol.weights * rsol.grid**2 * (rsol.values**2) ** alpha))
    mom_p = float(np.sum(psol.weights * psol.p_grid**2 * (psol.values**2) ** beta))
    r_r = (math.log(mom_r) + math.log(_angular_power(l, alpha))) / (1.0 - alpha)
    r_p = (math.log(mom_p) + math.log(_angular_power(l, beta))) / (1.0 - beta)
    return r_r, r_p


def _kinetic_p2(rsol):
    """<p^2> as the position-space integral of (R')^2 + l(l+1) R^2/r^2.

    Evaluated in the u = rR form, int (u')^2 + l(l+1) u^2/r^2 dr, which is
    identical after integration by parts and free of 1/r^2 cancellation.
    """
    r = rsol.grid
    u = rsol.values * r
    du = rsol.evaluate_du(r)
    l = rsol.state.l
    return float(np.sum(rsol.weights * (du**2 + l * (l + 1) * u**2 / r**2)))


def fisher_pair(rsol, psol):
    """(I_r, I_p) per the central-potential reduction with the |m| term."""
    _check_normalized(rsol, psol)
    l, m = rsol.state.l, rsol.state.m
    p2 = _kinetic_p2(rsol)
    r2 = float(np.sum(rsol.weights * rsol.grid**4 * rsol.values**2))
    i_r = 4.0 * p2
    i_p = 4.0 * r2
    if m != 0:
        rm2 = float(np.sum(rsol.weights * rsol.values**2))
        pm2 = psol.moment(-2)
        i_r -= 2.0 * (2 * l + 1) * abs(m) * rm2
        i_p -= 2.0 * (2 * l + 1) * abs(m) * pm2
    return i_r, i_p


def onicescu_pair(rsol, psol):
    """(E_r, E_p) disequilibrium integrals with the q = 2 angular factor."""
    _check_normalized(rsol, psol)
    l = rsol.state.l
    ang2 = _angular_power(l, 2.0)
    e_r = float(np.sum(rsol.weights * rsol.grid**2 * rsol.values**4)) * ang2
    e_p = float(np.sum(psol.weights * psol.p_grid**2 * psol.values**4)) * ang2
    return e_r, e_p


def assemble_measures(rsol, psol, alpha=0.6, beta=3.0):
    """Fully populated MeasureSet for one consistent (state, r_c) pair."""
    if rsol.state != psol.state or abs(rsol.r_c - psol.r_c) > 1e-12 * rsol.r_c:
        raise DomainError("position and momentum solutions describe different cells")
    s_r, s_p = shannon_pair(rsol, psol)
    r_r, r_p = renyi_pair(rsol, psol, alpha, beta)
    i_r, i_p = fisher_pair(rsol, psol)
    e_r, e_p = onicescu_pair(rsol, psol)
    r2 = float(np.sum(rsol.weights * rsol.grid**4 * rsol.values**2))
    rm2 = float(np.sum(rsol.weights * rsol.values**2))
    return MeasureSet(
        state=rsol.state,
        r_c=rsol.r_c,
        alpha=alpha,
        beta=beta,
        S_r=s_r, S_p=s_p, S_t=s_r + s_p,
        R_r_alpha=r_r, R_p_beta=r_p, R_t=r_r + r_p,
        I_r=i_r, I_p=i_p, I_t=i_r * i_p,
        E_r=e_r, E_p=e_p, E_t=e_r * e_p,
        r2=r2,
        p2=_kinetic_p2(rsol),
        rm2=rm2,
        pm2=psol.moment(-2),
        p2_momentum=psol.moment(2),
    )
