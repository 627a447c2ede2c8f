"""Information measures against closed-form oracles.

Free-atom references are exact integrals of rho = e^{-2r}/pi and
Pi = 8 pi^{-2} (1+p^2)^{-4}; the confinement radius 100 bohr puts the wall
far outside the 1s density support.
"""

import math
from types import SimpleNamespace

import numpy as np
import pytest

from chainfo.errors import DomainError
from chainfo.measures import (
    angular_factors,
    assemble_measures,
    fisher_pair,
    onicescu_pair,
    renyi_pair,
    shannon_pair,
)
from chainfo.radial import Confinement, QuantumState, solve_state
from chainfo.momentum import build_momentum
from chainfo.specfun import gauss_legendre


def _free_1s_renyi_r(alpha):
    # (1-a)^-1 ln int rho^a = ln pi - 3 ln a / (1 - a) for rho = e^{-2r}/pi
    return math.log(math.pi) - 3.0 * math.log(alpha) / (1.0 - alpha)


def _free_1s_renyi_p(beta):
    # Pi^b integrates to (8/pi^2)^b 4pi B(3/2, 4b - 3/2) / 2
    mom = ((8.0 / math.pi**2) ** beta * 2.0 * math.pi
           * math.gamma(1.5) * math.gamma(4.0 * beta - 1.5)
           / math.gamma(4.0 * beta))
    return math.log(mom) / (1.0 - beta)


def _uniform_ball_solutions():
    """Fake solution pair with R^2 = 3 on [0, 1]: rho = 3/(4 pi) uniform."""
    rule = gauss_legendre(32)
    r, w = rule.mapped(0.0, 1.0)
    vals = np.full_like(r, math.sqrt(3.0))
    state = QuantumState(1, 0)
    fake = SimpleNamespace(state=state, r_c=1.0, grid=r, weights=w,
                           values=vals, p_grid=r)
    return fake, fake


class TestFree1s:
    def test_shannon(self, cell):
        rsol, psol = cell("1s", 100.0)
        s_r, s_p = shannon_pair(rsol, psol)
        # S_r = 3 + ln pi, S_p exact value 2.42186
        assert s_r == pytest.approx(3.0 + math.log(math.pi), abs=1e-6)
        assert s_p == pytest.approx(2.421862, abs=2e-5)

    def test_renyi_conjugate_pair(self, cell):
        # the (3/5, 3) conjugate orders used by the reference tables
        rsol, psol = cell("1s", 100.0)
        r_r, r_p = renyi_pair(rsol, psol, 0.6, 3.0)
        assert r_r == pytest.approx(_free_1s_renyi_r(0.6), abs=1e-5)
        assert r_p == pytest.approx(_free_1s_renyi_p(3.0), abs=1e-4)

    def test_fisher(self, cell):
        rsol, psol = cell("1s", 100.0)
        i_r, i_p = fisher_pair(rsol, psol)
        assert i_r == pytest.approx(4.0, rel=1e-6)
        assert i_p == pytest.approx(12.0, rel=1e-6)

    def test_onicescu(self, cell):
        rsol, psol = cell("1s", 100.0)
        e_r, e_p = onicescu_pair(rsol, psol)
        assert e_r == pytest.approx(1.0 / (8.0 * math.pi), rel=1e-6)
        # int Pi^2 = (8/pi^2)^2 4pi int p^2 (1+p^2)^-8 dp
        #          = 256 pi^-3 Gamma(3/2) Gamma(13/2) / (2 Gamma(8))
        expect = (256.0 / math.pi**3 * math.gamma(1.5) * math.gamma(6.5)
                  / (2.0 * math.gamma(8.0)))
        assert e_p == pytest.approx(expect, rel=1e-5)

    def test_moment_oracles(self, measures):
        ms = measures("1s", 100.0)
        assert ms.r2 == pytest.approx(3.0, rel=1e-8)
        assert ms.p2 == pytest.approx(1.0, rel=1e-8)
        assert ms.rm2 == pytest.approx(2.0, rel=1e-8)
        assert ms.pm2 == pytest.approx(5.0, rel=1e-5)


class TestAngular:
    def test_l0_closed_forms(self):
        af = angular_factors(0)
        assert af.shannon_ang == pytest.approx(math.log(4.0 * math.pi),
                                               rel=1e-14)
        for q in (0.6, 1.0, 2.0, 3.0):
            assert af.power_integrals[q] == pytest.approx(
                (4.0 * math.pi) ** (1.0 - q), rel=1e-14)

    def test_l1_closed_forms(self):
        # |Y10|^2 = 3 cos^2(theta) / 4pi:
        # int |Y10|^{2q} = 2pi (3/4pi)^q 2/(2q+1)
        # -int |Y10|^2 ln|Y10|^2 = ln(4pi/3) + 2/3
        af = angular_factors(1)
        for q in (0.6, 2.0, 3.0):
            expect = 2.0 * math.pi * (3.0 / (4.0 * math.pi)) ** q \
                * 2.0 / (2.0 * q + 1.0)
            assert af.power_integrals[q] == pytest.approx(expect, rel=1e-12)
        assert af.shannon_ang == pytest.approx(
            math.log(4.0 * math.pi / 3.0) + 2.0 / 3.0, rel=1e-10)

    def test_normalized_at_q1(self):
        for l in range(5):
            af = angular_factors(l, exponents=(1.0,))
            assert af.power_integrals[1.0] == pytest.approx(1.0, rel=1e-12)


class TestUniformBall:
    def test_entropy_equals_log_volume(self):
        rsol, psol = _uniform_ball_solutions()
        v = 4.0 * math.pi / 3.0
        s_r, s_p = shannon_pair(rsol, psol)
        assert s_r == pytest.approx(math.log(v), rel=1e-12)
        r_r, r_p = renyi_pair(rsol, psol, 0.6, 3.0)
        assert r_r == pytest.approx(math.log(v), rel=1e-12)
        assert r_p == pytest.approx(math.log(v), rel=1e-12)

    def test_onicescu_equals_inverse_volume(self):
        rsol, psol = _uniform_ball_solutions()
        e_r, e_p = onicescu_pair(rsol, psol)
        assert e_r == pytest.approx(3.0 / (4.0 * math.pi), rel=1e-12)
        assert e_p == pytest.approx(e_r, rel=1e-14)


class TestContracts:
    def test_renyi_domain_errors(self, cell):
        rsol, psol = cell("1s", 1.0)
        for bad in (0.0, -1.0, 1.0):
            with pytest.raises(DomainError):
                renyi_pair(rsol, psol, bad, 3.0)
            with pytest.raises(DomainError):
                renyi_pair(rsol, psol, 0.6, bad)

    def test_unnormalized_rejected(self, cell):
        rsol, psol = cell("1s", 1.0)
        broken = SimpleNamespace(state=rsol.state, r_c=rsol.r_c,
                                 grid=rsol.grid, weights=rsol.weights,
                                 values=2.0 * rsol.values)
        with pytest.raises(DomainError):
            shannon_pair(broken, psol)

    def test_onicescu_is_exp_of_negative_renyi2(self, cell):
        # E = exp(-R^{alpha=2}) in each space, an exact identity
        rsol, psol = cell("2s", 4.1)
        r_r2, r_p2 = renyi_pair(rsol, psol, 2.0, 2.0)
        e_r, e_p = onicescu_pair(rsol, psol)
        assert e_r == pytest.approx(math.exp(-r_r2), rel=1e-10)
        assert e_p == pytest.approx(math.exp(-r_p2), rel=1e-10)

    def test_mismatched_cells_rejected(self, cell):
        rsol, _ = cell("1s", 1.0)
        _, psol = cell("1s", 5.0)
        with pytest.raises(DomainError):
            assemble_measures(rsol, psol)

    def test_total_space_composition(self, measures):
        ms = measures("2p", 8.5)
        assert ms.S_t == pytest.approx(ms.S_r + ms.S_p, rel=1e-14)
        assert ms.R_t == pytest.approx(ms.R_r_alpha + ms.R_p_beta, rel=1e-14)
        assert ms.I_t == pytest.approx(ms.I_r * ms.I_p, rel=1e-14)
        assert ms.E_t == pytest.approx(ms.E_r * ms.E_p, rel=1e-14)

    def test_nonzero_m_lowers_fisher(self):
        # the |m| term subtracts 2(2l+1)|m| <r^-2> (and <p^-2> in p space)
        conf = Confinement(8.5)
        sol0 = solve_state(QuantumState(2, 1, 0), conf)
        sol1 = solve_state(QuantumState(2, 1, 1), conf)
        p0 = build_momentum(sol0)
        p1 = build_momentum(sol1)
        i_r0, i_p0 = fisher_pair(sol0, p0)
        i_r1, i_p1 = fisher_pair(sol1, p1)
        rm2 = float(np.sum(sol0.weights * sol0.values**2))
        assert i_r1 == pytest.approx(i_r0 - 6.0 * rm2, rel=1e-10)
        assert i_p1 == pytest.approx(i_p0 - 6.0 * p0.moment(-2), rel=1e-10)
