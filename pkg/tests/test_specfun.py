"""Special-function primitives against scipy oracles and exact identities."""

import math

import numpy as np
import pytest
import scipy.special as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from chainfo.errors import DomainError, UnsupportedOrderError
from chainfo.specfun import (
    gauss_legendre,
    kummer_1f1,
    legendre_p,
    legendre_p_array,
    sph_bessel_j,
)


class TestKummer1F1:
    def test_trivial_values(self):
        assert kummer_1f1(0.0, 2.0, 3.7) == 1.0
        assert kummer_1f1(1.5, 2.5, 0.0) == 1.0
        # 1F1(a; a; x) = e^x
        assert kummer_1f1(2.0, 2.0, 1.0) == pytest.approx(math.e, rel=1e-14)

    def test_polynomial_branch(self):
        # 1F1(-1; b; x) = 1 - x/b exactly
        assert kummer_1f1(-1.0, 3.0, 2.0) == pytest.approx(1.0 - 2.0 / 3.0,
                                                           rel=1e-15)
        # 1F1(-2; 2; x) = 1 - x + x^2/6
        x = 1.7
        assert kummer_1f1(-2.0, 2.0, x) == pytest.approx(
            1.0 - x + x * x / 6.0, rel=1e-14)

    @pytest.mark.parametrize("a", [-3.0, -0.5, 0.25, 1.0, 2.75])
    @pytest.mark.parametrize("b", [1.0, 2.0, 4.0, 6.5])
    @pytest.mark.parametrize("x", [0.01, 0.5, 1.0, 5.0, 20.0])
    def test_against_scipy(self, a, b, x):
        assert kummer_1f1(a, b, x) == pytest.approx(
            float(sp.hyp1f1(a, b, x)), rel=1e-11, abs=1e-13)

    @given(a=st.floats(-4.0, 4.0), b=st.floats(0.5, 8.0), x=st.floats(0.0, 10.0))
    @settings(max_examples=150, deadline=None)
    def test_contiguous_recurrence(self, a, b, x):
        # b 1F1(a;b;x) - b 1F1(a-1;b;x) - x 1F1(a;b+1;x) = 0
        lhs = (b * kummer_1f1(a, b, x)
               - b * kummer_1f1(a - 1.0, b, x)
               - x * kummer_1f1(a, b + 1.0, x))
        scale = max(1.0, abs(b * kummer_1f1(a, b, x)))
        assert abs(lhs) <= 1e-10 * scale

    def test_nonpositive_integer_b_rejected(self):
        with pytest.raises(DomainError):
            kummer_1f1(1.0, 0.0, 1.0)
        with pytest.raises(DomainError):
            kummer_1f1(1.0, -2.0, 1.0)


class TestLegendre:
    def test_scalar_values(self):
        assert legendre_p(0, 0.3) == 1.0
        assert legendre_p(1, 0.3) == pytest.approx(0.3, rel=1e-15)
        u = 0.4
        assert legendre_p(2, u) == pytest.approx(0.5 * (3 * u * u - 1), rel=1e-14)
        assert legendre_p(5, 1.0) == pytest.approx(1.0, rel=1e-14)
        assert legendre_p(5, -1.0) == pytest.approx(-1.0, rel=1e-14)

    @pytest.mark.parametrize("l", range(9))
    def test_against_scipy(self, l):
        u = np.linspace(-1.0, 1.0, 41)
        ours = legendre_p_array(l, u)
        ref = sp.eval_legendre(l, u)
        assert np.max(np.abs(ours - ref)) < 1e-12

    def test_orthogonality(self):
        rule = gauss_legendre(64)
        for l in range(9):
            for k in range(l, 9):
                val = float(np.sum(rule.weights
                                   * legendre_p_array(l, rule.nodes)
                                   * legendre_p_array(k, rule.nodes)))
                expect = 2.0 / (2 * l + 1) if l == k else 0.0
                assert val == pytest.approx(expect, abs=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            legendre_p(3, 1.5)
        with pytest.raises(DomainError):
            legendre_p_array(3, np.array([0.0, 2.0]))


class TestSphericalBessel:
    def test_small_argument_limits(self):
        assert sph_bessel_j(0, 0.0) == pytest.approx(1.0, rel=1e-15)
        for l in range(1, 5):
            assert sph_bessel_j(l, 0.0) == 0.0
        # leading term x^l / (2l+1)!!
        x = 1e-4
        dfact = [1.0, 3.0, 15.0, 105.0, 945.0]
        for l in range(5):
            assert sph_bessel_j(l, x) == pytest.approx(x**l / dfact[l],
                                                       rel=1e-7)

    @pytest.mark.parametrize("l", range(5))
    def test_against_scipy(self, l):
        for x in np.concatenate([np.linspace(1e-3, 2.0, 40),
                                 np.linspace(2.0, 60.0, 60)]):
            assert sph_bessel_j(l, float(x)) == pytest.approx(
                float(sp.spherical_jn(l, x)), rel=1e-10, abs=1e-13)

    @pytest.mark.parametrize("l", range(5))
    def test_ode_residual(self, l):
        # x^2 j'' + 2x j' + (x^2 - l(l+1)) j = 0, central differences
        h = 1e-5
        for x in np.linspace(0.1, 50.0, 120):
            jm, j0, jp = (sph_bessel_j(l, x - h), sph_bessel_j(l, x),
                          sph_bessel_j(l, x + h))
            d1 = (jp - jm) / (2 * h)
            d2 = (jp - 2 * j0 + jm) / (h * h)
            res = x * x * d2 + 2 * x * d1 + (x * x - l * (l + 1)) * j0
            assert abs(res) < 1e-4 * max(1.0, x * x)

    def test_branch_continuity_at_cutoff(self):
        for l in range(5):
            lo = sph_bessel_j(l, 0.5 - 1e-12)
            hi = sph_bessel_j(l, 0.5 + 1e-12)
            assert lo == pytest.approx(hi, rel=1e-10, abs=1e-15)

    def test_domain(self):
        with pytest.raises(UnsupportedOrderError):
            sph_bessel_j(5, 1.0)
        with pytest.raises(DomainError):
            sph_bessel_j(2, -0.1)


class TestGaussLegendre:
    @pytest.mark.parametrize("order", [1, 2, 5, 16, 64, 200])
    def test_weight_sum_and_symmetry(self, order):
        rule = gauss_legendre(order)
        assert float(np.sum(rule.weights)) == pytest.approx(2.0, rel=1e-14)
        assert np.allclose(rule.nodes, -rule.nodes[::-1], atol=1e-15)
        assert np.all(np.diff(rule.nodes) > 0)

    @pytest.mark.parametrize("order", [2, 5, 16])
    def test_polynomial_exactness(self, order):
        # exact through degree 2*order - 1
        rule = gauss_legendre(order)
        for deg in range(2 * order):
            val = float(np.sum(rule.weights * rule.nodes**deg))
            exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
            assert val == pytest.approx(exact, abs=1e-13)

    def test_against_numpy(self):
        x, w = np.polynomial.legendre.leggauss(48)
        rule = gauss_legendre(48)
        assert np.max(np.abs(rule.nodes - x)) < 1e-13
        assert np.max(np.abs(rule.weights - w)) < 1e-13

    def test_mapped_exponential(self):
        # int_0^40 e^-x dx = 1 - e^-40, composite via mapped()
        rule = gauss_legendre(40)
        edges = np.linspace(0.0, 40.0, 11)
        total = 0.0
        for a, b in zip(edges[:-1], edges[1:]):
            x, w = rule.mapped(a, b)
            total += float(np.sum(w * np.exp(-x)))
        assert total == pytest.approx(1.0 - math.exp(-40.0), rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            gauss_legendre(0)
