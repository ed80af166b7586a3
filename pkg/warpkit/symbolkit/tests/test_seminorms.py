"""Tests for sampled semi-norms and class membership."""

import dataclasses

import pytest

from warpkit.symbolkit.seminorms import (
    InvalidSamplingError,
    SamplingSpec,
    estimate_seminorm,
    sample_points,
    verify_membership,
)
from warpkit.symbolkit.symbols import Symbol, UnsupportedOrderError, symbol_derivative, symbol_product

THETA_XI = {"prod": [{"var": ["theta", 0]}, {"var": ["xi", 0]}]}
GAUSS = {"gauss": {"over": "all"}}


class TestSampling:
    """Test sample point generation."""

    def test_point_count_k1(self):
        """Test k=1 uses radii times angles plus the origin."""
        theta, xi, radius = sample_points(SamplingSpec(n_radii=8, n_angles=16), k=1)
        assert theta.shape == (8 * 16 + 1, 1)
        assert xi.shape == theta.shape
        assert radius[0] == 0.0

    def test_directions_k2_are_unit(self):
        """Test k=2 directions lie on the unit sphere of R^4."""
        spec = SamplingSpec(n_radii=1, r_min=1.0, r_max=1.0, n_angles=8, include_origin=False)
        theta, xi, _ = sample_points(spec, k=2)
        norms = (theta**2).sum(axis=-1) + (xi**2).sum(axis=-1)
        assert norms == pytest.approx(1.0)

    def test_empty_sampling(self):
        """Test a spec without points is rejected."""
        with pytest.raises(InvalidSamplingError, match="no points"):
            sample_points(SamplingSpec(n_radii=0, include_origin=False), k=1)


class TestEstimateSeminorm:
    """Test estimate_seminorm."""

    def test_constant(self):
        """Test the ratio of the constant symbol at order zero is one."""
        estimate = estimate_seminorm(Symbol.constant(1, k=1, order=0))
        assert estimate.value == pytest.approx(1.0)

    def test_japanese_bracket(self):
        """Test (1+|z|^2)^{1/2} at order one has semi-norm one."""
        s = Symbol.from_expression({"japanese": {"power": 1}}, k=1, order=1, rho=1)
        estimate = estimate_seminorm(s)
        assert estimate.value == pytest.approx(1.0)
        assert estimate.argmax_theta == [0.0]

    def test_underdeclared_order_grows(self):
        """Test theta*xi declared at order one grows like R_max / 2."""
        s = Symbol.from_expression(THETA_XI, k=1, order=1, rho=1)
        small = estimate_seminorm(s, sampling=SamplingSpec(r_max=1e2))
        large = estimate_seminorm(s, sampling=SamplingSpec(r_max=1e3))
        assert large.value > 5 * small.value
        assert large.value == pytest.approx(500.0, rel=1e-2)

    def test_reproducible(self):
        """Test identical specs give identical estimates."""
        s = Symbol.from_expression(GAUSS, k=2, order=0, rho=1)
        spec = SamplingSpec(n_radii=16, n_angles=8)
        assert estimate_seminorm(s, [1, 0], [0, 0], spec) == estimate_seminorm(s, [1, 0], [0, 0], spec)

    def test_order_beyond_ceiling(self):
        """Test an order past the derivative ceiling is refused before any sampling."""
        s = dataclasses.replace(Symbol.constant(1, k=1), max_derivative_order=1)
        empty = SamplingSpec(n_radii=0, include_origin=False)
        with pytest.raises(UnsupportedOrderError, match="order 3 exceeds ceiling 2"):
            estimate_seminorm(s, [2], [1], empty, ceiling=2)
        with pytest.raises(UnsupportedOrderError):
            verify_membership(s, up_to_order=3, sampling=empty, ceiling=2)
        assert estimate_seminorm(s, [1], [1], ceiling=2).value == pytest.approx(0.0)


class TestVerifyMembership:
    """Test verify_membership."""

    def test_gaussian(self):
        """Test the Gaussian lies in S^0_1."""
        s = Symbol.from_expression(GAUSS, k=1, order=0, rho=1)
        assert verify_membership(s, up_to_order=2).passed

    def test_homogeneous_degree_two(self):
        """Test theta*xi lies in S^2_1."""
        s = Symbol.from_expression(THETA_XI, k=1, order=2, rho=1)
        assert verify_membership(s, up_to_order=2).passed

    def test_homogeneous_wrong_order(self):
        """Test theta*xi fails S^1_1 on the undifferentiated index."""
        s = Symbol.from_expression(THETA_XI, k=1, order=1, rho=1)
        report = verify_membership(s, up_to_order=2)
        assert not report.passed
        failing = report.failures()[0]
        assert failing.alpha == [0] and failing.beta == [0]
        assert failing.growth_exponent == pytest.approx(1.0, abs=0.05)

    def test_nesting(self):
        """Test a member of S^2_1 also passes in S^3_{1/2}."""
        s = Symbol.from_expression(THETA_XI, k=1, order=2, rho=1)
        assert verify_membership(s, up_to_order=2, order=3, rho=0.5).passed

    def test_product_adds_orders(self):
        """Test a product of degree-one symbols passes at order two."""
        theta = Symbol.from_expression({"var": ["theta", 0]}, k=1, order=1, rho=1)
        xi = Symbol.from_expression({"var": ["xi", 0]}, k=1, order=1, rho=1)
        assert verify_membership(theta, up_to_order=2).passed
        product = symbol_product(theta, xi)
        assert product.order == 2
        assert verify_membership(product, up_to_order=2).passed

    def test_derivative_reduces_order(self):
        """Test D_xi(theta xi) passes at order one."""
        s = Symbol.from_expression(THETA_XI, k=1, order=2, rho=1)
        assert verify_membership(symbol_derivative(s, alpha=[1]), up_to_order=2).passed

    def test_gaussian_derivatives(self):
        """Test derivatives of the Gaussian pass at order -(|alpha|+|beta|)."""
        s = Symbol.from_expression(GAUSS, k=1, order=0, rho=1)
        d = symbol_derivative(s, alpha=[1], beta=[1])
        assert d.order == -2
        assert verify_membership(d, up_to_order=1).passed

    def test_k2_gaussian(self):
        """Test membership scans run for k=2."""
        s = Symbol.from_expression(GAUSS, k=2, order=0, rho=1)
        report = verify_membership(s, up_to_order=1, sampling=SamplingSpec(n_radii=24, n_angles=8))
        assert report.passed
        assert len(report.entries) == 5
