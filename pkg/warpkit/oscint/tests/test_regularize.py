"""Tests for the regularized path."""

import dataclasses

import numpy as np
import pytest
import sympy

from warpkit.oscint.cutoff import eval_cutoff
from warpkit.oscint.regularize import (
    GeometryError,
    InsufficientRegularizationError,
    Numerator,
    RegularizationSpec,
    absolute_truncation_sequence,
    active_coordinates,
    adjoint_coefficients,
    apply_m_to_phase,
    build_regularization,
    eval_regularized,
    regularize,
    required_iterations,
    unit_sphere_area,
    vector_field,
)
from warpkit.symbolkit.expr import VariableSet
from warpkit.symbolkit.family import SymbolFamily
from warpkit.symbolkit.symbols import BilinearForm, Symbol, UnsupportedOrderError

ETA = BilinearForm.euclidean(1)
GAUSS = {"gauss": {"over": "all"}}
GAUSS_XI = {"gauss": {"over": "xi"}}


def gaussian() -> Symbol:
    # Declared order -10 so that h = 0 is admissible.
    return Symbol.from_expression(GAUSS, k=1, order=-10, rho=1, label="gauss")


class TestRequiredIterations:
    """Test required_iterations."""

    @pytest.mark.parametrize(
        "m,rho,k,expected",
        [(0, 0, 1, 3), (0, 1, 2, 3), (-3, 1, 1, 0), (0, 1, 1, 2), (-2, 0, 1, 1), (1, 0.5, 1, 3)],
    )
    def test_examples(self, m, rho, k, expected):
        """Test the smallest h strictly above (m + 2k)/(rho + 1)."""
        assert required_iterations(m, rho, k) == expected

    def test_type_bound(self):
        """Test rho <= -1 is rejected."""
        with pytest.raises(ValueError, match="exceed -1"):
            required_iterations(0, -1, 1)


class TestVectorField:
    """Test Xi, div Xi and the invariance of the phase."""

    def test_euclidean_k1(self):
        """Test phi = theta^2 + xi^2 and Xi = (xi, theta)/phi."""
        field = vector_field(ETA)
        v = VariableSet(k=1)
        theta, xi = v.theta[0], v.xi[0]
        phi = theta**2 + xi**2
        assert sympy.simplify(field.phi - phi) == 0
        assert sympy.simplify(field.xi_field[0] - xi / phi) == 0
        assert sympy.simplify(field.xi_field[1] - theta / phi) == 0
        assert sympy.simplify(field.divergence + 4 * theta * xi / phi**2) == 0

    @pytest.mark.parametrize("matrix", [[[1.0]], [[2.0]], [[1.0, 0.5], [0.0, -1.0]]])
    def test_phase_invariance(self, matrix):
        """Test i Xi.grad leaves e^{-i eta} unchanged."""
        eta = BilinearForm(np.array(matrix))
        rng = np.random.default_rng(0)
        k = eta.dimension
        theta = rng.normal(size=(20, k)) * 3
        xi = rng.normal(size=(20, k)) * 3
        np.testing.assert_allclose(apply_m_to_phase(eta, theta, xi), np.exp(-1j * eta(theta, xi)), atol=1e-12)


class TestAdjointCoefficients:
    """Test the polynomial numerators of (M*)^j."""

    def test_homogeneous_degrees(self):
        """Test P_gamma of (M*)^j has degree |gamma| + 2j in every monomial."""
        eta = BilinearForm(np.array([[1.0, 0.5], [0.0, -1.0]]))
        for j, numerators in enumerate(adjoint_coefficients(eta, 3)):
            for gamma, p in numerators.items():
                degrees = Numerator.from_poly(p).exponents.sum(axis=1)
                assert set(degrees.tolist()) == {sum(gamma) + 2 * j}

    def test_active_directions_only(self):
        """Test a theta-independent symbol only ever needs xi derivatives."""
        history = adjoint_coefficients(BilinearForm.euclidean(2), 5, active=(2, 3))
        assert all(gamma[:2] == (0, 0) for numerators in history for gamma in numerators)
        assert max(sum(gamma) for gamma in history[5]) == 5

    def test_active_coordinates(self):
        """Test the dependence of a symbol is read off its expression."""
        assert active_coordinates(Symbol.from_expression(GAUSS_XI, k=2, order=0, rho=0)) == (2, 3)
        assert active_coordinates(Symbol.constant(1, k=2)) == ()
        assert active_coordinates(gaussian()) == (0, 1)

    def test_torus_grid_matches_points(self):
        """Test the separable k = 2 evaluation against direct evaluation at the same points."""
        eta = BilinearForm(np.array([[1.0, 0.2], [0.3, 0.8]]))
        numerators = adjoint_coefficients(eta, 2)[2]
        assert (0, 1, 1, 0) in numerators
        p = Numerator.from_poly(numerators[(0, 1, 1, 0)])
        a = np.array([0.2, 0.9, 1.4])
        b = np.linspace(0, 2 * np.pi, 5, endpoint=False)
        c = np.linspace(0, 2 * np.pi, 4, endpoint=False)
        aa, bb, cc = np.meshgrid(a, b, c, indexing="ij")
        z = np.stack(
            [np.cos(aa) * np.cos(bb), np.cos(aa) * np.sin(bb), np.sin(aa) * np.cos(cc), np.sin(aa) * np.sin(cc)], axis=-1
        )
        np.testing.assert_allclose(p.on_torus(a, b, c), p(z), rtol=1e-10, atol=1e-12)


class TestBuildRegularization:
    """Test build_regularization."""

    def test_no_iterations(self):
        """Test h = 0 leaves the symbol untouched with no boundary terms."""
        s = gaussian()
        decomp = build_regularization(s, ETA, h=0)
        assert decomp.boundary_terms == ()
        z = np.array([[0.3], [1.2]])
        np.testing.assert_allclose(decomp.bulk_integrand(z, z[::-1]), s.partial(z, z[::-1], (0,), (0,)))

    def test_single_adjoint(self):
        """Test M*(s) = (xi d_theta s + theta d_xi s)/phi - 4 theta xi s/phi^2."""
        decomp = build_regularization(gaussian(), ETA, h=1)
        theta = np.array([[0.7], [-1.1], [2.0]])
        xi = np.array([[0.4], [0.9], [-0.5]])
        t, x = theta[:, 0], xi[:, 0]
        s = np.exp(-(t**2) - x**2)
        phi = t**2 + x**2
        expected = (x * (-2 * t * s) + t * (-2 * x * s)) / phi - 4 * t * x * s / phi**2
        np.testing.assert_allclose(decomp.bulk_integrand(theta, xi), expected, rtol=1e-12)
        assert len(decomp.boundary_terms) == 1

    def test_default_count(self):
        """Test h defaults to required_iterations."""
        decomp = build_regularization(Symbol.constant(1, k=1), ETA)
        assert decomp.h == 2
        assert decomp.decay_declared == -4
        assert decomp.decay_observed == pytest.approx(-4.0, abs=1e-6)

    def test_insufficient(self):
        """Test h below the required count is rejected."""
        with pytest.raises(InsufficientRegularizationError, match="need h >= 2"):
            build_regularization(Symbol.constant(1, k=1), ETA, h=1)

    def test_unsupported_order(self):
        """Test symbols without order-h derivatives are rejected."""
        s = dataclasses.replace(Symbol.constant(1, k=1), max_derivative_order=1)
        with pytest.raises(UnsupportedOrderError):
            build_regularization(s, ETA, h=2)

    def test_degenerate_geometry(self):
        """Test a nearly degenerate form trips the phi floor."""
        eta = BilinearForm(np.array([[1e-7]]))
        with pytest.raises(GeometryError, match="below"):
            build_regularization(Symbol.constant(1, k=1), eta)

    def test_bad_radius(self):
        """Test delta must be positive."""
        with pytest.raises(ValueError, match="positive"):
            build_regularization(gaussian(), ETA, delta=0.0)


class TestEvalRegularized:
    """Test eval_regularized."""

    def test_constant_symbol(self):
        """Test s = 1 with three iterations gives 1 and agrees with the cutoff path."""
        s = Symbol.constant(1, k=1)
        result = eval_regularized(build_regularization(s, ETA, h=3))
        assert result.value == pytest.approx(1.0, abs=1e-4)
        assert result.method == "regularized"
        assert abs(result.value - eval_cutoff(s, ETA).value) < 1e-4
        assert set(result.diagnostics.contributions) == {"ball", "bulk", "boundary_0", "boundary_1", "boundary_2"}

    def test_gaussian_any_h(self):
        """Test h = 0 and h = 3 give the same Gaussian value."""
        for h in (0, 3):
            result = eval_regularized(build_regularization(gaussian(), ETA, h=h))
            assert result.value == pytest.approx(5**-0.5, abs=1e-8)

    def test_ball_radius_independence(self):
        """Test halving delta changes the value by less than the error estimates."""
        s = Symbol.constant(1, k=1)
        a = eval_regularized(build_regularization(s, ETA, delta=0.5, h=3))
        b = eval_regularized(build_regularization(s, ETA, delta=0.25, h=3))
        assert abs(a.value - b.value) <= a.error_estimate + b.error_estimate

    def test_theta_independent(self):
        """Test e^{-xi^2} regularizes to its value at the origin."""
        s = Symbol.from_expression(GAUSS_XI, k=1, order=0, rho=0)
        result = regularize(s, ETA)
        assert result.value == pytest.approx(1.0, abs=1e-3)

    def test_scaled_form(self):
        """Test eta = 2 theta xi on the Gaussian gives 8^{-1/2} on both paths."""
        eta = BilinearForm(np.array([[2.0]]))
        s = gaussian()
        reg = regularize(s, eta, RegularizationSpec(h=1))
        assert reg.value == pytest.approx(8**-0.5, abs=1e-8)
        assert eval_cutoff(s, eta).value == pytest.approx(8**-0.5, abs=1e-7)

    def test_theta_independent_2d(self):
        """Test e^{-|xi|^2} on R^2 x R^2 regularizes to its value at the origin with five iterations."""
        s = Symbol.from_expression(GAUSS_XI, k=2, order=0, rho=0)
        decomp = build_regularization(s, BilinearForm.euclidean(2))
        assert decomp.h == 5
        assert eval_regularized(decomp).value == pytest.approx(1.0, abs=1e-3)

    def test_gaussian_2d(self):
        """Test e^{-|theta|^2 - |xi|^2} on R^2 x R^2 gives 1/5."""
        s = Symbol.from_expression(GAUSS, k=2, order=0, rho=1)
        result = regularize(s, BilinearForm.euclidean(2), RegularizationSpec(bulk_radius=4.0))
        assert result.value == pytest.approx(0.2, abs=1e-5)

    def test_shifted_member_2d(self):
        """Test the shifted theta Gaussian of the trivial family hits e^{-|c|^2}."""
        (member,) = [m for m in SymbolFamily.trivial() if m.label == "shifted_gauss_theta_2d"]
        result = regularize(member.symbol, member.form)
        assert abs(result.value - member.expected) <= 1e-3 * abs(member.expected)

    def test_form_mismatch(self):
        """Test the decomposition is tied to its form."""
        decomp = build_regularization(gaussian(), ETA, h=0)
        with pytest.raises(ValueError, match="different bilinear form"):
            eval_regularized(decomp, BilinearForm(np.array([[2.0]])))


class TestTruncationSequence:
    """Test the absolute-convergence threshold m < -2k."""

    def test_sphere_area(self):
        """Test |S^1| = 2 pi and |S^3| = 2 pi^2."""
        assert unit_sphere_area(2) == pytest.approx(2 * np.pi)
        assert unit_sphere_area(4) == pytest.approx(2 * np.pi**2)

    @pytest.mark.parametrize("k", [1, 2])
    def test_threshold(self, k):
        """Test convergence below -2k and divergence at and above it."""
        assert absolute_truncation_sequence(-2 * k - 1, k).converging
        assert not absolute_truncation_sequence(-2 * k, k).converging
        assert not absolute_truncation_sequence(-2 * k + 0.5, k).converging

    def test_values_increase(self):
        """Test truncations of a positive integrand are monotone."""
        seq = absolute_truncation_sequence(-3, 1)
        assert all(b > a for a, b in zip(seq.values, seq.values[1:], strict=False))
        assert seq.growth_exponent == pytest.approx(-1.0, abs=0.05)
