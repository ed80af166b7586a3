"""Tests for oscillatory integrals of symbolic distributions."""

import numpy as np
import pytest

from warpkit.oscint.cutoff import CutoffSpec
from warpkit.oscint.distribution import evaluate, integrate_oscillated, oscillate_distribution
from warpkit.symbolkit.extended import ExtendedSymbol, SupportError, adaptive_profile_pairing, pairing_quadrature
from warpkit.symbolkit.symbols import BilinearForm, Symbol
from warpkit.symbolkit.testfunction import TestFunction, XQuadratureSpec

ETA = BilinearForm.euclidean(1)
GAUSS_XI = {"gauss": {"over": "xi"}}
PLANE_WAVE = {"prod": [{"iexp": {"prod": [{"var": ["x", 0]}, {"var": ["theta", 0]}]}}, GAUSS_XI]}
COARSE = XQuadratureSpec(nodes_per_panel=6, base_panels=2, grading_levels=0)
GRADED = XQuadratureSpec(nodes_per_panel=6, base_panels=2, grading_levels=8)
SHORT = CutoffSpec(n_terms=4, depth=3, chunk_size=200_000)


def quadratic(x):
    return 1 + x[..., 0] ** 2


class TestSeparable:
    """Test separable symbols u(x) = g(x) s."""

    def setup_method(self):
        base = Symbol.from_expression(GAUSS_XI, k=1, order=0, rho=0)
        self.u = ExtendedSymbol.separable(quadratic, base)
        self.f = TestFunction.bump([0.1], 0.4)

    def test_theta_independent_fiber(self):
        """Test I_eta(<g s, f>) = int g f when I_eta(s) = 1."""
        nodes, fw = pairing_quadrature(self.u, self.f)
        expected = np.sum(fw * quadratic(nodes))
        result = oscillate_distribution(self.u, self.f, ETA)
        assert result.value == pytest.approx(expected, rel=1e-6)

    def test_both_orders_agree(self):
        """Test oscillate-then-integrate equals integrate-then-oscillate."""
        a = oscillate_distribution(self.u, self.f, ETA, cutoff=SHORT)
        b = integrate_oscillated(self.u, self.f, ETA, cutoff=SHORT)
        assert b.value == pytest.approx(a.value, rel=1e-12)

    def test_zero_function(self):
        """Test f = 0 gives 0 on both sides."""
        zero = TestFunction.zero(1)
        assert oscillate_distribution(self.u, zero, ETA).value == 0
        assert integrate_oscillated(self.u, zero, ETA, "regularized").value == 0


class TestFiberwise:
    """Test one oscillatory integral per x-node for separable symbols."""

    def test_singular_profile(self):
        """Test |x|^{-1/2} e^{-xi^2} oscillates fiber by fiber to int |x|^{-1/2} f."""
        u = ExtendedSymbol.from_config(
            {
                "profile": {"abspow": {"index": 0, "center": 0.0, "exponent": -0.5}},
                "symbol": {"k": 1, "order": 0, "type": 0, "expr": GAUSS_XI},
            }
        )
        f = TestFunction.bump([0.1], 0.4)
        expected = adaptive_profile_pairing(u, f)
        result = integrate_oscillated(u, f, ETA, x_quadrature=GRADED, cutoff=SHORT, fiberwise=True)
        assert result.value == pytest.approx(expected, rel=1e-3)
        assert not any("profile pairing" in note for note in result.diagnostics.notes)

    def test_smooth_profile(self):
        """Test the fiberwise value of (1 + x^2) e^{-xi^2} against adaptive quadrature of the profile."""
        u = ExtendedSymbol.separable(quadratic, Symbol.from_expression(GAUSS_XI, k=1, order=0, rho=0))
        f = TestFunction.bump([0.1], 0.4)
        result = integrate_oscillated(u, f, ETA, x_quadrature=GRADED, cutoff=SHORT, fiberwise=True)
        assert result.value == pytest.approx(adaptive_profile_pairing(u, f), rel=1e-4)

    def test_matches_shortcut(self):
        """Test fiberwise and scaled evaluation agree on the same nodes."""
        u = ExtendedSymbol.separable(quadratic, Symbol.from_expression({"gauss": {"over": "all"}}, k=1, order=-10, rho=1))
        f = TestFunction.bump([-0.2], 0.3)
        a = integrate_oscillated(u, f, ETA, x_quadrature=COARSE, cutoff=SHORT)
        b = integrate_oscillated(u, f, ETA, x_quadrature=COARSE, cutoff=SHORT, fiberwise=True)
        assert b.value == pytest.approx(a.value, rel=1e-9)

    def test_adaptive_pairing_needs_separable(self):
        """Test the adaptive oracle refuses general symbols."""
        u = ExtendedSymbol.from_expression(PLANE_WAVE, s=1, k=1, order=0, rho=0)
        with pytest.raises(SupportError, match="separable"):
            adaptive_profile_pairing(u, TestFunction.bump([0.0], 0.5))


class TestGeneral:
    """Test the non-separable symbol e^{i x theta} e^{-xi^2}, whose fibers oscillate to e^{-x^2}."""

    def setup_method(self):
        self.u = ExtendedSymbol.from_expression(PLANE_WAVE, s=1, k=1, order=0, rho=0)
        self.f = TestFunction.bump([0.2], 0.3, mass=1.0)

    def test_intertwiner(self):
        """Test both orders agree on the same x-nodes."""
        a = oscillate_distribution(self.u, self.f, ETA, x_quadrature=COARSE, cutoff=SHORT)
        b = integrate_oscillated(self.u, self.f, ETA, x_quadrature=COARSE, cutoff=SHORT)
        assert b.value == pytest.approx(a.value, rel=1e-9)

    def test_fiber_values(self):
        """Test the oscillated fibers integrate to int e^{-x^2} f."""
        nodes, fw = pairing_quadrature(self.u, self.f, COARSE)
        expected = np.sum(fw * np.exp(-nodes[:, 0] ** 2))
        result = integrate_oscillated(self.u, self.f, ETA, x_quadrature=COARSE, cutoff=SHORT)
        assert result.value == pytest.approx(expected, abs=1e-5)


class TestEvaluate:
    """Test method dispatch."""

    def test_unknown_method(self):
        """Test unknown methods are rejected."""
        with pytest.raises(ValueError, match="Unknown method"):
            evaluate(Symbol.constant(1, k=1), ETA, "stationary_phase")

    def test_methods_agree(self):
        """Test both methods on a Gaussian in xi times a Gaussian in theta."""
        s = Symbol.from_expression({"gauss": {"over": "all"}}, k=1, order=-10, rho=1)
        cut = evaluate(s, ETA, "cutoff")
        reg = evaluate(s, ETA, "regularized")
        assert abs(cut.value - reg.value) <= cut.error_estimate + reg.error_estimate + 1e-8
