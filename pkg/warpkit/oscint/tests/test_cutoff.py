"""Tests for the cutoff-and-extrapolate path."""

import numpy as np
import pytest

from warpkit.oscint.cutoff import CutoffSpec, eval_cutoff, mollifier
from warpkit.oscint.result import DivergenceError, extrapolate
from warpkit.symbolkit.symbols import BilinearForm, Symbol

ETA = BilinearForm.euclidean(1)
GAUSS = {"gauss": {"over": "all"}}
GAUSS_XI = {"gauss": {"over": "xi"}}
SHORT = CutoffSpec(n_terms=3, depth=2)


class TestMollifier:
    """Test the one-dimensional bump."""

    def test_normalized_at_origin(self):
        """Test psi(0) = 1 and psi vanishes outside (-1, 1)."""
        np.testing.assert_allclose(mollifier(np.array([0.0, 1.0, -1.5, 2.0])), [1.0, 0.0, 0.0, 0.0])

    def test_even(self):
        """Test psi is even."""
        t = np.linspace(-0.99, 0.99, 11)
        np.testing.assert_allclose(mollifier(t), mollifier(-t))

    def test_chi_at_origin(self):
        """Test both cutoff profiles equal one at the origin."""
        for profile in ("product", "radial"):
            assert CutoffSpec(profile=profile).chi(np.zeros((1, 4)))[0] == 1.0


class TestCutoffSpec:
    """Test CutoffSpec."""

    def test_schedule(self):
        """Test the default schedule halves six times from 1/2."""
        assert CutoffSpec().schedule() == pytest.approx([0.5 / 2**n for n in range(6)])

    def test_depth_needs_terms(self):
        """Test Richardson depth is limited by the schedule length."""
        with pytest.raises(ValueError, match="Richardson depth"):
            CutoffSpec(n_terms=3, depth=3)

    def test_two_dimensional_defaults(self):
        """Test k = 2 starts at a smaller eps with a shallower tableau."""
        spec = CutoffSpec.for_dimension(2, workers=2)
        assert (spec.eps0, spec.n_terms, spec.depth, spec.workers) == (0.125, 3, 2, 2)


class TestExtrapolate:
    """Test the Richardson tableau."""

    def test_removes_quadratic_terms(self):
        """Test values 1 + a eps^2 + b eps^4 extrapolate exactly."""
        eps = [0.5, 0.25, 0.125]
        values = [1 + 3 * e**2 - 2 * e**4 for e in eps]
        value, error, diagonal = extrapolate(values, eps, depth=2)
        assert value == pytest.approx(1.0, abs=1e-12)
        assert error < 1e-2
        assert len(diagonal) == 3


class TestEvalCutoff:
    """Test eval_cutoff."""

    def test_constant_symbol(self):
        """Test s = 1 gives s(0, 0)."""
        result = eval_cutoff(Symbol.constant(1, k=1), ETA)
        assert result.value == pytest.approx(1.0, abs=1e-6)
        assert result.method == "cutoff"
        assert len(result.diagnostics.partial_values) == 6

    def test_theta_independent(self):
        """Test e^{-xi^2} gives its value at the origin."""
        s = Symbol.from_expression(GAUSS_XI, k=1, order=0, rho=0)
        assert eval_cutoff(s, ETA).value == pytest.approx(1.0, abs=1e-6)

    def test_gaussian(self):
        """Test e^{-theta^2 - xi^2} gives 1/sqrt(5)."""
        s = Symbol.from_expression(GAUSS, k=1, order=-10, rho=1)
        assert eval_cutoff(s, ETA).value == pytest.approx(5**-0.5, abs=1e-7)

    def test_linearity(self):
        """Test scaling the symbol scales the result."""
        s = Symbol.from_expression(GAUSS_XI, k=1, order=0, rho=0)
        a = eval_cutoff(s, ETA, SHORT)
        b = eval_cutoff(s.scaled(2 - 1j), ETA, SHORT)
        assert b.value == pytest.approx((2 - 1j) * a.value, rel=1e-12)

    def test_cutoff_independence(self):
        """Test a radial cutoff agrees with the product cutoff."""
        s = Symbol.from_expression(GAUSS_XI, k=1, order=0, rho=0)
        product = eval_cutoff(s, ETA)
        radial = eval_cutoff(s, ETA, CutoffSpec(profile="radial"))
        assert radial.value == pytest.approx(product.value, abs=1e-6)

    def test_threaded_matches_serial(self):
        """Test workers do not change the summation order."""
        s = Symbol.constant(1, k=1)
        serial = eval_cutoff(s, ETA, SHORT)
        threaded = eval_cutoff(s, ETA, SHORT.model_copy(update={"workers": 3}))
        assert threaded.value == serial.value

    def test_nonconvergence_note(self):
        """Test a spread above tolerance is reported, not raised."""
        result = eval_cutoff(Symbol.constant(1, k=1), ETA, SHORT.model_copy(update={"tolerance": 1e-30}))
        assert not result.converged
        assert "Richardson spread" in result.diagnostics.notes[0]

    def test_divergence(self):
        """Test non-finite partial integrals raise DivergenceError."""

        def partial(theta, xi, alpha, beta):
            return np.full(np.broadcast_shapes(theta.shape[:-1], xi.shape[:-1]), np.nan)

        s = Symbol(k=1, order=0, rho=1, partial=partial, label="nan")
        with pytest.raises(DivergenceError, match="not finite"):
            eval_cutoff(s, ETA, SHORT)

    def test_dimension_mismatch(self):
        """Test the form must act on R^k."""
        with pytest.raises(ValueError, match="acts on"):
            eval_cutoff(Symbol.constant(1, k=2), ETA)
