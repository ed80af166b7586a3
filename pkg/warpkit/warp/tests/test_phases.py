"""Tests for pure-phase integrals and the path-sum expansion."""

import numpy as np
import pytest

from warpkit.oscint.cutoff import CutoffSpec
from warpkit.symbolkit.symbols import BilinearForm
from warpkit.warp.deformation import DeformationMatrix
from warpkit.warp.phases import (
    evaluate_phase_terms,
    numeric_phase_integral,
    phase_expansion,
    pure_phase_integral,
    restricted_phase_integral,
)

SHORT_CUTOFF = CutoffSpec(n_terms=5, depth=4)


class TestPurePhase:
    """Test the closed-form rule and its numeric counterpart."""

    def test_zero_frequency(self):
        """Test the integral of 1 is 1/|det M|."""
        eta = BilinearForm(np.diag([2.0, -0.5, 4.0]))
        assert pure_phase_integral(np.zeros(3), np.zeros(3), eta) == pytest.approx(0.25)

    def test_closed_form(self):
        """Test e^{i v^T M^{-1} u} for a non-diagonal form."""
        m = np.array([[1.0, 0.5], [0.5, -2.0]])
        u, v = np.array([0.3, -1.1]), np.array([0.7, 0.2])
        expected = np.exp(1j * v @ np.linalg.solve(m, u)) / abs(np.linalg.det(m))
        assert pure_phase_integral(u, v, BilinearForm(m)) == pytest.approx(expected, abs=1e-14)

    def test_broadcast(self):
        """Test leading axes are carried through."""
        eta = BilinearForm.minkowski(2)
        u = np.random.default_rng(0).normal(size=(3, 4, 2))
        v = np.random.default_rng(1).normal(size=(3, 4, 2))
        values = pure_phase_integral(u, v, eta)
        assert values.shape == (3, 4)
        assert values[2, 1] == pytest.approx(pure_phase_integral(u[2, 1], v[2, 1], eta), abs=1e-14)

    def test_numeric_matches_closed_form(self):
        """Test the factorized cutoff integral reproduces the closed form."""
        eta = BilinearForm.minkowski(2)
        u, v = np.array([0.6, -0.4]), np.array([1.2, 0.0])
        numeric = numeric_phase_integral(u, v, eta, SHORT_CUTOFF)
        assert numeric == pytest.approx(complex(pure_phase_integral(u, v, eta)), abs=1e-6)

    def test_numeric_needs_diagonal_form(self):
        """Test off-diagonal forms are rejected by the factorized path."""
        eta = BilinearForm(np.array([[1.0, 0.5], [0.5, -2.0]]))
        with pytest.raises(ValueError, match="diagonal"):
            numeric_phase_integral(np.zeros(2), np.zeros(2), eta)


class TestRestrictedPhase:
    """Test the integral over ker(Q)^perp."""

    def test_empty_subspace(self):
        """Test r = 0 gives 1."""
        eta = BilinearForm.minkowski(2)
        empty = np.zeros((2, 0))
        values = restricted_phase_integral(np.ones((5, 2)), np.ones((5, 2)), eta, empty, empty)
        np.testing.assert_array_equal(values, np.ones(5))

    def test_restriction_is_a_constant_multiple(self):
        """Test restricting to ker(Q)^perp rescales the full integral by |det R| for u in range(Q^T)."""
        eta = BilinearForm.minkowski(3)
        q = DeformationMatrix.from_antisymmetric(np.array([[0.0, 0.4, -0.7], [-0.4, 0.0, 0.3], [0.7, -0.3, 0.0]]))
        theta_basis = q.complement()
        xi_basis, r = np.linalg.qr(np.linalg.solve(eta.matrix, theta_basis))
        rng = np.random.default_rng(4)
        for _ in range(5):
            u = q.matrix.T @ eta.matrix @ rng.normal(size=3)
            v = rng.normal(size=3)
            restricted = restricted_phase_integral(u, v, eta, theta_basis, xi_basis)
            full = pure_phase_integral(u, v, eta)
            assert restricted == pytest.approx(abs(np.linalg.det(r)) * full, abs=1e-12)

    def test_dimension_mismatch(self):
        """Test theta and xi subspaces of different dimension are rejected."""
        eta = BilinearForm.minkowski(2)
        with pytest.raises(ValueError, match="dimensions"):
            restricted_phase_integral(np.zeros(2), np.zeros(2), eta, np.eye(2), np.eye(2)[:, :1])


class TestPhaseExpansion:
    """Test phase_expansion against direct matrix products."""

    def setup_method(self):
        rng = np.random.default_rng(7)
        self.eta = BilinearForm.minkowski(2)
        self.momenta = rng.normal(size=(4, 2))
        self.ops = [rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)) for _ in range(2)]
        psi = rng.normal(size=4) + 1j * rng.normal(size=4)
        self.psi = psi / np.linalg.norm(psi)

    def test_zero_deformation_is_plain_product(self):
        """Test Q = 0 reduces the path sum to <psi, A_1 A_2 psi>."""
        zero = np.zeros((2, 2))
        terms = phase_expansion(self.psi, self.ops, [zero, zero], self.momenta, self.eta)
        expected = np.conj(self.psi) @ self.ops[0] @ self.ops[1] @ self.psi
        assert evaluate_phase_terms(terms, self.eta) == pytest.approx(expected, abs=1e-12)

    def test_warped_product(self):
        """Test the path sum equals the product of entrywise-warped matrices."""
        qs = [DeformationMatrix.two_dimensional(0.6).matrix, DeformationMatrix.two_dimensional(-1.1).matrix]
        m = self.eta.matrix
        warped = []
        for a, q in zip(self.ops, qs, strict=True):
            phase = np.einsum("ja,ab,ib->ij", self.momenta @ q.T, m, self.momenta)
            warped.append(a * np.exp(1j * phase))
        expected = np.conj(self.psi) @ warped[0] @ warped[1] @ self.psi
        terms = phase_expansion(self.psi, self.ops, qs, self.momenta, self.eta)
        assert len(terms) == 4**3
        assert evaluate_phase_terms(terms, self.eta) == pytest.approx(expected, abs=1e-12)

    def test_empty_expansion(self):
        """Test a zero state expands to no terms and the value 0."""
        terms = phase_expansion(np.zeros(4), self.ops, [np.zeros((2, 2))] * 2, self.momenta, self.eta)
        assert terms == []
        assert evaluate_phase_terms(terms, self.eta) == 0

    def test_unknown_method(self):
        """Test an unknown evaluation method is rejected."""
        terms = phase_expansion(self.psi, self.ops[:1], [np.zeros((2, 2))], self.momenta, self.eta)
        with pytest.raises(ValueError, match="Unknown phase method"):
            evaluate_phase_terms(terms, self.eta, "bogus")
