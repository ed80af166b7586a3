"""Tests for wavefront estimation."""

import tempfile
from pathlib import Path

import numpy as np
import pytest

from warpkit.microloc.grid import GridDistribution
from warpkit.microloc.plots import plot_wavefront
from warpkit.microloc.symbolic import estimate_symbolic_wavefront, oscillated_profile_grid
from warpkit.microloc.wavefront import (
    WavefrontEstimate,
    WavefrontSpec,
    base_point_lattice,
    estimate_wavefront,
    project_covectors,
)
from warpkit.symbolkit.extended import ExtendedSymbol
from warpkit.symbolkit.symbols import BilinearForm, Symbol

BASE_POINTS = [[-0.5], [0.0], [0.5]]
HEAVISIDE = {"heaviside": {"index": 0, "at": 0.0}}


def heaviside_grid(n: int = 1024) -> GridDistribution:
    return GridDistribution.from_function(lambda x: np.heaviside(x[..., 0], 1.0), 0.0, 1.0, n)


class TestEstimateWavefront:
    """Test estimate_wavefront on the calibration family."""

    def test_gaussian_is_smooth(self):
        """Test a Gaussian has no singular entries."""
        u = GridDistribution.from_function(lambda x: np.exp(-4 * x[..., 0] ** 2), 0.0, 1.0, 1024)
        wf = estimate_wavefront(u, BASE_POINTS)
        assert wf.singular() == []
        assert project_covectors(wf) == set()

    def test_point_mass(self):
        """Test a point mass is singular at the spike only, in every direction."""
        u = GridDistribution.point_masses([[0.0]], [1.0], 0.0, 1.0, 1024)
        wf = estimate_wavefront(u, BASE_POINTS)
        assert wf.singular_points() == [(0.0,)]
        assert all(e.n_fit <= 0.5 for e in wf.singular())
        assert project_covectors(wf) == {(1.0,), (-1.0,)}

    def test_heaviside(self):
        """Test the jump is singular at 0 in both directions with N_fit near 1."""
        wf = estimate_wavefront(heaviside_grid(), BASE_POINTS)
        assert wf.singular_points() == [(0.0,)]
        assert project_covectors(wf) == {(1.0,), (-1.0,)}
        for entry in wf.singular():
            assert 0.7 <= entry.n_fit <= 1.3

    def test_threshold_override(self):
        """Test N_reg below the fitted exponent turns the jump regular."""
        wf = estimate_wavefront(heaviside_grid(), [[0.0]], n_reg=0.5)
        assert wf.singular() == []

    def test_modulation_keeps_point_mass_singular(self):
        """Test multiplying by e^{i x zeta0} does not smooth a point mass."""
        u = GridDistribution.point_masses([[0.0, 0.0]], [1.0], [0.0, 0.0], [1.0, 1.0], 64)
        spec = WavefrontSpec(n_directions=8)
        plain = estimate_wavefront(u, [[0.0, 0.0]], spec=spec)
        shifted = estimate_wavefront(u.modulate([20.0, -10.0]), [[0.0, 0.0]], spec=spec)
        assert len(plain.singular()) == len(shifted.singular()) == 8

    def test_two_dimensional_point_mass(self):
        """Test a 2D point mass is singular at the origin only."""
        u = GridDistribution.point_masses([[0.0, 0.0]], [1.0], [0.0, 0.0], [1.0, 1.0], 64)
        wf = estimate_wavefront(u, [[0.0, 0.0], [0.5, 0.5]], spec=WavefrontSpec(n_directions=8))
        assert wf.singular_points() == [(0.0, 0.0)]
        assert len(project_covectors(wf)) == 8

    def test_shrinking_bump_stays_regular(self):
        """Test a smaller bump keeps a smooth center regular."""
        u = GridDistribution.from_function(lambda x: np.exp(-4 * x[..., 0] ** 2), 0.0, 1.0, 1024)
        for radius in (0.25, 0.2):
            wf = estimate_wavefront(u, [[0.0]], spec=WavefrontSpec(bump_radius=radius))
            assert wf.singular() == []

    def test_explicit_fit_range(self):
        """Test absolute fit windows are validated."""
        with pytest.raises(ValueError, match="Fit range"):
            estimate_wavefront(heaviside_grid(64), [[0.0]], fit_range=(10.0, 5.0))

    def test_default_base_points(self):
        """Test the default lattice keeps bumps inside the box."""
        points = base_point_lattice(heaviside_grid(64), 0.25)
        np.testing.assert_allclose(points[:, 0], [-0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75])

    def test_empty_projection(self):
        """Test the empty estimate projects to no covectors."""
        assert project_covectors(WavefrontEstimate()) == set()


class TestSymbolicWavefront:
    """Test wavefronts of symbolic distributions and oscillated profiles."""

    def setup_method(self):
        base = Symbol.from_expression({"gauss": {"over": "all"}}, k=1, order=-10, rho=1)
        self.u = ExtendedSymbol.from_profile_expression(HEAVISIDE, base)

    def test_per_index_report(self):
        """Test the jump in x shows up for every semi-norm index."""
        report = estimate_symbolic_wavefront(
            self.u, 0.0, 1.0, 1024, BASE_POINTS, indices=[([0], [0]), ([1], [0])]
        )
        assert len(report.indices) == 2
        for item in report.indices:
            assert item.estimate.singular_points() == [(0.0,)]
        assert report.union() == {((0.0,), (1.0,)), ((0.0,), (-1.0,))}

    def test_inclusion_under_oscillation(self):
        """Test WF of x -> I_eta(u(x)) lies inside WF of the x-profile."""
        eta = BilinearForm.euclidean(1)
        oscillated = oscillated_profile_grid(self.u, eta, 0.0, 1.0, 1024, method="regularized")
        assert oscillated.samples[-1] == pytest.approx(5**-0.5, rel=1e-6)
        inner = estimate_wavefront(oscillated, BASE_POINTS)
        outer = estimate_wavefront(heaviside_grid(), BASE_POINTS)
        inner_set = {(tuple(e.base_point), tuple(e.direction)) for e in inner.singular()}
        outer_set = {(tuple(e.base_point), tuple(e.direction)) for e in outer.singular()}
        assert inner_set <= outer_set


class TestPlotWavefront:
    """Test plot_wavefront."""

    def test_writes_png_and_svg(self):
        """Test both plot formats are written."""
        wf = estimate_wavefront(heaviside_grid(256), BASE_POINTS)
        with tempfile.TemporaryDirectory() as tmp:
            for name in ("wf.png", "wf.svg"):
                assert plot_wavefront(wf, Path(tmp) / name).stat().st_size > 0

    def test_rejects_other_suffixes(self):
        """Test unknown formats are rejected."""
        with pytest.raises(ValueError, match="png or svg"):
            plot_wavefront(WavefrontEstimate(), Path("wf.pdf"))
