"""Tests for muSC verdicts over wavefront tuples."""

from functools import cache

import numpy as np

from warpkit.fockfield.twopoint import vacuum_two_point_grid
from warpkit.microloc.wavefront import WavefrontEntry, WavefrontEstimate, WavefrontSpec, estimate_wavefront
from warpkit.musc.check import check_musc, tuples_from_two_point_wavefront
from warpkit.musc.feasibility import SearchSpec
from warpkit.musc.graph import CovectorConfiguration, instantiates

BASE_POINTS = [[0.0, 0.0], [1.0, 1.0], [1.0, -1.0], [0.0, 1.5], [1.5, 0.0]]


@cache
def vacuum_wavefront() -> WavefrontEstimate:
    return estimate_wavefront(vacuum_two_point_grid(), BASE_POINTS, spec=WavefrontSpec(n_reg=2.5, n_directions=8))


class TestCheckMusc:
    """Test check_musc."""

    def test_empty_passes(self):
        """Test an empty estimate passes vacuously."""
        report = check_musc(tuples_from_two_point_wavefront(WavefrontEstimate()))
        assert report.verdict == "PASS"
        assert report.tuples == []

    def test_both_future_fails(self):
        """Test a tuple with two future-directed covectors is a counterexample."""
        bad = CovectorConfiguration.from_arrays([[0.0, 0.0], [1.0, 0.0]], [[1.0, 1.0], [1.0, 0.0]])
        good = CovectorConfiguration.from_arrays([[0.0, 0.0], [1.0, 0.0]], [[1.0, 1.0], [-1.0, -1.0]])
        report = check_musc([good, bad], SearchSpec(workers=2))
        assert report.verdict == "FAIL"
        assert report.counterexamples == [1]
        assert report.tuples[0].result.verdict == "instantiable"

    def test_tuples_from_entries(self):
        """Test singular entries become (y, zeta; 0, -zeta) and regular ones are skipped."""
        wf = WavefrontEstimate(
            entries=[
                WavefrontEntry(base_point=[1.0, 1.0], direction=[0.6, -0.8], n_fit=1.0, verdict="singular"),
                WavefrontEntry(base_point=[0.0, 1.5], direction=[1.0, 0.0], n_fit=6.0, verdict="regular"),
            ]
        )
        (c,) = tuples_from_two_point_wavefront(wf)
        np.testing.assert_array_equal(c.x, [[1.0, 1.0], [0.0, 0.0]])
        np.testing.assert_array_equal(c.zeta, [[0.6, -0.8], [-0.6, 0.8]])

    def test_vacuum_two_point_passes(self):
        """Test the estimated wavefront of the vacuum two-point function satisfies the condition."""
        tuples = tuples_from_two_point_wavefront(vacuum_wavefront())
        points = {tuple(c.points[0]) for c in tuples}
        assert {(0.0, 0.0), (1.0, 1.0), (1.0, -1.0)} <= points
        assert (0.0, 1.5) not in points
        report = check_musc(tuples)
        assert report.verdict == "PASS"
        for t in report.tuples:
            assert instantiates(t.result.witness, t.configuration, 1e-9)
