"""Tests for Gamma_n membership."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from warpkit.musc.feasibility import SearchSpec, closed_form_gamma2, gamma_member
from warpkit.musc.graph import CovectorConfiguration, GraphEdge, ImmersedGraph, instantiates

X, Y, Z = [0.0, 0.0], [1.0, 2.0], [-1.0, 0.5]


def pair(zeta1, zeta2, d: int = 2) -> CovectorConfiguration:
    return CovectorConfiguration.from_arrays([[0.0] * d, [1.0] * d], [zeta1, zeta2])


@st.composite
def half_integer_pairs(draw):
    """Pairs on a half-integer grid, so cone boundaries are hit exactly."""
    coords = st.integers(-6, 6).map(lambda v: v / 2)
    z1 = [draw(coords), draw(coords)]
    if not any(z1):
        z1[0] = 1.0
    z2 = [-z1[0], -z1[1]] if draw(st.booleans()) else [draw(coords), draw(coords)]
    return pair(z1, z2)


@st.composite
def graph_configurations(draw):
    """Balances of random simple graphs with integer future-directed covectors."""
    n = draw(st.integers(2, 5))
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                spatial = draw(st.integers(-3, 3))
                edges.append(GraphEdge(vertices=(i, j), covector=[abs(spatial) + draw(st.integers(0, 2)) or 1, spatial]))
    if not edges:
        edges.append(GraphEdge(vertices=(0, n - 1), covector=[1.0, 1.0]))
    g = ImmersedGraph(points=np.arange(2 * n, dtype=float).reshape(n, 2).tolist(), edges=edges)
    return CovectorConfiguration.from_arrays(g.points, g.balance())


class TestTwoDimensional:
    """Test the exact d = 2 linear program."""

    def test_null_pair(self):
        """Test (zeta, -zeta) with zeta future-null is instantiated by a single edge."""
        result = gamma_member(pair([1.0, 1.0], [-1.0, -1.0]))
        assert result.verdict == "instantiable"
        assert len(result.witness.edges) == 1
        np.testing.assert_allclose(result.witness.edges[0].covector, [1.0, 1.0], atol=1e-12)

    def test_spacelike_pair(self):
        """Test a spacelike zeta is not in Gamma_2."""
        assert gamma_member(pair([0.0, 1.0], [0.0, -1.0])).verdict == "not-instantiable"

    def test_past_pair(self):
        """Test a past-directed zeta_1 is not in Gamma_2."""
        assert gamma_member(pair([-1.0, 0.0], [1.0, 0.0])).verdict == "not-instantiable"

    def test_single_slot_is_empty(self):
        """Test Gamma_1 is empty."""
        rng = np.random.default_rng(0)
        for _ in range(100):
            zeta = rng.normal(size=2)
            c = CovectorConfiguration.from_arrays([X], [zeta])
            assert gamma_member(c).verdict == "not-instantiable"

    def test_three_vertex_path(self):
        """Test the balance of a path v0 - v1 - v2 is instantiable."""
        k1, k2 = np.array([1.0, 1.0]), np.array([2.0, -1.0])
        c = CovectorConfiguration.from_arrays([X, Y, Z], [k1, k2 - k1, -k2])
        result = gamma_member(c)
        assert result.verdict == "instantiable"
        assert instantiates(result.witness, c, 1e-9)

    def test_random_closed_form_agreement(self):
        """Test agreement with the closed-form Gamma_2 on random pairs."""
        rng = np.random.default_rng(1)
        for _ in range(300):
            z1 = rng.normal(size=2)
            z2 = -z1 if rng.random() < 0.5 else rng.normal(size=2)
            c = pair(z1, z2)
            result = gamma_member(c)
            assert result.verdict != "undecided"
            assert (result.verdict == "instantiable") == closed_form_gamma2(c)

    @given(half_integer_pairs())
    def test_closed_form_agreement(self, c):
        """Test agreement with the closed form, cone boundaries included."""
        assert (gamma_member(c).verdict == "instantiable") == closed_form_gamma2(c)

    @given(graph_configurations())
    def test_witness_soundness(self, c):
        """Test graph balances are instantiable and ship witnesses that verify."""
        result = gamma_member(c)
        assert result.verdict == "instantiable"
        assert instantiates(result.witness, c, 1e-9)

    @given(graph_configurations(), st.sampled_from([1e-3, 0.5, 7.0, 1e4]))
    def test_scaling_invariance(self, c, t):
        """Test membership is unchanged by a common positive scale."""
        assert gamma_member(c.scaled(t)).verdict == gamma_member(c).verdict

    @given(half_integer_pairs())
    def test_negate_and_reverse(self, c):
        """Test negating every covector and reversing the slots preserves membership."""
        assert gamma_member(c.negated().reversed()).verdict == gamma_member(c).verdict

    def test_closed_form_needs_two_slots(self):
        """Test closed_form_gamma2 rejects other slot counts."""
        with pytest.raises(ValueError, match="two slots"):
            closed_form_gamma2(CovectorConfiguration.from_arrays([X], [[1.0, 0.0]]))


class TestPolyhedral:
    """Test the inner and outer polyhedral cones above d = 2."""

    def test_timelike_inner(self):
        """Test a timelike pair is decided by the inner cone."""
        result = gamma_member(pair([2.0, 0.3, -0.4], [-2.0, -0.3, 0.4], d=3))
        assert result.verdict == "instantiable"
        assert result.diagnostics.facets == 16

    def test_null_off_grid(self):
        """Test a null covector between generators is decided by the outer solution."""
        result = gamma_member(pair([1.0, 0.6, 0.8], [-1.0, -0.6, -0.8], d=3))
        assert result.verdict == "instantiable"
        assert any("outer solution" in m for m in result.diagnostics.messages)

    def test_spacelike_outer(self):
        """Test a spacelike pair is excluded by the outer cone."""
        result = gamma_member(pair([0.5, 1.0, 0.0], [-0.5, -1.0, 0.0], d=3))
        assert result.verdict == "not-instantiable"

    def test_four_dimensions(self):
        """Test a timelike pair in d = 4."""
        result = gamma_member(pair([1.0, 0.1, 0.2, -0.1], [-1.0, -0.1, -0.2, 0.1], d=4), SearchSpec(facets=32))
        assert result.verdict == "instantiable"
        assert instantiates(result.witness, pair([1.0, 0.1, 0.2, -0.1], [-1.0, -0.1, -0.2, 0.1], d=4))

    def test_unbalanced(self):
        """Test covectors that do not sum to zero are rejected before any LP."""
        result = gamma_member(pair([1.0, 0.0, 0.0], [1.0, 0.0, 0.0], d=3))
        assert result.verdict == "not-instantiable"
        assert result.diagnostics.messages == ["covectors do not sum to zero"]
