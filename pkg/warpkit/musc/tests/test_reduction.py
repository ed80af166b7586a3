"""Tests for pruning zero-covector end slots."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from warpkit.musc.graph import CovectorConfiguration, GraphEdge, ImmersedGraph, InvalidGraphInput, instantiates
from warpkit.musc.reduction import prune_graph


def path_graph() -> tuple[ImmersedGraph, CovectorConfiguration]:
    """v0 isolated with a zero covector, then the edge v1 - v2."""
    k = [1.0, -1.0]
    points = [[0.0, 0.0], [1.0, 1.0], [2.0, 0.0]]
    g = ImmersedGraph(points=points, edges=[GraphEdge(vertices=(1, 2), covector=k)])
    return g, CovectorConfiguration.from_arrays(points, [[0.0, 0.0], k, [-1.0, 1.0]])


@st.composite
def padded_immersions(draw):
    """An instantiating graph on the middle slots, padded with zero-covector vertices carrying zero edges."""
    leading, middle, trailing = draw(st.integers(0, 3)), draw(st.integers(2, 4)), draw(st.integers(0, 3))
    n = leading + middle + trailing
    edges = []
    for _ in range(draw(st.integers(1, 6))):
        i, j = draw(st.lists(st.integers(0, middle - 1), min_size=2, max_size=2, unique=True))
        spatial = draw(st.floats(-3, 3, allow_nan=False))
        timelike = draw(st.floats(0, 2, allow_nan=False))
        edges.append(GraphEdge(vertices=(leading + i, leading + j), covector=[abs(spatial) + timelike + 0.1, spatial]))
    ends = list(range(leading)) + list(range(n - trailing, n))
    for _ in range(draw(st.integers(0, 3)) if ends else 0):
        end = draw(st.sampled_from(ends))
        other = draw(st.sampled_from([v for v in range(n) if v != end]))
        edges.append(GraphEdge(vertices=(end, other), covector=[0.0, 0.0]))
    points = np.linspace(0, 1, 2 * n).reshape(n, 2).tolist()
    g = ImmersedGraph(points=points, edges=edges, extended=True)
    c = CovectorConfiguration.from_arrays(points, g.balance(), extended=True)
    return g, c, leading, trailing


class TestPruneGraph:
    """Test prune_graph."""

    def test_leading_zero_slot(self):
        """Test dropping the leading zero vertex leaves a two-vertex graph for the middle slots."""
        g, c = path_graph()
        pruned = prune_graph(g, c, leading=1, trailing=0)
        assert pruned.n_vertices == 2
        assert pruned.edges[0].vertices == (0, 1)
        assert instantiates(pruned, c.middle(1, 0))

    def test_nothing_to_prune(self):
        """Test s = t = 0 keeps the graph."""
        g, c = path_graph()
        pruned = prune_graph(g, c, leading=0, trailing=0)
        assert pruned.points == g.points
        assert pruned.edges == g.edges

    def test_all_zero(self):
        """Test an all-zero configuration prunes to the empty graph."""
        points = [[0.0, 0.0], [1.0, 0.0]]
        c = CovectorConfiguration.from_arrays(points, np.zeros((2, 2)), extended=True)
        pruned = prune_graph(ImmersedGraph(points=points), c, leading=1, trailing=1)
        assert pruned.n_vertices == 0
        assert pruned.edges == []

    def test_nonzero_slot_rejected(self):
        """Test pruning a slot with a nonzero covector is invalid input."""
        g, c = path_graph()
        with pytest.raises(InvalidGraphInput, match="zero covectors"):
            prune_graph(g, c, leading=0, trailing=1)

    def test_must_instantiate(self):
        """Test the graph must instantiate the extended configuration."""
        g, _ = path_graph()
        other = CovectorConfiguration.from_arrays(g.points, [[0.0, 0.0], [2.0, 0.0], [-2.0, 0.0]])
        with pytest.raises(InvalidGraphInput, match="does not instantiate"):
            prune_graph(g, other, leading=1, trailing=0)

    def test_zero_edges_nullified(self):
        """Test zero edges at the pruned vertices are removed and the middle edge survives."""
        k = [1.0, -1.0]
        points = [[0.0, 0.0], [1.0, 1.0], [2.0, 0.0], [3.0, 1.0]]
        edges = [
            GraphEdge(vertices=(0, 1), covector=[0.0, 0.0]),
            GraphEdge(vertices=(0, 3), covector=[0.0, 0.0]),
            GraphEdge(vertices=(1, 2), covector=k),
            GraphEdge(vertices=(2, 3), covector=[0.0, 0.0]),
        ]
        g = ImmersedGraph(points=points, edges=edges, extended=True)
        c = CovectorConfiguration.from_arrays(points, [[0.0, 0.0], k, [-1.0, 1.0], [0.0, 0.0]], extended=True)
        pruned = prune_graph(g, c, leading=1, trailing=1)
        assert not pruned.extended
        assert [e.vertices for e in pruned.edges] == [(0, 1)]
        assert instantiates(pruned, c.middle(1, 1))
        assert "3 edges" in pruned.notes[-1]

    def test_zero_edge_between_kept_vertices_dropped(self):
        """Test a vanishing edge away from the pruned slots is dropped as well."""
        g, c = path_graph()
        extended = g.model_copy(update={"edges": [*g.edges, GraphEdge(vertices=(1, 2), covector=[0.0, 0.0])], "extended": True})
        pruned = prune_graph(extended, c, leading=1, trailing=0)
        assert len(pruned.edges) == 1
        assert instantiates(pruned, c.middle(1, 0))

    @given(padded_immersions())
    def test_pruned_graph_instantiates_middle(self, data):
        """Test the pruned graph instantiates the middle configuration."""
        g, c, leading, trailing = data
        pruned = prune_graph(g, c, leading, trailing)
        assert pruned.n_vertices == c.n - leading - trailing
        assert instantiates(pruned, c.middle(leading, trailing))
