"""Pruning of zero-covector end slots and reduction to simple straight-edge graphs."""

import logging

import numpy as np

from warpkit.musc.graph import (
    CONE_TOLERANCE,
    CovectorConfiguration,
    GraphEdge,
    ImmersedGraph,
    InvalidGraphInput,
    instantiates,
)

logger = logging.getLogger(__name__)


def prune_graph(
    g: ImmersedGraph, c: CovectorConfiguration, leading: int, trailing: int, tol: float = CONE_TOLERANCE
) -> ImmersedGraph:
    """Drop the first ``leading`` and last ``trailing`` vertices, whose covectors vanish.

    At the first vertex every edge carries +k with k future-directed, so a zero
    sum forces each k = 0; removing those edges repeats the argument at the next
    vertex. Trailing vertices see only -k and are handled back to front. Any
    other vanishing edge of an extended graph is dropped as well, so the result
    is an ordinary graph instantiating ``c.middle(leading, trailing)``.
    """
    if leading < 0 or trailing < 0 or leading + trailing > c.n:
        raise InvalidGraphInput(f"Cannot prune {leading} + {trailing} slots of {c.n}", leading=leading, trailing=trailing)
    if not instantiates(g, c, tol):
        raise InvalidGraphInput("Graph does not instantiate the extended configuration")
    floor = tol * max(1.0, c.scale())
    ends = list(range(leading)) + list(range(c.n - 1, c.n - trailing - 1, -1))
    if ends and np.max(np.abs(c.zeta[ends])) > floor:
        raise InvalidGraphInput("Pruned slots must carry zero covectors", slots=ends)

    alive = set(range(len(g.edges)))
    for vertex in ends:
        for r in [r for r in g.incident(vertex) if r in alive]:
            if np.linalg.norm(g.edges[r].covector) > floor:
                raise InvalidGraphInput(
                    f"Edge {g.edges[r].vertices} at zero-covector vertex {vertex} does not vanish",
                    edge=list(g.edges[r].vertices),
                )
            alive.discard(r)
    # Zero edges between kept vertices carry nothing into the balance.
    alive -= {r for r in alive if np.linalg.norm(g.edges[r].covector) <= floor}

    keep = range(leading, c.n - trailing)
    if not keep:
        logger.warning("Every covector vanishes; the configuration lies in the zero section")
    relabel = {v: i for i, v in enumerate(keep)}
    edges = [
        e.model_copy(update={"vertices": (relabel[e.vertices[0]], relabel[e.vertices[1]])})
        for r, e in enumerate(g.edges)
        if r in alive
    ]
    removed = len(g.edges) - len(edges)
    notes = [*g.notes, f"pruned {leading} leading and {trailing} trailing vertices, {removed} edges"]
    return ImmersedGraph(points=[g.points[v] for v in keep], edges=edges, notes=notes)


def reduce_graph(g: ImmersedGraph) -> ImmersedGraph:
    """Merge parallel edges by summing covectors and straighten every curve."""
    merged: dict[tuple[int, int], np.ndarray] = {}
    for e in g.edges:
        k = np.asarray(e.covector, dtype=float)
        merged[e.vertices] = merged[e.vertices] + k if e.vertices in merged else k
    notes = list(g.notes)
    edges = []
    for pair, k in merged.items():
        if np.linalg.norm(k) <= CONE_TOLERANCE * max(np.linalg.norm(e.covector) for e in g.edges if e.vertices == pair):
            notes.append(f"merged covector on {pair} vanished; edge dropped")
            continue
        edges.append(GraphEdge(vertices=pair, covector=k.tolist()))
    if len(edges) < len(g.edges):
        logger.debug(f"Reduced {len(g.edges)} edges to {len(edges)}")
    return ImmersedGraph(points=g.points, edges=edges, notes=notes)
