"""Graph immersions and the microlocal spectrum condition."""

from warpkit.musc.check import MuscReport, TupleVerdict, check_musc, tuples_from_two_point_wavefront
from warpkit.musc.feasibility import (
    FeasibilityWitness,
    SearchSpec,
    SolverDiagnostics,
    closed_form_gamma2,
    gamma_member,
)
from warpkit.musc.graph import (
    CovectorConfiguration,
    GraphEdge,
    ImmersedGraph,
    InvalidGraphInput,
    closed_future,
    future_causal,
    instantiates,
)
from warpkit.musc.reduction import prune_graph, reduce_graph

__all__ = [
    "CovectorConfiguration",
    "FeasibilityWitness",
    "GraphEdge",
    "ImmersedGraph",
    "InvalidGraphInput",
    "MuscReport",
    "SearchSpec",
    "SolverDiagnostics",
    "TupleVerdict",
    "check_musc",
    "closed_form_gamma2",
    "closed_future",
    "future_causal",
    "gamma_member",
    "instantiates",
    "prune_graph",
    "reduce_graph",
    "tuples_from_two_point_wavefront",
]
