"""Membership in the cone Gamma_n by linear feasibility over one-edge-per-pair graphs.

In d = 2 the future cone is polyhedral: with a = k^0 + k^1 and b = k^0 - k^1 it is
a, b >= 0, so the covector balance is an exact linear program. Above d = 2 the cone
is squeezed between an inscribed cone spanned by null generators and a circumscribed
cone cut out by tangent half-spaces, refined by doubling the facet count.
"""

import logging
from itertools import combinations
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field
from scipy.optimize import linprog

from warpkit.musc.graph import (
    CONE_TOLERANCE,
    CovectorConfiguration,
    GraphEdge,
    ImmersedGraph,
    future_causal,
    instantiates,
)
from warpkit.symbolkit.seminorms import sphere_grid

logger = logging.getLogger(__name__)

Verdict = Literal["instantiable", "not-instantiable", "undecided"]

# Relative size below which an LP edge covector counts as absent.
EDGE_FLOOR = 1e-12


class SearchSpec(BaseModel):
    """Feasibility search settings."""

    tolerance: float = Field(CONE_TOLERANCE, gt=0, description="Balance and cone slack for witnesses, relative")
    kappa: float = Field(1e-6, gt=0, description="Relative margin below which a witness is reported near-degenerate")
    facets: int = Field(16, ge=3, description="Polyhedral facets at the first refinement (d >= 3)")
    max_facets: int = Field(256, ge=3, description="Facet count at which refinement stops")
    seed: int = Field(0, description="Seed of the generator directions above d = 3")
    workers: int = Field(1, ge=1, description="Threads across tuples in check_musc")


class SolverDiagnostics(BaseModel):
    solver: str = "highs-ds"
    messages: list[str] = Field(default_factory=list)
    facets: int | None = None
    near_degenerate: bool = False
    hint: str | None = None


class FeasibilityWitness(BaseModel):
    verdict: Verdict
    witness: ImmersedGraph | None = None
    diagnostics: SolverDiagnostics = Field(default_factory=SolverDiagnostics)


def _solve(c, a_eq, b_eq, bounds, a_ub=None, b_ub=None):
    return linprog(
        c,
        A_ub=a_ub,
        b_ub=b_ub,
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=bounds,
        method="highs-ds",
        options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10},
    )


def _balance_rows(pairs: list[tuple[int, int]], n: int, d: int, block: np.ndarray) -> np.ndarray:
    """Equality matrix for sum_{j>i} k_ij - sum_{j<i} k_ji = zeta_i.

    ``block`` maps one pair's LP variables to its covector (d x m).
    """
    m = block.shape[1]
    a = np.zeros((n * d, len(pairs) * m))
    for e, (i, j) in enumerate(pairs):
        a[i * d : (i + 1) * d, e * m : (e + 1) * m] += block
        a[j * d : (j + 1) * d, e * m : (e + 1) * m] -= block
    return a


def _graph(c: CovectorConfiguration, pairs, covectors: np.ndarray, scale: float) -> ImmersedGraph:
    edges = [
        GraphEdge(vertices=pair, covector=(scale * k).tolist())
        for pair, k in zip(pairs, covectors, strict=True)
        if np.linalg.norm(k) > EDGE_FLOOR
    ]
    return ImmersedGraph(points=c.points, edges=edges)


def _accept(c, g: ImmersedGraph, search: SearchSpec, diagnostics: SolverDiagnostics) -> FeasibilityWitness:
    if not instantiates(g, c, search.tolerance):
        diagnostics.messages.append("LP solution failed exact verification")
        diagnostics.hint = "tighten the solver tolerances"
        return FeasibilityWitness(verdict="undecided", diagnostics=diagnostics)
    scale = c.scale()
    diagnostics.near_degenerate = any(
        np.linalg.norm(e.covector) < search.kappa * scale
        or e.covector[0] - np.linalg.norm(e.covector[1:]) < search.kappa * np.linalg.norm(e.covector)
        for e in g.edges
    )
    return FeasibilityWitness(verdict="instantiable", witness=g, diagnostics=diagnostics)


def _two_dimensional(c, z, pairs, search, diagnostics) -> FeasibilityWitness:
    # k = ((a + b) / 2, (a - b) / 2)
    block = np.array([[0.5, 0.5], [0.5, -0.5]])
    a_eq = _balance_rows(pairs, c.n, 2, block)
    result = _solve(np.ones(a_eq.shape[1]), a_eq, z.reshape(-1), (0, None))
    diagnostics.messages.append(result.message)
    if result.status == 2:
        return FeasibilityWitness(verdict="not-instantiable", diagnostics=diagnostics)
    if result.status != 0:
        diagnostics.hint = "solver did not finish; inspect messages"
        return FeasibilityWitness(verdict="undecided", diagnostics=diagnostics)
    ab = np.clip(result.x.reshape(-1, 2), 0.0, None)
    return _accept(c, _graph(c, pairs, ab @ block.T, c.scale()), search, diagnostics)


def _directions(spatial: int, facets: int, seed: int) -> np.ndarray:
    if spatial == 2:
        phi = 2 * np.pi * np.arange(facets) / facets
        return np.stack([np.cos(phi), np.sin(phi)], axis=-1)
    return sphere_grid(spatial, facets, seed)


def _polyhedral(c, z, pairs, search, diagnostics) -> FeasibilityWitness:
    d = c.dimension
    facets = search.facets
    while facets <= search.max_facets:
        diagnostics.facets = facets
        u = _directions(d - 1, facets, search.seed)
        generators = np.concatenate([np.ones((len(u), 1)), u], axis=1).T
        a_eq = _balance_rows(pairs, c.n, d, generators)
        inner = _solve(np.ones(a_eq.shape[1]), a_eq, z.reshape(-1), (0, None))
        if inner.status == 0:
            lam = np.clip(inner.x.reshape(len(pairs), -1), 0.0, None)
            diagnostics.messages.append(f"inner cone feasible at {facets} facets")
            return _accept(c, _graph(c, pairs, lam @ generators.T, c.scale()), search, diagnostics)

        cut = np.concatenate([-np.ones((len(u), 1)), u], axis=1)
        a_ub = np.kron(np.eye(len(pairs)), cut)
        a_eq = _balance_rows(pairs, c.n, d, np.eye(d))
        cost = np.tile(np.eye(d)[0], len(pairs))
        outer = _solve(cost, a_eq, z.reshape(-1), (None, None), a_ub, np.zeros(a_ub.shape[0]))
        if outer.status == 2:
            diagnostics.messages.append(f"outer cone infeasible at {facets} facets")
            return FeasibilityWitness(verdict="not-instantiable", diagnostics=diagnostics)
        if outer.status == 0:
            k = outer.x.reshape(len(pairs), d)
            present = np.linalg.norm(k, axis=-1) > EDGE_FLOOR
            if all(future_causal(row, search.tolerance) for row in k[present]):
                diagnostics.messages.append(f"outer solution lies in the cone at {facets} facets")
                return _accept(c, _graph(c, pairs, k, c.scale()), search, diagnostics)
        logger.debug(f"Refining polyhedral cones past {facets} facets")
        facets *= 2
    logger.warning(f"Undecided after {search.max_facets} facets for n={c.n}, d={d}")
    diagnostics.hint = f"raise max_facets above {search.max_facets}"
    return FeasibilityWitness(verdict="undecided", diagnostics=diagnostics)


def gamma_member(c: CovectorConfiguration, search: SearchSpec | None = None) -> FeasibilityWitness:
    """Search for an immersion instantiating c, with at most one edge per vertex pair."""
    search = search or SearchSpec()
    diagnostics = SolverDiagnostics()
    scale = c.scale()
    if scale == 0:
        diagnostics.messages.append("configuration lies in the zero section")
        return FeasibilityWitness(verdict="not-instantiable", diagnostics=diagnostics)
    z = c.zeta / scale
    if np.max(np.abs(z.sum(axis=0))) > search.tolerance:
        diagnostics.messages.append("covectors do not sum to zero")
        return FeasibilityWitness(verdict="not-instantiable", diagnostics=diagnostics)
    pairs = list(combinations(range(c.n), 2))
    if not pairs:
        diagnostics.messages.append("no vertex pairs")
        return FeasibilityWitness(verdict="not-instantiable", diagnostics=diagnostics)
    if c.dimension == 2:
        return _two_dimensional(c, z, pairs, search, diagnostics)
    if c.dimension < 2:
        raise ValueError(f"Spacetime needs d >= 2, got {c.dimension}")
    return _polyhedral(c, z, pairs, search, diagnostics)


def closed_form_gamma2(c: CovectorConfiguration, tol: float = CONE_TOLERANCE) -> bool:
    """(x, zeta; y, -zeta) with zeta future-directed causal."""
    if c.n != 2:
        raise ValueError(f"Gamma_2 takes two slots, got {c.n}")
    z1, z2 = c.zeta
    return bool(np.max(np.abs(z1 + z2)) <= tol * max(1.0, c.scale()) and future_causal(z1, tol))
