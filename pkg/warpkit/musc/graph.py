"""Graph immersions with constant edge covectors, and the instantiation test."""

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from warpkit.errors import WarpkitError

logger = logging.getLogger(__name__)

# Relative slack on the cone k^0 >= |k_vec| and on the vertex balance.
CONE_TOLERANCE = 1e-9


class InvalidGraphInput(WarpkitError):
    """A graph or configuration does not meet the precondition of a construction."""

    invalid_input = True


def future_causal(k, tol: float = CONE_TOLERANCE) -> bool:
    """k^0 >= |k_vec| up to tol * |k|, and k != 0."""
    k = np.asarray(k, dtype=float)
    norm = float(np.linalg.norm(k))
    return norm > 0 and float(k[0]) >= float(np.linalg.norm(k[1:])) - tol * norm


def closed_future(k, tol: float = CONE_TOLERANCE) -> bool:
    """future_causal, or the zero covector."""
    return not np.any(k) or future_causal(k, tol)


class GraphEdge(BaseModel):
    model_config = ConfigDict(extra="forbid")

    vertices: tuple[int, int] = Field(description="Unordered vertex pair, stored ascending")
    covector: list[float] = Field(description="Constant future-directed covector k_r")
    curve: list[list[float]] | None = Field(None, description="Interior polyline points; None is the straight segment")

    @field_validator("vertices")
    @classmethod
    def _sorted_pair(cls, v):
        i, j = v
        if i == j:
            raise ValueError(f"Edges join distinct vertices, got a loop at {i}")
        return (min(i, j), max(i, j))


class ImmersedGraph(BaseModel):
    """Vertices at points x(v_i), edges carrying straight or polyline curves and constant covectors."""

    model_config = ConfigDict(extra="forbid")

    points: list[list[float]]
    edges: list[GraphEdge] = Field(default_factory=list)
    notes: list[str] = Field(default_factory=list)
    extended: bool = Field(False, description="Admit zero edge covectors, as pruning inputs do")

    @model_validator(mode="after")
    def _check(self):
        dims = {len(p) for p in self.points} | {len(e.covector) for e in self.edges}
        if len(dims) > 1:
            raise ValueError(f"Mixed dimensions in graph: {sorted(dims)}")
        for e in self.edges:
            if max(e.vertices) >= len(self.points):
                raise ValueError(f"Edge {e.vertices} leaves the {len(self.points)} vertices")
            if not (closed_future if self.extended else future_causal)(e.covector):
                raise ValueError(f"Edge {e.vertices} covector {e.covector} is not future-directed causal")
        return self

    @property
    def n_vertices(self) -> int:
        return len(self.points)

    @property
    def dimension(self) -> int | None:
        return len(self.points[0]) if self.points else None

    def balance(self) -> np.ndarray:
        """Signed edge sums: +k at the lower vertex of each edge, -k at the upper one."""
        d = self.dimension or 0
        sums = np.zeros((self.n_vertices, d))
        for e in self.edges:
            i, j = e.vertices
            k = np.asarray(e.covector, dtype=float)
            sums[i] += k
            sums[j] -= k
        return sums

    def incident(self, vertex: int) -> list[int]:
        return [r for r, e in enumerate(self.edges) if vertex in e.vertices]


class CovectorConfiguration(BaseModel):
    """(x_1, zeta_1; ...; x_n, zeta_n) outside the zero section."""

    model_config = ConfigDict(extra="forbid")

    points: list[list[float]]
    covectors: list[list[float]]
    extended: bool = Field(False, description="Admit zero covectors in every slot, as pruning inputs do")

    @model_validator(mode="after")
    def _check(self):
        if not self.covectors or len(self.points) != len(self.covectors):
            raise ValueError(f"{len(self.points)} points for {len(self.covectors)} covectors")
        dims = {len(p) for p in self.points} | {len(z) for z in self.covectors}
        if len(dims) != 1:
            raise ValueError(f"Mixed dimensions in configuration: {sorted(dims)}")
        if not self.extended and not np.any(self.zeta):
            raise ValueError("Configuration lies in the zero section")
        return self

    @classmethod
    def from_arrays(cls, points, covectors, extended: bool = False) -> "CovectorConfiguration":
        return cls(
            points=np.asarray(points, dtype=float).tolist(),
            covectors=np.asarray(covectors, dtype=float).tolist(),
            extended=extended,
        )

    @property
    def n(self) -> int:
        return len(self.covectors)

    @property
    def dimension(self) -> int:
        return len(self.covectors[0])

    @property
    def x(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float)

    @property
    def zeta(self) -> np.ndarray:
        return np.asarray(self.covectors, dtype=float)

    def scale(self) -> float:
        return float(np.max(np.linalg.norm(self.zeta, axis=-1)))

    def negated(self) -> "CovectorConfiguration":
        return self.from_arrays(self.x, -self.zeta, self.extended)

    def reversed(self) -> "CovectorConfiguration":
        return self.from_arrays(self.x[::-1], self.zeta[::-1], self.extended)

    def scaled(self, t: float) -> "CovectorConfiguration":
        return self.from_arrays(self.x, t * self.zeta, self.extended)

    def middle(self, leading: int, trailing: int) -> "CovectorConfiguration":
        """Slots leading .. n - trailing - 1."""
        stop = self.n - trailing
        return self.from_arrays(self.x[leading:stop], self.zeta[leading:stop])


def instantiates(g: ImmersedGraph, c: CovectorConfiguration, tol: float = CONE_TOLERANCE) -> bool:
    """x(v_i) = x_i and the signed covector sums give every zeta_i, within tol relative to the largest scale."""
    if g.n_vertices != c.n:
        logger.debug(f"Graph has {g.n_vertices} vertices, configuration {c.n} slots")
        return False
    if g.n_vertices and g.dimension != c.dimension:
        return False
    x_scale = max(1.0, float(np.max(np.abs(c.x))))
    if np.max(np.abs(np.asarray(g.points, dtype=float) - c.x)) > tol * x_scale:
        return False
    admissible = closed_future if g.extended else future_causal
    if not all(admissible(e.covector, tol) for e in g.edges):
        return False
    residual = float(np.max(np.abs(g.balance() - c.zeta)))
    return residual <= tol * max(1.0, c.scale())
