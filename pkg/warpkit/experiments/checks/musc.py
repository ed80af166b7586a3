"""Checks of the spectrum-condition geometry and the end-to-end vacuum verdict."""

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from tqdm import tqdm

from warpkit.experiments.checks import check
from warpkit.experiments.checks.field import FockSettings, bumps
from warpkit.experiments.models import CheckResult, CheckTable
from warpkit.fockfield.npoint import npoint
from warpkit.fockfield.twopoint import TwoPointGridSpec, vacuum_two_point_grid
from warpkit.microloc.wavefront import WavefrontSpec, estimate_wavefront
from warpkit.musc.check import check_musc, tuples_from_two_point_wavefront
from warpkit.musc.feasibility import SearchSpec, closed_form_gamma2, gamma_member
from warpkit.musc.graph import CovectorConfiguration, GraphEdge, ImmersedGraph, instantiates
from warpkit.musc.reduction import prune_graph, reduce_graph
from warpkit.warp.deformation import DeformationMatrix
from warpkit.warp.warping import WarpedNPointSpec, warped_npoint

logger = logging.getLogger(__name__)


def future_covector(rng: np.random.Generator) -> list[float]:
    spatial = float(rng.uniform(-3, 3))
    return [abs(spatial) + float(rng.uniform(0, 2)) + 0.1, spatial]


def random_edges(rng: np.random.Generator, vertices: list[int], count: int, curved: bool = False) -> list[GraphEdge]:
    edges = []
    for _ in range(count):
        i, j = rng.choice(vertices, size=2, replace=False)
        curve = rng.normal(size=(1, 2)).tolist() if curved and rng.random() < 0.5 else None
        edges.append(GraphEdge(vertices=(int(i), int(j)), covector=future_covector(rng), curve=curve))
    return edges


def padded_immersion(rng: np.random.Generator) -> tuple[ImmersedGraph, CovectorConfiguration, int, int]:
    """A graph on the middle slots, padded at both ends with zero-covector vertices carrying zero edges."""
    leading, middle, trailing = int(rng.integers(0, 4)), int(rng.integers(2, 5)), int(rng.integers(0, 4))
    n = leading + middle + trailing
    edges = random_edges(rng, list(range(leading, leading + middle)), int(rng.integers(1, 7)))
    ends = list(range(leading)) + list(range(n - trailing, n))
    for _ in range(int(rng.integers(0, 4)) if ends else 0):
        end = int(rng.choice(ends))
        other = int(rng.choice([v for v in range(n) if v != end]))
        edges.append(GraphEdge(vertices=(end, other), covector=[0.0, 0.0]))
    points = np.linspace(0, 1, 2 * n).reshape(n, 2).tolist()
    g = ImmersedGraph(points=points, edges=edges, extended=True)
    return g, CovectorConfiguration.from_arrays(points, g.balance(), extended=True), leading, trailing


def random_multigraph(rng: np.random.Generator) -> ImmersedGraph:
    n = int(rng.integers(2, 6))
    edges = random_edges(rng, list(range(n)), int(rng.integers(1, 9)), curved=True)
    return ImmersedGraph(points=np.arange(2 * n, dtype=float).reshape(n, 2).tolist(), edges=edges)


class GeometryArgs(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n_pairs: int = Field(1000, ge=1, description="Random d = 2 covector pairs against the closed-form Gamma_2")
    n_singletons: int = Field(100, ge=1, description="Random single covectors, none of which may lie in Gamma_1")
    n_trials: int = Field(1000, ge=1, description="Randomized pruning and reduction trials each")
    search: SearchSpec = Field(default_factory=SearchSpec)
    seed: int = 0
    progress: bool = False


@check
def musc_geometry(args: GeometryArgs) -> CheckResult:
    """gamma_member against the closed form, the empty Gamma_1, pruning and reduction."""
    rng = np.random.default_rng(args.seed)
    result = CheckResult(table=CheckTable(columns=["suite", "trials", "failures", "undecided"]))
    status = result.status
    origin, other = [0.0, 0.0], [1.0, 1.0]

    failures = undecided = 0
    for _ in tqdm(range(args.n_pairs), desc="Gamma_2 pairs", disable=not args.progress):
        z1 = rng.normal(size=2)
        z2 = -z1 if rng.random() < 0.5 else rng.normal(size=2)
        c = CovectorConfiguration.from_arrays([origin, other], [z1, z2])
        verdict = gamma_member(c, args.search).verdict
        undecided += verdict == "undecided"
        failures += (verdict == "instantiable") != closed_form_gamma2(c)
    status.check(failures == 0 and undecided == 0, f"Gamma_2: {failures} disagreements, {undecided} undecided")
    result.table.add("gamma2_closed_form", args.n_pairs, failures, undecided)

    members = sum(
        gamma_member(CovectorConfiguration.from_arrays([origin], [rng.normal(size=2)]), args.search).verdict != "not-instantiable"
        for _ in range(args.n_singletons)
    )
    status.check(members == 0, f"Gamma_1: {members} single covectors were not refused")
    result.table.add("gamma1_empty", args.n_singletons, members, 0)

    pruning = nullified = 0
    for _ in tqdm(range(args.n_trials), desc="pruning", disable=not args.progress):
        g, c, leading, trailing = padded_immersion(rng)
        pruned = prune_graph(g, c, leading, trailing)
        nullified += sum(not any(e.covector) for e in g.edges)
        pruning += not (pruned.n_vertices == c.n - leading - trailing and instantiates(pruned, c.middle(leading, trailing)))
    status.check(pruning == 0, f"Pruning: {pruning} trials lost the middle configuration")
    result.table.add("pruning", args.n_trials, pruning, 0)

    reduction = 0
    for _ in tqdm(range(args.n_trials), desc="reduction", disable=not args.progress):
        g = random_multigraph(rng)
        c = CovectorConfiguration.from_arrays(g.points, g.balance(), extended=True)
        reduced = reduce_graph(g)
        pairs = [e.vertices for e in reduced.edges]
        simple = len(pairs) == len(set(pairs)) and all(e.curve is None for e in reduced.edges)
        reduction += not (simple and instantiates(reduced, c))
    status.check(reduction == 0, f"Reduction: {reduction} trials broke instantiation or simplicity")
    result.table.add("reduction", args.n_trials, reduction, 0)
    result.metrics = {"gamma2_disagreements": failures, "pruning_failures": pruning, "nullified_edges": nullified, "reduction_failures": reduction}
    return result


DEFAULT_BASE_POINTS = [[0.0, 0.0], [1.0, 1.0], [1.0, -1.0], [0.0, 1.5], [1.5, 0.0]]


class VacuumMuscArgs(BaseModel):
    model_config = ConfigDict(extra="forbid")

    grid: TwoPointGridSpec = Field(default_factory=TwoPointGridSpec)
    base_points: list[list[float]] = Field(default_factory=lambda: [list(p) for p in DEFAULT_BASE_POINTS])
    spec: WavefrontSpec = Field(default_factory=lambda: WavefrontSpec(n_reg=2.5, n_directions=8))
    search: SearchSpec = Field(default_factory=SearchSpec)
    fock: FockSettings = Field(default_factory=FockSettings)
    deformations: list[float] = Field(default_factory=lambda: [0.5, -1.5, 3.0], description="q of the warped two-point functions")
    tolerance: float = Field(1e-4, gt=0, description="Relative bound of warped minus undeformed two-point values")


@check
def vacuum_musc(args: VacuumMuscArgs) -> CheckResult:
    """The estimated wavefront of the vacuum two-point function passes the spectrum condition, and so do its warped versions."""
    wf = estimate_wavefront(vacuum_two_point_grid(args.grid), args.base_points, spec=args.spec)
    tuples = tuples_from_two_point_wavefront(wf)
    report = check_musc(tuples, args.search)
    result = CheckResult(
        table=CheckTable(columns=["y_t", "y_x", "zeta_t", "zeta_x", "verdict"]),
        wavefronts={"vacuum_two_point": wf},
    )
    status = result.status
    for t in report.tuples:
        (y_t, y_x), (z_t, z_x) = t.configuration.points[0], t.configuration.covectors[0]
        result.table.add(y_t, y_x, z_t, z_x, t.result.verdict)
    status.check(bool(tuples), "The estimate has no singular entries to check")
    status.check(report.verdict == "PASS", f"Vacuum verdict {report.verdict}, counterexamples {report.counterexamples}")

    # Warped vacuum two-point functions equal the undeformed one, so they inherit the verdict.
    lattice, basis = args.fock.lattice, args.fock.basis()
    fs = bumps()[:2]
    omega = basis.vacuum()
    plain = npoint(omega, fs, lattice, basis).value
    rigid = True
    for q in args.deformations:
        d = DeformationMatrix.two_dimensional(q)
        value = warped_npoint(WarpedNPointSpec(omega, ((d, fs[0]), (d, fs[1]))), lattice, basis).value
        rigid &= status.check(
            abs(value - plain) <= args.tolerance * abs(plain), f"q={q}: warped two-point {value} differs from {plain}"
        )
    result.metrics = {
        "tuples": len(tuples),
        "verdict": report.verdict,
        "warped_verdict": report.verdict if rigid else "UNDECIDED",
    }
    return result
