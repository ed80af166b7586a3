"""Checks of the wavefront estimator: calibration on known distributions, inclusion under oscillation."""

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from warpkit.experiments.checks import check
from warpkit.experiments.models import CheckResult, CheckTable
from warpkit.microloc.grid import GridDistribution
from warpkit.microloc.symbolic import oscillated_profile_grid
from warpkit.microloc.wavefront import WavefrontEstimate, WavefrontSpec, estimate_wavefront
from warpkit.oscint.distribution import Method
from warpkit.symbolkit.extended import ExtendedSymbol
from warpkit.symbolkit.symbols import BilinearForm, Symbol

logger = logging.getLogger(__name__)

HEAVISIDE = {"heaviside": {"index": 0, "at": 0.0}}


def heaviside_grid(resolution: int) -> GridDistribution:
    return GridDistribution.from_function(lambda x: np.heaviside(x[..., 0], 1.0), 0.0, 1.0, resolution)


def singular_pairs(wf: WavefrontEstimate) -> set[tuple[tuple[float, ...], tuple[float, ...]]]:
    return {(tuple(e.base_point), tuple(np.round(e.direction, 12))) for e in wf.singular()}


def add_entries(table: CheckTable, name: str, wf: WavefrontEstimate) -> None:
    for e in wf.entries:
        table.add(name, e.base_point[0], e.direction[0], e.n_fit, e.verdict)


class CalibrationArgs(BaseModel):
    model_config = ConfigDict(extra="forbid")

    resolution: int = Field(1024, ge=64, description="Grid points on [-1, 1]")
    base_points: list[float] = Field(default_factory=lambda: [-0.5, 0.0, 0.5])
    spike: float = Field(0.0, description="Location of the point mass and of the jump")
    point_mass_max_fit: float = Field(0.5, description="N_fit bound of every point-mass direction")
    jump_fit_range: tuple[float, float] = Field((0.7, 1.3), description="Admissible N_fit at the jump")
    spec: WavefrontSpec = Field(default_factory=WavefrontSpec)


@check
def wavefront_calibration(args: CalibrationArgs) -> CheckResult:
    """Gaussian, point mass and Heaviside step against their known wavefront sets."""
    points = [[p] for p in args.base_points]
    gaussian = GridDistribution.from_function(lambda x: np.exp(-4 * x[..., 0] ** 2), 0.0, 1.0, args.resolution)
    spike = GridDistribution.point_masses([[args.spike]], [1.0], 0.0, 1.0, args.resolution)
    step = GridDistribution.from_function(
        lambda x: np.heaviside(x[..., 0] - args.spike, 1.0), 0.0, 1.0, args.resolution
    )
    estimates = {name: estimate_wavefront(u, points, spec=args.spec) for name, u in (("gaussian", gaussian), ("point_mass", spike), ("heaviside", step))}
    result = CheckResult(
        table=CheckTable(columns=["distribution", "base_point", "direction", "n_fit", "verdict"]),
        wavefronts=estimates,
    )
    status = result.status
    for name, wf in estimates.items():
        add_entries(result.table, name, wf)
    status.check(not estimates["gaussian"].singular(), "Gaussian has singular entries")
    for name in ("point_mass", "heaviside"):
        wf = estimates[name]
        status.check(
            wf.singular_points() == [(args.spike,)],
            f"{name}: singular base points {wf.singular_points()}, expected [({args.spike},)]",
        )
    spike_entries = estimates["point_mass"].at(args.spike)
    status.check(
        all(e.verdict == "singular" and e.n_fit <= args.point_mass_max_fit for e in spike_entries),
        f"Point mass: some direction at the spike has N_fit above {args.point_mass_max_fit}",
    )
    lo, hi = args.jump_fit_range
    fits = [e.n_fit for e in estimates["heaviside"].singular()]
    status.check(all(lo <= n <= hi for n in fits), f"Heaviside: N_fit {fits} outside [{lo}, {hi}]")
    result.metrics = {
        "point_mass_max_fit": max((e.n_fit for e in spike_entries if e.n_fit is not None), default=None),
        "heaviside_min_fit": min(fits, default=None),
        "heaviside_max_fit": max(fits, default=None),
    }
    return result


class InclusionArgs(BaseModel):
    model_config = ConfigDict(extra="forbid")

    resolution: int = Field(1024, ge=64)
    base_points: list[float] = Field(default_factory=lambda: [-0.5, 0.0, 0.5])
    method: Method = "regularized"
    expected_edge_value: float = Field(5**-0.5, description="I_eta of the Gaussian fiber, seen right of the jump")
    tolerance: float = Field(1e-6, gt=0, description="Relative tolerance of the fiber value")
    spec: WavefrontSpec = Field(default_factory=WavefrontSpec)


@check
def wavefront_inclusion(args: InclusionArgs) -> CheckResult:
    """WF of x -> I_eta(u(x)) lies inside WF of the x-profile, for u = H(x) e^{-theta^2 - xi^2}."""
    base = Symbol.from_expression({"gauss": {"over": "all"}}, k=1, order=-10, rho=1)
    u = ExtendedSymbol.from_profile_expression(HEAVISIDE, base)
    points = [[p] for p in args.base_points]
    oscillated = oscillated_profile_grid(u, BilinearForm.euclidean(1), 0.0, 1.0, args.resolution, method=args.method)
    inner = estimate_wavefront(oscillated, points, spec=args.spec)
    outer = estimate_wavefront(heaviside_grid(args.resolution), points, spec=args.spec)
    extra = singular_pairs(inner) - singular_pairs(outer)
    result = CheckResult(
        table=CheckTable(columns=["distribution", "base_point", "direction", "n_fit", "verdict"]),
        wavefronts={"oscillated": inner, "profile": outer},
    )
    add_entries(result.table, "oscillated", inner)
    add_entries(result.table, "profile", outer)
    edge = complex(oscillated.samples[-1])
    status = result.status
    status.check(
        abs(edge - args.expected_edge_value) <= args.tolerance * args.expected_edge_value,
        f"Oscillated profile is {edge} right of the jump, expected {args.expected_edge_value}",
    )
    status.check(not extra, f"Oscillation added singular entries {sorted(extra)}")
    status.check(bool(inner.singular()), "Oscillated profile lost the jump")
    result.metrics = {
        "inner_singular": len(inner.singular()),
        "outer_singular": len(outer.singular()),
        "extra_singular": len(extra),
    }
    return result
