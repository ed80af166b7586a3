"""Wavefront estimates of grid-sampled distributions."""

from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from warpkit.commands.inputs import GridSource, Matrix, load_grid, read_document, write_result
from warpkit.harness import RunStatus, module_dir, read_help, register
from warpkit.microloc.plots import plot_wavefront
from warpkit.microloc.wavefront import WavefrontEstimate, WavefrontSpec, estimate_wavefront


class WfEstimateArgs(BaseModel):
    """Arguments for wf estimate."""

    config: Path = Field(description="JSON input document")
    seed: int | None = Field(None, ge=0, description="Seed of the direction set above two dimensions")
    out: Path | None = Field(None, description="Directory for the estimate, the grid and the plot")


class WfEstimateInput(BaseModel):
    model_config = ConfigDict(extra="forbid")

    grid: GridSource
    base_points: Matrix | None = None
    directions: Matrix | None = None
    fit_range: tuple[float, float] | None = None
    n_reg: float | None = None
    spec: WavefrontSpec = Field(default_factory=WavefrontSpec)
    expect_singular_points: Matrix | None = None


class WfEstimateResult(BaseModel):
    estimate: WavefrontEstimate
    singular_points: list[list[float]]
    status: RunStatus


def _same_points(found: list[tuple[float, ...]], expected: Matrix, atol: float = 1e-9) -> bool:
    if len(found) != len(expected):
        return False
    return all(any(np.allclose(f, e, atol=atol) for f in found) for e in expected)


@register(doc=read_help(module_dir(__file__) / "help.md"))
def wf_estimate(args: WfEstimateArgs) -> WfEstimateResult:
    """Estimate the wavefront set of a grid distribution."""
    doc = WfEstimateInput.model_validate(read_document(args.config))
    spec = doc.spec if args.seed is None else doc.spec.model_copy(update={"seed": args.seed})
    u = load_grid(doc.grid, args.config.parent)
    wf = estimate_wavefront(u, doc.base_points, doc.directions, doc.fit_range, doc.n_reg, spec)
    points = wf.singular_points()
    status = RunStatus()
    status.diagnostic(f"{len(wf.singular())} of {len(wf.entries)} entries singular")
    if doc.expect_singular_points is not None:
        status.check(
            _same_points(points, doc.expect_singular_points),
            f"Singular base points {[list(p) for p in points]} differ from {doc.expect_singular_points}",
        )
    result = WfEstimateResult(estimate=wf, singular_points=[list(p) for p in points], status=status)
    if args.out is not None:
        write_result(args.out, "wf_estimate", result)
        u.save(Path(args.out) / "grid.bin")
        plot_wavefront(wf, Path(args.out) / "wavefront.png")
    return result
