"""Warped n-point functions with their undeformed counterpart and the phase-expansion oracle."""

from pathlib import Path
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from warpkit.commands.inputs import FockInput, Matrix, load_test_function, read_document, write_result
from warpkit.fockfield.npoint import npoint
from warpkit.harness import RunStatus, module_dir, read_help, register
from warpkit.jsonio import JsonComplex
from warpkit.oscint.cutoff import CutoffSpec
from warpkit.warp.deformation import DeformationMatrix
from warpkit.warp.warping import WarpedNPointResult, WarpedNPointSpec, warped_npoint, warped_npoint_oracle


class WarpNpointArgs(BaseModel):
    """Arguments for warp npoint."""

    config: Path = Field(description="JSON input document")
    method: Literal["closed-form", "cutoff"] = Field("closed-form", description="Evaluation path")
    tolerance: float = Field(1e-10, gt=0, description="Relative tolerance against the phase-expansion oracle")
    out: Path | None = Field(None, description="Directory for warp_npoint.json")


class WarpFactor(BaseModel):
    model_config = ConfigDict(extra="forbid")

    q: float | Matrix
    f: dict[str, Any]

    def deformation(self) -> DeformationMatrix:
        if isinstance(self.q, float):
            return DeformationMatrix.two_dimensional(self.q)
        return DeformationMatrix(np.array(self.q, dtype=float))


class WarpNpointInput(FockInput):
    factors: list[WarpFactor] = Field(min_length=1)
    cross_check: bool = False
    cross_check_tolerance: float = Field(1e-4, gt=0)
    cutoff: CutoffSpec | None = None
    strict: bool = True


class WarpNpointResult(BaseModel):
    result: WarpedNPointResult
    oracle: JsonComplex
    undeformed: JsonComplex
    deformation_delta: float = Field(description="|warped - undeformed|")
    status: RunStatus


@register(doc=read_help(module_dir(__file__) / "help.md"))
def warp_npoint(args: WarpNpointArgs) -> WarpNpointResult:
    """Compute a warped n-point function."""
    doc = WarpNpointInput.model_validate(read_document(args.config))
    basis = doc.basis()
    psi = doc.psi(basis)
    fs = [load_test_function(factor.f) for factor in doc.factors]
    spec = WarpedNPointSpec(
        psi=psi,
        factors=tuple((factor.deformation(), f) for factor, f in zip(doc.factors, fs, strict=True)),
        method=args.method,
        cross_check=doc.cross_check,
        cutoff=doc.cutoff,
        strict=doc.strict,
    )
    result = warped_npoint(spec, doc.lattice, basis)
    oracle = warped_npoint_oracle(spec, doc.lattice, basis)
    undeformed = npoint(psi, fs, doc.lattice, basis, strict=doc.strict).value
    status = RunStatus()
    closed = result.value if args.method == "closed-form" else result.cross_check
    status.check(
        abs(closed - oracle) <= args.tolerance * max(1.0, abs(oracle)),
        f"Closed-form value {closed} differs from the phase expansion {oracle}",
    )
    if result.cross_check_delta is not None:
        status.check(
            result.cross_check_delta <= doc.cross_check_tolerance * max(1.0, abs(result.value)),
            f"Closed-form and cutoff paths differ by {result.cross_check_delta:.3g}",
        )
    if not result.exact:
        status.diagnostic("State lacks headroom below the cutoffs; the value is not exact")
    out = WarpNpointResult(
        result=result,
        oracle=oracle,
        undeformed=undeformed,
        deformation_delta=abs(result.value - undeformed),
        status=status,
    )
    write_result(args.out, "warp_npoint", out)
    return out
