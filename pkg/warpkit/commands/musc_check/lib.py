"""Microlocal spectrum condition verdicts for explicit tuples or wavefront files."""

import json
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from warpkit.commands.inputs import read_document, resolve, write_result
from warpkit.harness import RunStatus, module_dir, read_help, register
from warpkit.microloc.wavefront import WavefrontEstimate
from warpkit.musc.check import MuscReport, check_musc, tuples_from_two_point_wavefront
from warpkit.musc.feasibility import SearchSpec
from warpkit.musc.graph import CovectorConfiguration

Verdict = Literal["PASS", "FAIL", "UNDECIDED"]


class MuscCheckArgs(BaseModel):
    """Arguments for musc check."""

    config: Path = Field(description="JSON input document")
    tolerance: float | None = Field(None, gt=0, description="Balance and cone slack, relative")
    seed: int | None = Field(None, ge=0, description="Seed of the generator directions above d = 3")
    out: Path | None = Field(None, description="Directory for musc_check.json")


class MuscCheckInput(BaseModel):
    model_config = ConfigDict(extra="forbid")

    configurations: list[CovectorConfiguration] | None = None
    wavefront: Path | None = Field(None, description="wf_estimate.json, or a bare wavefront estimate")
    search: SearchSpec = Field(default_factory=SearchSpec)
    expect: Verdict | None = None

    @model_validator(mode="after")
    def _one_source(self):
        if (self.configurations is None) == (self.wavefront is None):
            raise ValueError("Give exactly one of 'configurations' or 'wavefront'")
        return self


class MuscCheckResult(BaseModel):
    report: MuscReport
    status: RunStatus


def load_wavefront(path: Path) -> WavefrontEstimate:
    data = json.loads(Path(path).read_text())
    return WavefrontEstimate.model_validate(data.get("estimate", data))


@register(doc=read_help(module_dir(__file__) / "help.md"))
def musc_check(args: MuscCheckArgs) -> MuscCheckResult:
    """Check the microlocal spectrum condition."""
    doc = MuscCheckInput.model_validate(read_document(args.config))
    updates = {}
    if args.tolerance is not None:
        updates["tolerance"] = args.tolerance
    if args.seed is not None:
        updates["seed"] = args.seed
    search = doc.search.model_copy(update=updates)
    if doc.wavefront is not None:
        configurations = tuples_from_two_point_wavefront(load_wavefront(resolve(doc.wavefront, args.config.parent)))
    else:
        configurations = doc.configurations
    report = check_musc(configurations, search)
    status = RunStatus()
    status.diagnostic(f"{len(report.tuples)} tuples checked")
    expected = doc.expect or "PASS"
    status.check(
        report.verdict == expected,
        f"Verdict {report.verdict}, expected {expected}; "
        f"counterexamples {report.counterexamples}, undecided {report.undecided}",
    )
    result = MuscCheckResult(report=report, status=status)
    write_result(args.out, "musc_check", result)
    return result
