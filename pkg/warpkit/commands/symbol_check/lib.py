"""Semi-norm scans of a symbol against a symbol class."""

from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from warpkit.commands.inputs import read_document, write_result
from warpkit.harness import RunStatus, module_dir, read_help, register
from warpkit.symbolkit.seminorms import (
    MembershipReport,
    SamplingSpec,
    SeminormEstimate,
    estimate_seminorm,
    verify_membership,
)
from warpkit.symbolkit.symbols import Symbol


class SymbolCheckArgs(BaseModel):
    """Arguments for symbol check."""

    config: Path = Field(description="JSON input document")
    tolerance: float = Field(0.1, ge=0, description="Largest admissible log-log growth of a weighted derivative")
    out: Path | None = Field(None, description="Directory for symbol_check.json")


class SeminormIndex(BaseModel):
    model_config = ConfigDict(extra="forbid")

    alpha: list[int]
    beta: list[int]


class SymbolCheckInput(BaseModel):
    model_config = ConfigDict(extra="forbid")

    symbol: dict[str, Any]
    up_to_order: int = Field(2, ge=0)
    sampling: SamplingSpec = Field(default_factory=SamplingSpec)
    order: float | None = Field(None, description="Class order to test instead of the declared one")
    type: float | None = Field(None, gt=-1, le=1, description="Class type to test instead of the declared one")
    seminorms: list[SeminormIndex] = Field(default_factory=list)


class SymbolCheckResult(BaseModel):
    report: MembershipReport
    seminorms: list[SeminormEstimate] = Field(default_factory=list)
    status: RunStatus


@register(doc=read_help(module_dir(__file__) / "help.md"))
def symbol_check(args: SymbolCheckArgs) -> SymbolCheckResult:
    """Check symbol-class membership."""
    doc = SymbolCheckInput.model_validate(read_document(args.config))
    s = Symbol.from_config(doc.symbol)
    report = verify_membership(
        s, doc.up_to_order, doc.sampling, args.tolerance, order=doc.order, rho=doc.type
    )
    tested = s.with_class(report.order, report.rho)
    estimates = [estimate_seminorm(tested, i.alpha, i.beta, doc.sampling) for i in doc.seminorms]
    status = RunStatus()
    for entry in report.failures():
        status.error(
            f"alpha={entry.alpha} beta={entry.beta} grows like r^{entry.growth_exponent:.3g} "
            f"in S^{report.order}_{report.rho}"
        )
    result = SymbolCheckResult(report=report, seminorms=estimates, status=status)
    write_result(args.out, "symbol_check", result)
    return result
