"""Results of acceptance checks and of whole experiments."""

from pydantic import BaseModel, Field

from warpkit.harness.models import OperationError, RunStatus
from warpkit.microloc.wavefront import WavefrontEstimate

Cell = str | float | int | bool | None


class CheckTable(BaseModel):
    """Rows written to ``<check>.csv`` in a fixed column order."""

    columns: list[str]
    rows: list[list[Cell]] = Field(default_factory=list)

    def add(self, *values: Cell) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"Row has {len(values)} cells for {len(self.columns)} columns")
        self.rows.append(list(values))


class CheckResult(BaseModel):
    status: RunStatus = Field(default_factory=RunStatus)
    metrics: dict[str, Cell] = Field(default_factory=dict)
    table: CheckTable | None = None
    wavefronts: dict[str, WavefrontEstimate] = Field(
        default_factory=dict, description="Estimates plotted to <check>_<key>.png"
    )


class CheckOutcome(BaseModel):
    name: str
    passed: bool
    result: CheckResult | None = None
    error: OperationError | None = None
    artifacts: list[str] = Field(default_factory=list, description="Paths relative to the output directory")


class ExperimentReport(BaseModel):
    experiment: str
    seed: int | None = None
    status: RunStatus = Field(default_factory=RunStatus)
    checks: list[CheckOutcome] = Field(default_factory=list)

    @property
    def failing(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]
